//! Exercises the C ABI the way a foreign caller would: raw pointers,
//! NUL-terminated strings, status codes, and the error-message channel.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;

use noma_ris_ffi::*;

fn last_error() -> String {
    unsafe {
        let needed = noma_ris_last_error(std::ptr::null_mut(), 0);
        let mut buf = vec![0u8; needed + 1];
        let reported = noma_ris_last_error(buf.as_mut_ptr() as *mut c_char, buf.len());
        assert_eq!(reported, needed);
        String::from_utf8(buf[..needed].to_vec()).unwrap()
    }
}

fn cstr(text: &str) -> CString {
    CString::new(text).unwrap()
}

#[test]
fn version_is_a_nonempty_static_string() {
    let version = unsafe { CStr::from_ptr(noma_ris_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn default_scenario_roundtrips_through_json() {
    unsafe {
        let scenario = noma_ris_scenario_default();
        assert!(!scenario.is_null());
        assert_eq!(
            noma_ris_scenario_set(scenario, cstr("trials").as_ptr(), cstr("77").as_ptr()),
            NomaRisStatus::Ok
        );
        assert_eq!(noma_ris_scenario_seed(scenario, 42), NomaRisStatus::Ok);
        assert_eq!(noma_ris_scenario_validate(scenario), NomaRisStatus::Ok);

        let json = noma_ris_scenario_to_json(scenario);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"trials\": 77"));
        assert!(text.contains("\"seed\": 42"));

        let copy = noma_ris_scenario_from_json(json as *const c_char);
        assert!(!copy.is_null());
        noma_ris_string_free(json);
        noma_ris_scenario_free(copy);
        noma_ris_scenario_free(scenario);
    }
}

#[test]
fn invalid_json_returns_null_and_records_the_error() {
    unsafe {
        let scenario = noma_ris_scenario_from_json(cstr("{ not json").as_ptr());
        assert!(scenario.is_null());
        assert!(last_error().contains("config"), "got: {}", last_error());
    }
}

#[test]
fn unknown_override_key_reports_parse_status() {
    unsafe {
        let scenario = noma_ris_scenario_default();
        let status = noma_ris_scenario_set(scenario, cstr("bogus").as_ptr(), cstr("1").as_ptr());
        assert_eq!(status, NomaRisStatus::Parse);
        assert!(last_error().contains("bogus"));
        noma_ris_scenario_free(scenario);
    }
}

#[test]
fn null_and_invalid_utf8_arguments_are_rejected() {
    unsafe {
        assert_eq!(
            noma_ris_r_from_endpoints(0.1, 0.9, 10.0, 80.0, std::ptr::null_mut()),
            NomaRisStatus::NullArgument
        );
        assert!(noma_ris_scenario_from_json(std::ptr::null()).is_null());
        assert_eq!(last_error(), "json must not be null");

        let scenario = noma_ris_scenario_default();
        let bad = [0xffu8, 0x00];
        let status =
            noma_ris_scenario_set(scenario, bad.as_ptr() as *const c_char, cstr("1").as_ptr());
        assert_eq!(status, NomaRisStatus::Utf8);
        noma_ris_scenario_free(scenario);
    }
}

#[test]
fn math_entry_points_match_the_library() {
    unsafe {
        let direct = noma_ris_alpha_basic(60.0, 0.05, 45.0);
        assert_eq!(direct, noma_ris::controller::alpha_basic(60.0, 0.05, 45.0));

        let mut r = 0.0;
        assert_eq!(
            noma_ris_r_from_endpoints(0.1, 0.9, 10.0, 80.0, &mut r),
            NomaRisStatus::Ok
        );
        assert_eq!(
            r,
            noma_ris::controller::r_from_endpoints(0.1, 0.9, 10.0, 80.0).unwrap()
        );

        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(
            noma_ris_k_bounds(0.2236, 10.0, 80.0, 0.4, &mut lo, &mut hi),
            NomaRisStatus::Ok
        );
        let mut back = 0.0;
        assert_eq!(
            noma_ris_r_from_k(lo, 0.4, 0.2236, 10.0, 80.0, &mut back),
            NomaRisStatus::Ok
        );
        assert!((back - 0.02).abs() < 1e-12);

        let mut loss = 0.0;
        assert_eq!(
            noma_ris_free_space_loss(2.0e9, 1.0e3, &mut loss),
            NomaRisStatus::Ok
        );
        assert!((loss - 98.47059991327962).abs() < 1e-9);

        let mut noise = 0.0;
        assert_eq!(
            noma_ris_noise_variance(1.0e6, 290.0, &mut noise),
            NomaRisStatus::Ok
        );
        assert!((noise - 4.0038821e-15).abs() / 4.0038821e-15 < 1e-12);
    }
}

#[test]
fn domain_errors_carry_status_and_message() {
    unsafe {
        let mut out = 0.0;
        let status = noma_ris_r_from_k(1.0, 0.4, 0.0, 10.0, 80.0, &mut out);
        assert_eq!(status, NomaRisStatus::Domain);
        assert!(last_error().contains("sigma_c"), "got: {}", last_error());
    }
}

#[test]
fn transition_feeds_the_adaptive_curve() {
    unsafe {
        let mut transition = NomaRisTransition {
            theta0_deg: 0.0,
            amplitude: 0.0,
            steepness: 0.0,
            psi: 0.0,
            sigma_c: 0.0,
            delta_mu: 0.0,
            energy: 0.0,
            lambda: 0.0,
            c_const: 0.0,
        };
        let status = noma_ris_transition_from_moments(
            0.5,
            0.2,
            0.9,
            0.1,
            45.0,
            f64::NAN,
            1.0,
            1.0,
            &mut transition,
        );
        assert_eq!(status, NomaRisStatus::Ok);

        let reference = noma_ris::environment::TransitionParams::from_moments(
            0.5, 0.2, 0.9, 0.1, 45.0, None, 1.0, 1.0,
        )
        .unwrap();
        assert_eq!(transition.amplitude, reference.amplitude);
        assert_eq!(transition.steepness, reference.steepness);
        assert_eq!(transition.sigma_c, reference.sigma_c);

        let mut alpha = 0.0;
        assert_eq!(
            noma_ris_alpha_adaptive(60.0, 0.05, &transition, &mut alpha),
            NomaRisStatus::Ok
        );
        assert_eq!(
            alpha,
            noma_ris::controller::alpha_adaptive(60.0, 0.05, &reference)
        );
    }
}

#[test]
fn elevation_sweep_writes_the_same_files_regardless_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let configure = |scenario: *mut NomaRisScenario| unsafe {
        assert_eq!(
            noma_ris_scenario_set(scenario, cstr("trials").as_ptr(), cstr("30").as_ptr()),
            NomaRisStatus::Ok
        );
        assert_eq!(
            noma_ris_scenario_set(
                scenario,
                cstr("sweeps.elevation").as_ptr(),
                cstr(r#"{"start_deg":70,"stop_deg":80,"points":2}"#).as_ptr(),
            ),
            NomaRisStatus::Ok
        );
    };
    let run = |name: &str, threads: usize| -> Vec<u8> {
        let out = dir.path().join(name);
        unsafe {
            let scenario = noma_ris_scenario_default();
            configure(scenario);
            let status = noma_ris_run_elevation_sweep(
                scenario,
                cstr(out.to_str().unwrap()).as_ptr(),
                threads,
            );
            assert_eq!(status, NomaRisStatus::Ok, "error: {}", last_error());
            noma_ris_scenario_free(scenario);
        }
        std::fs::read(&out).unwrap()
    };
    let single = run("elev_t1.csv", 1);
    let pooled = run("elev_t2.csv", 2);
    assert_eq!(single, pooled);
    assert!(String::from_utf8_lossy(&single).starts_with("theta_deg,"));
    assert!(dir.path().join("elev_t1.config.json").exists());
}

#[test]
fn capacity_probe_reports_weight_and_capacity() {
    unsafe {
        let scenario = noma_ris_scenario_default();
        let (mut alpha, mut capacity) = (0.0, 0.0);
        let status = noma_ris_capacity_probe(scenario, 80.0, 30, &mut alpha, &mut capacity);
        assert_eq!(status, NomaRisStatus::Ok, "error: {}", last_error());
        assert!(alpha > 0.5 && alpha < 1.0, "alpha {alpha}");
        assert!(capacity > 0.0);
        noma_ris_scenario_free(scenario);
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("noma_ris.h");
    let header = std::fs::read_to_string(header_path).unwrap();
    for needle in [
        "typedef struct NomaRisScenario NomaRisScenario;",
        "NOMA_RIS_STATUS_OK",
        "noma_ris_scenario_default",
        "noma_ris_scenario_from_json",
        "noma_ris_scenario_free",
        "noma_ris_last_error",
        "noma_ris_run_elevation_sweep",
        "noma_ris_capacity_probe",
        "noma_ris_transition_from_moments",
    ] {
        assert!(header.contains(needle), "header is missing {needle}");
    }
}
