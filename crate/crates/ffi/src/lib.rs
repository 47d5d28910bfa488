//! C ABI over the simulator: opaque scenario handles, status codes with a
//! thread-local error message, the closed-form controller math, and the
//! Monte Carlo sweeps writing the same CSV files the CLI produces. The
//! companion header `include/noma_ris.h` is regenerated by cbindgen on
//! every build.
//!
//! Conventions: every fallible call returns [`NomaRisStatus`] and leaves a
//! human-readable message for [`noma_ris_last_error`] on failure;
//! constructors return null on failure; strings are NUL-terminated UTF-8;
//! heap strings handed out by this library are released with
//! [`noma_ris_string_free`], handles with [`noma_ris_scenario_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use noma_ris::config::ScenarioConfig;
use noma_ris::environment::TransitionParams;
use noma_ris::error::Error;
use noma_ris::montecarlo::Simulation;
use noma_ris::{controller, linklevel, output, pathloss};

/// Outcome of a call through this ABI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NomaRisStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Config JSON or an override failed to parse or validate.
    Parse = 3,
    /// A parameter value was rejected.
    Domain = 4,
    /// A file could not be created or written.
    Io = 5,
}

/// Opaque scenario handle. Create with [`noma_ris_scenario_default`] or
/// [`noma_ris_scenario_from_json`], release with [`noma_ris_scenario_free`].
pub struct NomaRisScenario {
    config: ScenarioConfig,
}

/// Allocation-transition parameters in a form a C caller can hold by value.
/// Produce one with [`noma_ris_transition_from_moments`]; the fields mirror
/// the library's transition exactly.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NomaRisTransition {
    pub theta0_deg: f64,
    /// Correction amplitude applied inside the sigmoid exponent.
    pub amplitude: f64,
    /// Correction steepness inside the tanh.
    pub steepness: f64,
    pub psi: f64,
    pub sigma_c: f64,
    pub delta_mu: f64,
    pub energy: f64,
    pub lambda: f64,
    pub c_const: f64,
}

impl From<&TransitionParams> for NomaRisTransition {
    fn from(t: &TransitionParams) -> Self {
        NomaRisTransition {
            theta0_deg: t.theta0_deg,
            amplitude: t.amplitude,
            steepness: t.steepness,
            psi: t.psi,
            sigma_c: t.sigma_c,
            delta_mu: t.delta_mu,
            energy: t.energy,
            lambda: t.lambda,
            c_const: t.c_const,
        }
    }
}

impl From<&NomaRisTransition> for TransitionParams {
    fn from(t: &NomaRisTransition) -> Self {
        TransitionParams {
            theta0_deg: t.theta0_deg,
            amplitude: t.amplitude,
            steepness: t.steepness,
            psi: t.psi,
            sigma_c: t.sigma_c,
            delta_mu: t.delta_mu,
            energy: t.energy,
            lambda: t.lambda,
            c_const: t.c_const,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(message: impl AsRef<str>) {
    LAST_ERROR.with(|slot| {
        let mut bytes = slot.borrow_mut();
        bytes.clear();
        bytes.extend_from_slice(message.as_ref().as_bytes());
    });
}

fn fail(error: Error) -> NomaRisStatus {
    let status = match error {
        Error::Config(_) => NomaRisStatus::Parse,
        Error::Domain(_) | Error::Dimension(_) => NomaRisStatus::Domain,
        Error::Io(_) => NomaRisStatus::Io,
    };
    set_error(error.to_string());
    status
}

fn null_argument(name: &str) -> NomaRisStatus {
    set_error(format!("{name} must not be null"));
    NomaRisStatus::NullArgument
}

/// # Safety
/// `text` must be a valid NUL-terminated string pointer.
unsafe fn utf8_arg<'a>(text: *const c_char, name: &str) -> Result<&'a str, NomaRisStatus> {
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        NomaRisStatus::Utf8
    })
}

/// Copies the calling thread's most recent error message into `buffer`
/// (truncated to `capacity - 1` bytes, always NUL-terminated when
/// `capacity > 0`) and returns the full message length in bytes. Passing a
/// null buffer or zero capacity just reports the length.
///
/// # Safety
/// `buffer`, when non-null, must point to at least `capacity` writable
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_last_error(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let bytes = slot.borrow();
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer as *mut u8, n);
            *buffer.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn noma_ris_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

// ---------------------------------------------------------------------------
// Scenario handles
// ---------------------------------------------------------------------------

/// Creates a scenario with every parameter at its default.
#[no_mangle]
pub extern "C" fn noma_ris_scenario_default() -> *mut NomaRisScenario {
    Box::into_raw(Box::new(NomaRisScenario {
        config: ScenarioConfig::default(),
    }))
}

/// Parses a scenario from JSON. Returns null on failure and records the
/// parse error for [`noma_ris_last_error`].
///
/// # Safety
/// `json` must be a valid NUL-terminated string pointer.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_from_json(json: *const c_char) -> *mut NomaRisScenario {
    if json.is_null() {
        null_argument("json");
        return std::ptr::null_mut();
    }
    let text = match utf8_arg(json, "json") {
        Ok(text) => text,
        Err(_) => return std::ptr::null_mut(),
    };
    match ScenarioConfig::from_json_str(text) {
        Ok(config) => Box::into_raw(Box::new(NomaRisScenario { config })),
        Err(e) => {
            fail(e);
            std::ptr::null_mut()
        }
    }
}

/// Releases a scenario handle. Null is a no-op.
///
/// # Safety
/// `scenario` must be a handle returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_free(scenario: *mut NomaRisScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Renders the fully resolved scenario as pretty JSON. Release the returned
/// string with [`noma_ris_string_free`]; returns null on failure.
///
/// # Safety
/// `scenario` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_to_json(
    scenario: *const NomaRisScenario,
) -> *mut c_char {
    if scenario.is_null() {
        null_argument("scenario");
        return std::ptr::null_mut();
    }
    match (*scenario).config.to_pretty_json() {
        Ok(text) => match CString::new(text) {
            Ok(c) => c.into_raw(),
            Err(_) => {
                set_error("config JSON contained an interior NUL");
                std::ptr::null_mut()
            }
        },
        Err(e) => {
            fail(e);
            std::ptr::null_mut()
        }
    }
}

/// Releases one string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must have been returned by this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Applies one `key.path=value` override, the same mechanism as the CLI's
/// `--set`: the key must name an existing config field, the value is parsed
/// as JSON with a fallback to a bare string.
///
/// # Safety
/// `scenario` must be a live handle; `key` and `value` must be valid
/// NUL-terminated string pointers.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_set(
    scenario: *mut NomaRisScenario,
    key: *const c_char,
    value: *const c_char,
) -> NomaRisStatus {
    if scenario.is_null() {
        return null_argument("scenario");
    }
    if key.is_null() {
        return null_argument("key");
    }
    if value.is_null() {
        return null_argument("value");
    }
    let key = match utf8_arg(key, "key") {
        Ok(k) => k,
        Err(status) => return status,
    };
    let value = match utf8_arg(value, "value") {
        Ok(v) => v,
        Err(status) => return status,
    };
    let overrides = [(key.to_string(), value.to_string())];
    match (*scenario).config.with_overrides(&overrides) {
        Ok(updated) => {
            (*scenario).config = updated;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Sets the random seed.
///
/// # Safety
/// `scenario` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_seed(
    scenario: *mut NomaRisScenario,
    seed: u64,
) -> NomaRisStatus {
    if scenario.is_null() {
        return null_argument("scenario");
    }
    (*scenario).config.seed = seed;
    NomaRisStatus::Ok
}

/// Runs the full config validation, including a probe of the loss tables
/// across the controller span.
///
/// # Safety
/// `scenario` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_scenario_validate(
    scenario: *const NomaRisScenario,
) -> NomaRisStatus {
    if scenario.is_null() {
        return null_argument("scenario");
    }
    match (*scenario).config.validate() {
        Ok(()) => NomaRisStatus::Ok,
        Err(e) => fail(e),
    }
}

// ---------------------------------------------------------------------------
// Closed-form math
// ---------------------------------------------------------------------------

/// Logistic allocation weight `1 / (1 + exp(-r (theta - theta0)))`.
#[no_mangle]
pub extern "C" fn noma_ris_alpha_basic(theta_deg: f64, r: f64, theta0_deg: f64) -> f64 {
    controller::alpha_basic(theta_deg, r, theta0_deg)
}

/// Steepness threading the sigmoid through two endpoint weights.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_r_from_endpoints(
    alpha_low: f64,
    alpha_high: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
    out: *mut f64,
) -> NomaRisStatus {
    if out.is_null() {
        return null_argument("out");
    }
    match controller::r_from_endpoints(alpha_low, alpha_high, theta_low_deg, theta_high_deg) {
        Ok(r) => {
            *out = r;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Steepness implied by a feedback gain.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_r_from_k(
    k_prime: f64,
    delta_mu: f64,
    sigma_c: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
    out: *mut f64,
) -> NomaRisStatus {
    if out.is_null() {
        return null_argument("out");
    }
    match controller::r_from_k(k_prime, delta_mu, sigma_c, theta_low_deg, theta_high_deg) {
        Ok(r) => {
            *out = r;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Feedback-gain interval mapping onto the admissible steepness range.
///
/// # Safety
/// `out_min` and `out_max` must point to writable doubles.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_k_bounds(
    sigma_c: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
    delta_mu: f64,
    out_min: *mut f64,
    out_max: *mut f64,
) -> NomaRisStatus {
    if out_min.is_null() {
        return null_argument("out_min");
    }
    if out_max.is_null() {
        return null_argument("out_max");
    }
    match controller::k_bounds(sigma_c, theta_low_deg, theta_high_deg, delta_mu) {
        Ok((lo, hi)) => {
            *out_min = lo;
            *out_max = hi;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Free-space path loss in dB.
///
/// # Safety
/// `out_db` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_free_space_loss(
    frequency_hz: f64,
    distance_m: f64,
    out_db: *mut f64,
) -> NomaRisStatus {
    if out_db.is_null() {
        return null_argument("out_db");
    }
    match pathloss::free_space_loss(frequency_hz, distance_m) {
        Ok(db) => {
            *out_db = db;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Thermal noise power in watts for a bandwidth and temperature.
///
/// # Safety
/// `out_w` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_noise_variance(
    bandwidth_hz: f64,
    temperature_k: f64,
    out_w: *mut f64,
) -> NomaRisStatus {
    if out_w.is_null() {
        return null_argument("out_w");
    }
    match linklevel::noise_variance(bandwidth_hz, temperature_k) {
        Ok(w) => {
            *out_w = w;
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the allocation transition from regime moments. Pass NaN as
/// `energy` to use the default `|mu_high - mu_low|`.
///
/// # Safety
/// `out` must point to a writable [`NomaRisTransition`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn noma_ris_transition_from_moments(
    mu_low: f64,
    sigma_low: f64,
    mu_high: f64,
    sigma_high: f64,
    theta0_deg: f64,
    energy: f64,
    lambda: f64,
    c_const: f64,
    out: *mut NomaRisTransition,
) -> NomaRisStatus {
    if out.is_null() {
        return null_argument("out");
    }
    let energy = if energy.is_nan() { None } else { Some(energy) };
    match TransitionParams::from_moments(
        mu_low, sigma_low, mu_high, sigma_high, theta0_deg, energy, lambda, c_const,
    ) {
        Ok(transition) => {
            *out = (&transition).into();
            NomaRisStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Allocation weight with the environment correction folded into the
/// exponent.
///
/// # Safety
/// `transition` must point to a transition filled in by
/// [`noma_ris_transition_from_moments`]; `out` must point to a writable
/// double.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_alpha_adaptive(
    theta_deg: f64,
    r: f64,
    transition: *const NomaRisTransition,
    out: *mut f64,
) -> NomaRisStatus {
    if transition.is_null() {
        return null_argument("transition");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let params: TransitionParams = (&*transition).into();
    *out = controller::alpha_adaptive(theta_deg, r, &params);
    NomaRisStatus::Ok
}

// ---------------------------------------------------------------------------
// Monte Carlo sweeps
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum SweepKind {
    Elevation,
    Histogram,
    Users,
    Feedback,
    RRange,
}

fn write_csv(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> Result<(), Error>,
) -> Result<(), Error> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    body(&mut writer)?;
    writer.flush()?;
    Ok(())
}

fn run_sweep(
    config: &ScenarioConfig,
    out_csv: &Path,
    threads: usize,
    kind: SweepKind,
) -> Result<(), Error> {
    let sim = Simulation::new(config.clone())?;
    let body = || -> Result<(), Error> {
        match kind {
            SweepKind::Elevation => {
                let result = sim.run_elevation_sweep()?;
                write_csv(out_csv, |w| output::write_elevation_csv(w, &result.data))?;
            }
            SweepKind::Histogram => {
                let result = sim.run_sinr_histogram()?;
                write_csv(out_csv, |w| output::write_histogram_csv(w, &result.data))?;
                write_csv(&output::summary_path(out_csv), |w| {
                    output::write_histogram_summary_csv(w, &result.data)
                })?;
            }
            SweepKind::Users => {
                let result = sim.run_user_sweep()?;
                write_csv(out_csv, |w| output::write_user_sweep_csv(w, &result.data))?;
            }
            SweepKind::Feedback => {
                let result = sim.run_feedback_session()?;
                write_csv(out_csv, |w| output::write_feedback_csv(w, &result.data))?;
            }
            SweepKind::RRange => {
                let result = sim.r_range_curve()?;
                write_csv(out_csv, |w| output::write_r_range_csv(w, &result.data))?;
            }
        }
        output::write_sidecar(out_csv, sim.config())
    };
    if threads == 0 {
        body()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::domain(format!("thread pool setup failed: {e}")))?;
        pool.install(body)
    }
}

/// # Safety
/// `scenario` must be a live handle; `out_csv` a valid NUL-terminated path.
unsafe fn run_entry(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
    kind: SweepKind,
) -> NomaRisStatus {
    if scenario.is_null() {
        return null_argument("scenario");
    }
    if out_csv.is_null() {
        return null_argument("out_csv");
    }
    let path = match utf8_arg(out_csv, "out_csv") {
        Ok(p) => p,
        Err(status) => return status,
    };
    let config = &(*scenario).config;
    match catch_unwind(AssertUnwindSafe(|| {
        run_sweep(config, Path::new(path), threads, kind)
    })) {
        Ok(Ok(())) => NomaRisStatus::Ok,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic during sweep");
            NomaRisStatus::Domain
        }
    }
}

/// Paired dynamic/equal capacity and SINR across elevations, written to
/// `out_csv` with the resolved config echoed to the `.config.json` sidecar.
/// `threads` sized the worker pool; 0 keeps the process default.
///
/// # Safety
/// `scenario` must be a live handle; `out_csv` must be a valid
/// NUL-terminated path string.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_run_elevation_sweep(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
) -> NomaRisStatus {
    run_entry(scenario, out_csv, threads, SweepKind::Elevation)
}

/// Pooled per-user SINR histogram at the configured elevation; also writes
/// the `.summary.csv` companion.
///
/// # Safety
/// `scenario` must be a live handle; `out_csv` must be a valid
/// NUL-terminated path string.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_run_sinr_histogram(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
) -> NomaRisStatus {
    run_entry(scenario, out_csv, threads, SweepKind::Histogram)
}

/// Mean capacity against user count for each configured steepness.
///
/// # Safety
/// `scenario` must be a live handle; `out_csv` must be a valid
/// NUL-terminated path string.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_run_user_sweep(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
) -> NomaRisStatus {
    run_entry(scenario, out_csv, threads, SweepKind::Users)
}

/// Closed-loop steepness tuning against the capacity target.
///
/// # Safety
/// `scenario` must be a live handle; `out_csv` must be a valid
/// NUL-terminated path string.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_run_feedback(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
) -> NomaRisStatus {
    run_entry(scenario, out_csv, threads, SweepKind::Feedback)
}

/// Steepness against feedback gain across the admissible interval.
///
/// # Safety
/// `scenario` must be a live handle; `out_csv` must be a valid
/// NUL-terminated path string.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_run_r_range(
    scenario: *const NomaRisScenario,
    out_csv: *const c_char,
    threads: usize,
) -> NomaRisStatus {
    run_entry(scenario, out_csv, threads, SweepKind::RRange)
}

/// Evaluates one elevation with `trials` snapshots and reports the dynamic
/// allocation weight and its mean per-user capacity in bit/s.
///
/// # Safety
/// `scenario` must be a live handle; `out_alpha` and `out_capacity_bps`
/// must point to writable doubles.
#[no_mangle]
pub unsafe extern "C" fn noma_ris_capacity_probe(
    scenario: *const NomaRisScenario,
    theta_deg: f64,
    trials: usize,
    out_alpha: *mut f64,
    out_capacity_bps: *mut f64,
) -> NomaRisStatus {
    if scenario.is_null() {
        return null_argument("scenario");
    }
    if out_alpha.is_null() {
        return null_argument("out_alpha");
    }
    if out_capacity_bps.is_null() {
        return null_argument("out_capacity_bps");
    }
    let config = &(*scenario).config;
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(f64, f64), Error> {
        let sim = Simulation::new(config.clone())?;
        let mut warnings = Vec::new();
        let point = sim.elevation_point(theta_deg, trials, &mut warnings)?;
        Ok((point.alpha_dynamic, point.cap_dynamic_mean_bps))
    }));
    match outcome {
        Ok(Ok((alpha, capacity))) => {
            *out_alpha = alpha;
            *out_capacity_bps = capacity;
            NomaRisStatus::Ok
        }
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic during capacity probe");
            NomaRisStatus::Domain
        }
    }
}
