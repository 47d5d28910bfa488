//! CSV renderers for experiment results, plus the sidecar that echoes the
//! fully resolved config next to each output file.
//!
//! Numeric cells use Rust's shortest round-trip float formatting, and
//! histogram counts are integers, so a given result always renders to the
//! same bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::montecarlo::{
    ElevationPoint, FeedbackSession, RRangePoint, SinrHistogram, UserSweepPoint,
};

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::config(format!("csv write failed: {other:?}")),
    }
}

fn write_rows<W: Write>(
    writer: W,
    header: &[&str],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header).map_err(csv_io)?;
    for row in rows {
        w.write_record(&row).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn flag(b: bool) -> String {
    if b {
        "1".into()
    } else {
        "0".into()
    }
}

pub fn write_elevation_csv<W: Write>(writer: W, points: &[ElevationPoint]) -> Result<()> {
    write_rows(
        writer,
        &[
            "theta_deg",
            "alpha",
            "p_sat_w",
            "p_bs_w",
            "cap_dynamic_mean_bps",
            "cap_dynamic_std_bps",
            "cap_equal_mean_bps",
            "cap_equal_std_bps",
            "sinr_dynamic_mean",
            "sinr_equal_mean",
            "gain_percent",
        ],
        points.iter().map(|p| {
            vec![
                p.theta_deg.to_string(),
                p.alpha_dynamic.to_string(),
                p.p_sat_w.to_string(),
                p.p_bs_w.to_string(),
                p.cap_dynamic_mean_bps.to_string(),
                p.cap_dynamic_std_bps.to_string(),
                p.cap_equal_mean_bps.to_string(),
                p.cap_equal_std_bps.to_string(),
                p.sinr_dynamic_mean.to_string(),
                p.sinr_equal_mean.to_string(),
                p.gain_percent.to_string(),
            ]
        }),
    )
}

/// The binned distributions; summary statistics go to the companion file.
pub fn write_histogram_csv<W: Write>(writer: W, histogram: &SinrHistogram) -> Result<()> {
    write_rows(
        writer,
        &["bin_lo", "bin_hi", "count_dynamic", "count_equal"],
        histogram.bins.iter().map(|b| {
            vec![
                b.lo.to_string(),
                b.hi.to_string(),
                b.count_dynamic.to_string(),
                b.count_equal.to_string(),
            ]
        }),
    )
}

pub fn write_histogram_summary_csv<W: Write>(writer: W, histogram: &SinrHistogram) -> Result<()> {
    let rows = [
        ("dynamic", histogram.alpha_dynamic, &histogram.dynamic),
        ("equal", crate::montecarlo::ALPHA_EQUAL, &histogram.equal),
    ];
    write_rows(
        writer,
        &[
            "strategy",
            "theta_deg",
            "alpha",
            "mean",
            "std",
            "p10",
            "p90",
            "samples",
        ],
        rows.iter().map(|(name, alpha, s)| {
            vec![
                name.to_string(),
                histogram.theta_deg.to_string(),
                alpha.to_string(),
                s.mean.to_string(),
                s.std.to_string(),
                s.p10.to_string(),
                s.p90.to_string(),
                s.samples.to_string(),
            ]
        }),
    )
}

pub fn write_user_sweep_csv<W: Write>(writer: W, points: &[UserSweepPoint]) -> Result<()> {
    write_rows(
        writer,
        &[
            "users",
            "r",
            "alpha",
            "cap_mean_bps",
            "cap_std_bps",
            "sinr_mean",
        ],
        points.iter().map(|p| {
            vec![
                p.users.to_string(),
                p.r.to_string(),
                p.alpha.to_string(),
                p.cap_mean_bps.to_string(),
                p.cap_std_bps.to_string(),
                p.sinr_mean.to_string(),
            ]
        }),
    )
}

pub fn write_feedback_csv<W: Write>(writer: W, session: &FeedbackSession) -> Result<()> {
    write_rows(
        writer,
        &["t", "k_prime", "gamma", "error", "c_obs"],
        session.records.iter().map(|r| {
            vec![
                r.t.to_string(),
                r.k_prime.to_string(),
                r.gamma.to_string(),
                r.error_bps.to_string(),
                r.c_obs_bps.to_string(),
            ]
        }),
    )
}

pub fn write_r_range_csv<W: Write>(writer: W, curve: &[RRangePoint]) -> Result<()> {
    write_rows(
        writer,
        &["k_prime", "r_min_flag", "r_max_flag", "r"],
        curve.iter().map(|p| {
            vec![
                p.k_prime.to_string(),
                flag(p.r_min_flag),
                flag(p.r_max_flag),
                p.r.to_string(),
            ]
        }),
    )
}

/// Companion file locations derived from the primary output path.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("config.json")
}

pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.csv")
}

/// Echoes the fully resolved config next to the CSV it produced.
pub fn write_sidecar(out: &Path, config: &ScenarioConfig) -> Result<()> {
    let mut text = config.to_pretty_json()?;
    text.push('\n');
    std::fs::write(sidecar_path(out), text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{FeedbackStepRecord, HistogramBin, StrategySummary};

    fn render<F: FnOnce(&mut Vec<u8>)>(f: F) -> String {
        let mut buf = Vec::new();
        f(&mut buf);
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn test_elevation_csv_header_and_formatting() {
        let point = ElevationPoint {
            theta_deg: 72.5,
            alpha_dynamic: 0.9,
            p_sat_w: 0.9,
            p_bs_w: 0.1,
            cap_dynamic_mean_bps: 1.0e6,
            cap_dynamic_std_bps: 0.5,
            cap_equal_mean_bps: 8.0e5,
            cap_equal_std_bps: 0.25,
            sinr_dynamic_mean: 0.75,
            sinr_equal_mean: 0.5,
            gain_percent: 25.0,
        };
        let text = render(|b| write_elevation_csv(b, &[point]).unwrap());
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theta_deg,alpha,p_sat_w,p_bs_w,cap_dynamic_mean_bps,cap_dynamic_std_bps,\
             cap_equal_mean_bps,cap_equal_std_bps,sinr_dynamic_mean,sinr_equal_mean,gain_percent"
        );
        assert_eq!(
            lines.next().unwrap(),
            "72.5,0.9,0.9,0.1,1000000,0.5,800000,0.25,0.75,0.5,25"
        );
        assert!(lines.next().is_none());
    }

    #[test]
    fn test_feedback_csv_header_is_pinned() {
        let session = FeedbackSession {
            theta_deg: 80.0,
            c_target_bps: 1.0e6,
            delta_c_max_bps: 5.0e5,
            k_init: 1.0,
            k_min: 0.5,
            k_max: 3.0,
            records: vec![FeedbackStepRecord {
                t: 1,
                k_prime: 1.25,
                gamma: 0.01,
                error_bps: -2.0e4,
                c_obs_bps: 1.02e6,
                r: 0.04,
                alpha: 0.8,
            }],
        };
        let text = render(|b| write_feedback_csv(b, &session).unwrap());
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,k_prime,gamma,error,c_obs");
        assert_eq!(lines.next().unwrap(), "1,1.25,0.01,-20000,1020000");
    }

    #[test]
    fn test_r_range_csv_flags_as_integers() {
        let curve = [
            RRangePoint {
                k_prime: 0.5,
                r_min_flag: true,
                r_max_flag: false,
                r: 0.02,
            },
            RRangePoint {
                k_prime: 3.0,
                r_min_flag: false,
                r_max_flag: true,
                r: 0.08,
            },
        ];
        let text = render(|b| write_r_range_csv(b, &curve).unwrap());
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "k_prime,r_min_flag,r_max_flag,r");
        assert_eq!(lines.next().unwrap(), "0.5,1,0,0.02");
        assert_eq!(lines.next().unwrap(), "3,0,1,0.08");
    }

    #[test]
    fn test_histogram_csvs() {
        let histogram = SinrHistogram {
            theta_deg: 80.0,
            alpha_dynamic: 0.9,
            dynamic: StrategySummary {
                mean: 0.65,
                std: 0.2,
                p10: 0.4,
                p90: 0.9,
                samples: 100,
            },
            equal: StrategySummary {
                mean: 0.55,
                std: 0.05,
                p10: 0.5,
                p90: 0.6,
                samples: 100,
            },
            bins: vec![HistogramBin {
                lo: 0.0,
                hi: 1.0,
                count_dynamic: 100,
                count_equal: 100,
            }],
        };
        let bins = render(|b| write_histogram_csv(b, &histogram).unwrap());
        assert!(bins.starts_with("bin_lo,bin_hi,count_dynamic,count_equal\n"));
        assert!(bins.contains("0,1,100,100"));
        let summary = render(|b| write_histogram_summary_csv(b, &histogram).unwrap());
        let mut lines = summary.lines();
        assert_eq!(
            lines.next().unwrap(),
            "strategy,theta_deg,alpha,mean,std,p10,p90,samples"
        );
        assert_eq!(lines.next().unwrap(), "dynamic,80,0.9,0.65,0.2,0.4,0.9,100");
        assert_eq!(lines.next().unwrap(), "equal,80,0.5,0.55,0.05,0.5,0.6,100");
    }

    #[test]
    fn test_user_sweep_csv() {
        let points = [UserSweepPoint {
            users: 4,
            r: 0.02,
            alpha: 0.7,
            cap_mean_bps: 9.0e5,
            cap_std_bps: 1.0e3,
            sinr_mean: 0.6,
        }];
        let text = render(|b| write_user_sweep_csv(b, &points).unwrap());
        assert!(text.starts_with("users,r,alpha,cap_mean_bps,cap_std_bps,sinr_mean\n"));
        assert!(text.contains("4,0.02,0.7,900000,1000,0.6"));
    }

    #[test]
    fn test_companion_paths() {
        let out = Path::new("/tmp/run/elevation.csv");
        assert_eq!(
            sidecar_path(out),
            Path::new("/tmp/run/elevation.config.json")
        );
        assert_eq!(
            summary_path(out),
            Path::new("/tmp/run/elevation.summary.csv")
        );
        assert_eq!(
            sidecar_path(Path::new("results")),
            Path::new("results.config.json")
        );
    }

    #[test]
    fn test_sidecar_round_trips_config() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("sweep.csv");
        let config = ScenarioConfig::default();
        write_sidecar(&out, &config).unwrap();
        let text = std::fs::read_to_string(dir.path().join("sweep.config.json")).unwrap();
        let back = ScenarioConfig::from_json_str(&text).unwrap();
        assert_eq!(back, config);
    }
}
