//! Command-line front end: argument parsing, config resolution, thread-pool
//! setup, experiment dispatch, and exit-code mapping.
//!
//! Exit codes: 0 success, 1 invalid scenario or math domain problem,
//! 2 usage mistakes, 3 filesystem failures.

use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::config::ScenarioConfig;
use crate::error::Error;
use crate::montecarlo::{RunResult, Simulation};
use crate::output;

pub const THREADS_ENV: &str = "NOMA_RIS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "noma-ris",
    version,
    about = "Link-level Monte Carlo experiments for satellite/terrestrial power sharing \
             through a reconfigurable surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Paired dynamic/equal capacity and SINR across elevations.
    SweepElevation(RunArgs),
    /// Pooled per-user SINR distributions at one elevation.
    SinrHist(RunArgs),
    /// Mean capacity against user count for each configured steepness.
    SweepUsers(RunArgs),
    /// Closed-loop steepness tuning against a capacity target.
    Feedback(RunArgs),
    /// Steepness against feedback gain across the admissible interval.
    RRange(RunArgs),
    /// Resolve, validate, and print the scenario config.
    ValidateConfig(ConfigArgs),
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Scenario config JSON.
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Override one config field, e.g. --set controller.r=0.05 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Override the config's random seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Primary output CSV; companions land next to it.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Worker threads (default: the NOMA_RIS_THREADS variable, then all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

/// Parses the process arguments, runs the selected command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ValidateConfig(args) => validate_config(&args),
        Command::SweepElevation(args) => with_pool(&args, |sim| {
            let result = sim.run_elevation_sweep()?;
            let rows = result.data.len();
            write_csv(&args.out, |w| output::write_elevation_csv(w, &result.data))?;
            finish(&args.out, sim.config(), &result, rows)
        }),
        Command::SinrHist(args) => with_pool(&args, |sim| {
            let result = sim.run_sinr_histogram()?;
            let rows = result.data.bins.len();
            write_csv(&args.out, |w| output::write_histogram_csv(w, &result.data))?;
            let summary = output::summary_path(&args.out);
            write_csv(&summary, |w| {
                output::write_histogram_summary_csv(w, &result.data)
            })?;
            eprintln!("wrote {}", summary.display());
            finish(&args.out, sim.config(), &result, rows)
        }),
        Command::SweepUsers(args) => with_pool(&args, |sim| {
            let result = sim.run_user_sweep()?;
            let rows = result.data.len();
            write_csv(&args.out, |w| output::write_user_sweep_csv(w, &result.data))?;
            finish(&args.out, sim.config(), &result, rows)
        }),
        Command::Feedback(args) => with_pool(&args, |sim| {
            let result = sim.run_feedback_session()?;
            let session = &result.data;
            eprintln!(
                "target {} bit/s, swing {} bit/s, gain start {} in [{}, {}]",
                session.c_target_bps,
                session.delta_c_max_bps,
                session.k_init,
                session.k_min,
                session.k_max
            );
            let rows = session.records.len();
            write_csv(&args.out, |w| output::write_feedback_csv(w, session))?;
            finish(&args.out, sim.config(), &result, rows)
        }),
        Command::RRange(args) => with_pool(&args, |sim| {
            let result = sim.r_range_curve()?;
            let rows = result.data.len();
            write_csv(&args.out, |w| output::write_r_range_csv(w, &result.data))?;
            finish(&args.out, sim.config(), &result, rows)
        }),
    }
}

fn validate_config(args: &ConfigArgs) -> Result<(), CliError> {
    let config = load_config(args)?;
    config.validate().map_err(CliError::from)?;
    println!("{}", config.to_pretty_json().map_err(CliError::from)?);
    eprintln!(
        "config ok, hash {}",
        config.hash_hex().map_err(CliError::from)?
    );
    Ok(())
}

fn with_pool(
    args: &RunArgs,
    body: impl FnOnce(&Simulation) -> Result<(), CliError> + Send,
) -> Result<(), CliError> {
    let config = load_config(&args.config)?;
    let sim = Simulation::new(config).map_err(CliError::from)?;
    match resolve_threads(args.threads, std::env::var(THREADS_ENV).ok().as_deref())? {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool setup failed: {e}")))?;
            pool.install(|| body(&sim))
        }
        None => body(&sim),
    }
}

fn load_config(args: &ConfigArgs) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Lib(io_with_path(e, &args.config)))?;
    let mut config = ScenarioConfig::from_json_str(&text).map_err(CliError::from)?;
    let overrides = parse_set_pairs(&args.set)?;
    config = config.with_overrides(&overrides).map_err(CliError::from)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    Ok(config)
}

/// `--threads` wins, then the environment variable; `None` keeps the
/// default pool.
fn resolve_threads(
    cli_value: Option<usize>,
    env_value: Option<&str>,
) -> Result<Option<usize>, CliError> {
    let threads = match (cli_value, env_value) {
        (Some(t), _) => Some(t),
        (None, Some(raw)) => Some(raw.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{raw}'"
            ))
        })?),
        (None, None) => None,
    };
    if threads == Some(0) {
        return Err(CliError::Usage("thread count must be at least 1".into()));
    }
    Ok(threads)
}

fn parse_set_pairs(raw: &[String]) -> Result<Vec<(String, String)>, CliError> {
    raw.iter()
        .map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .filter(|(k, _)| !k.is_empty())
                .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got '{pair}'")))
        })
        .collect()
}

fn write_csv(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> crate::error::Result<()>,
) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::Lib(io_with_path(e, path)))?;
    let mut writer = BufWriter::new(file);
    body(&mut writer)?;
    writer
        .flush()
        .map_err(|e| CliError::Lib(io_with_path(e, path)))?;
    Ok(())
}

fn finish<T>(
    out: &Path,
    config: &ScenarioConfig,
    result: &RunResult<T>,
    rows: usize,
) -> Result<(), CliError> {
    output::write_sidecar(out, config)?;
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    eprintln!(
        "wrote {} ({rows} rows), seed {}, config hash {}",
        out.display(),
        result.seed,
        result.config_hash
    );
    Ok(())
}

fn io_with_path(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    ))
}
