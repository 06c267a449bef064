//! Command-line front end: argument parsing, configuration, dispatch and output.

pub mod commands;
pub mod config;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, RunConfig};
pub use output::{fmt17, read_table, to_json_string, Artifact, Table, FORMAT_VERSION};

use crate::error::{Error, Result};

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code of a numerical failure.
pub const EXIT_NUMERICAL: i32 = 1;
/// Exit code of invalid input.
pub const EXIT_VALIDATION: i32 = 2;
/// Environment variable that caps the worker pool.
pub const THREADS_VAR: &str = "DCLAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "dclab", version, about = "Self-adjoint realisations of the critical Dirac-Coulomb radial operator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Exponent, Wronskian, q, p, norm and boundary constants
    Constants,
    /// Green kernel at (r, rho)
    Kernel,
    /// v0 and v_inf on the grid
    DumpSolutions,
    /// Boundary data, conditions and closure certificate of a spinor CSV
    Classify,
    /// Eigenvalues of one extension in an energy window
    Spectrum,
    /// beta(E) along the gap
    Flow,
    /// Eigenvalues and gap bounds over lists of nu and beta
    Sweep,
    /// Power-iteration estimate of the Green inverse norm
    SdinvNorm,
    /// Quick invariant suite
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Kernel => "kernel",
            Command::DumpSolutions => "dump-solutions",
            Command::Classify => "classify",
            Command::Spectrum => "spectrum",
            Command::Flow => "flow",
            Command::Sweep => "sweep",
            Command::SdinvNorm => "sdinv-norm",
            Command::Selftest => "selftest",
        }
    }
}

/// Flags shared by every subcommand; each overrides the config-file key of the same name.
#[derive(Debug, Default, Args)]
struct Flags {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Coupling, or a comma-separated list for sweep
    #[arg(long, global = true, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Extension parameter (number or inf), or a comma-separated list
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long = "r-min", global = true)]
    r_min: Option<String>,
    #[arg(long = "r-max", global = true)]
    r_max: Option<String>,
    #[arg(long, global = true)]
    panels: Option<String>,
    #[arg(long, global = true)]
    order: Option<String>,
    #[arg(long = "window-lo", global = true)]
    window_lo: Option<String>,
    #[arg(long = "window-hi", global = true)]
    window_hi: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    emin: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    emax: Option<String>,
    #[arg(long, global = true)]
    scan: Option<String>,
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true)]
    r: Option<String>,
    #[arg(long, global = true)]
    rho: Option<String>,
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    tolerance: Option<String>,
    /// Attach the Green inverse norm and gap bound to spectrum output
    #[arg(long = "with-norm", global = true)]
    with_norm: bool,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let all = [
            ("nu", &self.nu),
            ("kappa", &self.kappa),
            ("beta", &self.beta),
            ("r_min", &self.r_min),
            ("r_max", &self.r_max),
            ("panels", &self.panels),
            ("order", &self.order),
            ("window_lo", &self.window_lo),
            ("window_hi", &self.window_hi),
            ("emin", &self.emin),
            ("emax", &self.emax),
            ("scan", &self.scan),
            ("points", &self.points),
            ("r", &self.r),
            ("rho", &self.rho),
            ("input", &self.input),
            ("output", &self.output),
            ("format", &self.format),
            ("seed", &self.seed),
            ("tolerance", &self.tolerance),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_deref().map(|v| (k, v))).collect()
    }
}

fn resolve(command: Command, flags: &Flags) -> Result<RunConfig> {
    let mut config = RunConfig::defaults(command.name());
    if let Some(path) = &flags.config {
        config.apply_file(path)?;
    }
    for (key, value) in flags.pairs() {
        config.set(key, value)?;
    }
    if flags.with_norm {
        config.with_norm = true;
    }
    config.validate()?;
    Ok(config)
}

/// Worker count from the environment, if capped.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParams(format!("{THREADS_VAR} = {text:?} must be a positive integer"))),
        },
    }
}

fn execute(command: Command, config: &RunConfig) -> Result<(Artifact, bool)> {
    let artifact = match command {
        Command::Constants => commands::constants(config)?,
        Command::Kernel => commands::kernel(config)?,
        Command::DumpSolutions => commands::dump_solutions(config)?,
        Command::Classify => commands::classify(config)?,
        Command::Spectrum => commands::spectrum(config)?,
        Command::Flow => commands::flow(config)?,
        Command::Sweep => commands::sweep(config)?,
        Command::SdinvNorm => commands::sdinv_norm(config)?,
        Command::Selftest => {
            let checks = selftest::run_checks()?;
            let passed = checks.iter().all(|c| c.passed);
            return Ok((Artifact::json(&checks)?, passed));
        }
    };
    Ok((artifact, true))
}

fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    if e.is_validation() { EXIT_VALIDATION } else { EXIT_NUMERICAL }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let outcome = (|| {
        let config = resolve(cli.command, &cli.flags)?;
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = thread_cap()? {
            pool = pool.num_threads(n);
        }
        let pool = pool.build().map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
        let (artifact, passed) = pool.install(|| execute(cli.command, &config))?;
        emit(&config, &artifact.render(&config)?)?;
        Ok::<bool, Error>(passed)
    })();
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("error: self-test checks failed");
            EXIT_NUMERICAL
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
