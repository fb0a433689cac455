//! Command-line front end for `secrecap-core`.
//!
//! Three subcommands: `eval` (one analytic point), `sweep` (figure grids as
//! CSV or JSON lines) and `mc` (seeded Monte Carlo runs). SNRs enter in dB
//! and are converted to linear power ratios here, before any library call.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub mod format;
pub mod mc;
pub mod point;
pub mod record;
pub mod sweep;

pub use point::{McSettings, Point};
pub use record::{Method, Record, Status, CSV_HEADER};
pub use sweep::{Preset, SweepSpec};

/// Environment variable capping Monte Carlo worker threads.
pub const THREADS_ENV: &str = "SECRECAP_THREADS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] secrecap_core::Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Schemes accepted on the command line; `awgn` is the non-fading reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    Awgn,
    Conventional,
    Switching,
    PartialCsi,
    FullCsi,
}

impl SchemeName {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeName::Awgn => "awgn",
            SchemeName::Conventional => "conventional",
            SchemeName::Switching => "switching",
            SchemeName::PartialCsi => "partial-csi",
            SchemeName::FullCsi => "full-csi",
        }
    }

    /// Rates defined through an outage probability.
    pub fn needs_epsilon(self) -> bool {
        matches!(
            self,
            SchemeName::Conventional | SchemeName::PartialCsi | SchemeName::FullCsi
        )
    }

    /// Single-antenna schemes ignore the antenna configuration.
    pub fn single_antenna(self) -> bool {
        matches!(self, SchemeName::Awgn | SchemeName::Conventional)
    }

    pub fn simulated(self) -> Option<secrecap_core::Scheme> {
        use secrecap_core::Scheme;
        match self {
            SchemeName::Awgn => None,
            SchemeName::Conventional => Some(Scheme::Conventional),
            SchemeName::Switching => Some(Scheme::Switching),
            SchemeName::PartialCsi => Some(Scheme::PartialCsi),
            SchemeName::FullCsi => Some(Scheme::FullCsi),
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "secrecap",
    version,
    about = "Secrecy capacity of reconfigurable-antenna wiretap links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one scheme at one operating point from its closed form
    Eval(EvalArgs),
    /// Emit a grid of operating points
    Sweep(sweep::SweepArgs),
    /// Run a seeded Monte Carlo estimate
    Mc(mc::McArgs),
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeName,
    /// Mean main-channel SNR (dB)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_m_db: f64,
    /// Mean eavesdropper SNR (dB)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_w_db: f64,
    /// Outage probability; required for outage-based schemes
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub qt: usize,
    #[arg(long, default_value_t = 1)]
    pub qr: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

/// `γ = 10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub(crate) fn check_db(name: &str, db: f64) -> Result<()> {
    if db.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be finite, got {db}"
        )))
    }
}

/// Worker cap from [`THREADS_ENV`], if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

pub fn default_shards() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

pub fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<u8> {
    check_db("gamma-m-db", args.gamma_m_db)?;
    check_db("gamma-w-db", args.gamma_w_db)?;
    match args.scheme {
        SchemeName::FullCsi => {
            return Err(CliError::Usage(
                "full-csi has no closed form; estimate it with `secrecap mc --scheme full-csi`"
                    .into(),
            ))
        }
        s if !s.needs_epsilon() && args.epsilon.is_some() => {
            return Err(CliError::Usage(format!("--epsilon does not apply to {s}")));
        }
        s if s.needs_epsilon() && args.epsilon.is_none() => {
            return Err(CliError::Usage(format!("--epsilon is required for {s}")));
        }
        _ => {}
    }
    let point = Point::new(
        args.scheme,
        args.gamma_m_db,
        args.gamma_w_db,
        args.epsilon,
        args.qt,
        args.qr,
    )?;
    let record = point.evaluate(&McSettings::default())?;
    match args.format {
        OutputFormat::Csv => writeln!(out, "{CSV_HEADER}\n{}", record.csv_row())?,
        OutputFormat::Json => writeln!(out, "{}", record.json_line()?)?,
    }
    Ok(if record.status == Status::Infeasible {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    })
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code. Records go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => run_eval(a, out),
        Command::Sweep(a) => sweep::run(a, out, err),
        Command::Mc(a) => mc::run(a, out),
    };
    match result.and_then(|code| out.flush().map(|_| code).map_err(CliError::from)) {
        Ok(code) => code,
        // downstream closed early, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
