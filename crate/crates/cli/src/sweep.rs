//! Figure grids and custom sweeps.

use std::io::Write;

use clap::ValueEnum;
use secrecap_core::analytic::awgn_secrecy_capacity;

use crate::point::{McSettings, Point};
use crate::record::{Record, Status, CSV_HEADER};
use crate::{check_db, threads_from_env, CliError, OutputFormat, Result, SchemeName, EXIT_OK};

const NORMALIZE_NOTE: &str = "rate_bits is the secrecy rate divided by the AWGN secrecy capacity \
log2(1+gamma_m)-log2(1+gamma_w) at the mean SNRs; status=undefined where that capacity is 0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// ε-outage vs ergodic rate: γ̄_M=10 dB, γ̄_W ∈ {−10, 0, 5} dB, ε = 0.01..0.99
    Fig2,
    /// All schemes vs γ̄_M = −10..40 dB, γ̄_W ∈ {−10, 20} dB, ε=0.1, 5×5 states
    Fig3,
    /// Fig3 normalized by the AWGN secrecy capacity, γ̄_W ∈ {−10, 0, 10} dB
    Fig4,
    /// Grids from --gamma-m-db, --gamma-w-db, --epsilon and --schemes
    Custom,
}

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// Comma-separated mean main SNRs in dB (custom only)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma_m_db: Vec<f64>,
    /// Comma-separated mean eavesdropper SNRs in dB (custom only)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma_w_db: Vec<f64>,
    /// Comma-separated outage probabilities (custom only)
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Vec<f64>,
    /// Comma-separated schemes (custom only)
    #[arg(long, value_enum, value_delimiter = ',')]
    pub schemes: Vec<SchemeName>,
    /// Transmit states (custom only)
    #[arg(long)]
    pub qt: Option<usize>,
    /// Receive states (custom only)
    #[arg(long)]
    pub qr: Option<usize>,
    /// Divide rates by the AWGN secrecy capacity (custom only; implied by fig4)
    #[arg(long)]
    pub normalize: bool,
    /// Monte Carlo trials per full-csi point
    #[arg(long, default_value_t = McSettings::DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = McSettings::DEFAULT_SEED)]
    pub seed: u64,
    /// Work partitions per Monte Carlo run; does not change results
    #[arg(long)]
    pub shards: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

impl SweepArgs {
    fn has_grid_flags(&self) -> bool {
        !self.gamma_m_db.is_empty()
            || !self.gamma_w_db.is_empty()
            || !self.epsilon.is_empty()
            || !self.schemes.is_empty()
            || self.qt.is_some()
            || self.qr.is_some()
            || self.normalize
    }

    pub fn spec(&self) -> Result<SweepSpec> {
        let spec = match SweepSpec::preset(self.preset) {
            Some(_) if self.has_grid_flags() => {
                return Err(CliError::Usage(
                    "grid flags only apply to --preset custom".into(),
                ))
            }
            Some(spec) => spec,
            None => SweepSpec {
                preset: Preset::Custom,
                gamma_m_db: self.gamma_m_db.clone(),
                gamma_w_db: self.gamma_w_db.clone(),
                epsilon: self.epsilon.clone(),
                schemes: self.schemes.clone(),
                qt: self.qt.unwrap_or(1),
                qr: self.qr.unwrap_or(1),
                normalize: self.normalize,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A full grid: every combination of the listed values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub preset: Preset,
    pub gamma_m_db: Vec<f64>,
    pub gamma_w_db: Vec<f64>,
    /// May be empty when no listed scheme is outage-based.
    pub epsilon: Vec<f64>,
    pub schemes: Vec<SchemeName>,
    pub qt: usize,
    pub qr: usize,
    pub normalize: bool,
}

impl SweepSpec {
    /// The fixed grid of a figure preset; `None` for [`Preset::Custom`].
    pub fn preset(preset: Preset) -> Option<Self> {
        use SchemeName::*;
        let fig3_gm: Vec<f64> = (-10..=40).map(f64::from).collect();
        match preset {
            Preset::Fig2 => Some(Self {
                preset,
                gamma_m_db: vec![10.0],
                gamma_w_db: vec![-10.0, 0.0, 5.0],
                epsilon: (1..=99).map(|k| f64::from(k) / 100.0).collect(),
                schemes: vec![Conventional, Switching],
                qt: 1,
                qr: 1,
                normalize: false,
            }),
            Preset::Fig3 => Some(Self {
                preset,
                gamma_m_db: fig3_gm,
                gamma_w_db: vec![-10.0, 20.0],
                epsilon: vec![0.1],
                schemes: vec![Awgn, Conventional, Switching, PartialCsi, FullCsi],
                qt: 5,
                qr: 5,
                normalize: false,
            }),
            Preset::Fig4 => Some(Self {
                preset,
                gamma_m_db: fig3_gm,
                gamma_w_db: vec![-10.0, 0.0, 10.0],
                epsilon: vec![0.1],
                schemes: vec![Conventional, Switching, PartialCsi, FullCsi],
                qt: 5,
                qr: 5,
                normalize: true,
            }),
            Preset::Custom => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let empty = |what: &str| CliError::Usage(format!("sweep needs at least one {what}"));
        if self.gamma_m_db.is_empty() {
            return Err(empty("--gamma-m-db value"));
        }
        if self.gamma_w_db.is_empty() {
            return Err(empty("--gamma-w-db value"));
        }
        if self.schemes.is_empty() {
            return Err(empty("scheme in --schemes"));
        }
        if self.epsilon.is_empty() && self.schemes.iter().any(|s| s.needs_epsilon()) {
            return Err(empty("--epsilon value for outage-based schemes"));
        }
        for &v in &self.gamma_m_db {
            check_db("gamma-m-db", v)?;
        }
        for &v in &self.gamma_w_db {
            check_db("gamma-w-db", v)?;
        }
        Ok(())
    }

    /// Grid points in output order: eavesdropper SNR, scheme, ε, main SNR.
    pub fn points(&self) -> Result<Vec<Point>> {
        let eps: Vec<Option<f64>> = if self.epsilon.is_empty() {
            vec![None]
        } else {
            self.epsilon.iter().copied().map(Some).collect()
        };
        let mut points = Vec::new();
        for &gw in &self.gamma_w_db {
            for &scheme in &self.schemes {
                for &e in &eps {
                    for &gm in &self.gamma_m_db {
                        points.push(Point::new(scheme, gm, gw, e, self.qt, self.qr)?);
                    }
                }
            }
        }
        Ok(points)
    }

    pub fn header_comment(&self) -> Option<&'static str> {
        self.normalize.then_some(NORMALIZE_NOTE)
    }

    /// Evaluates every grid point in order, handing each record to `sink`.
    pub fn for_each_record(
        &self,
        mc: &McSettings,
        mut sink: impl FnMut(Record) -> Result<()>,
    ) -> Result<()> {
        for point in self.points()? {
            let mut record = point.evaluate(mc)?;
            if self.normalize && point.scheme != SchemeName::Awgn {
                normalize(&point, &mut record)?;
            }
            sink(record)?;
        }
        Ok(())
    }

    pub fn records(&self, mc: &McSettings) -> Result<Vec<Record>> {
        let mut all = Vec::new();
        self.for_each_record(mc, |r| {
            all.push(r);
            Ok(())
        })?;
        Ok(all)
    }
}

fn normalize(point: &Point, record: &mut Record) -> Result<()> {
    let p = point.params()?;
    let reference = awgn_secrecy_capacity(p.gamma_bar_m(), p.gamma_bar_w());
    if reference <= 0.0 {
        record.rate_bits = None;
        record.interval = None;
        record.status = Status::Undefined;
    } else {
        record.rate_bits = record.rate_bits.map(|r| r / reference);
        record.interval = record
            .interval
            .map(|(lo, hi)| (lo / reference, hi / reference));
    }
    Ok(())
}

pub fn run(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let spec = args.spec()?;
    let mc = McSettings {
        trials: args.trials,
        seed: args.seed,
        shards: args.shards.unwrap_or_else(crate::default_shards),
        max_threads: threads_from_env()?,
    };
    match args.format {
        OutputFormat::Csv => {
            if let Some(note) = spec.header_comment() {
                writeln!(out, "# {note}")?;
            }
            writeln!(out, "{CSV_HEADER}")?;
            spec.for_each_record(&mc, |r| Ok(writeln!(out, "{}", r.csv_row())?))?;
        }
        OutputFormat::Json => {
            if let Some(note) = spec.header_comment() {
                writeln!(err, "note: {note}")?;
            }
            spec.for_each_record(&mc, |r| Ok(writeln!(out, "{}", r.json_line()?)?))?;
        }
    }
    Ok(EXIT_OK)
}
