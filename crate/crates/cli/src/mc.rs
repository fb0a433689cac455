//! Seeded Monte Carlo runs.
//!
//! The shard count only partitions work, so it is deliberately left out of
//! the printed record: runs that differ only in `--shards` print identical
//! bytes.

use std::io::Write;

use serde::ser::{Serialize, SerializeMap, Serializer};

use secrecap_core::monte_carlo::{estimate_eps_quantile, estimate_ergodic, estimate_outage};
use secrecap_core::{AntennaConfig, ChannelParams, SimulationSpec};

use crate::format::{fmt_g, round_g};
use crate::point::McSettings;
use crate::{
    check_db, db_to_linear, threads_from_env, CliError, OutputFormat, Result, SchemeName,
    EXIT_INFEASIBLE, EXIT_OK,
};

#[derive(Debug, clap::Args)]
pub struct McArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeName,
    /// Mean main-channel SNR (dB)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_m_db: f64,
    /// Mean eavesdropper SNR (dB)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_w_db: f64,
    #[arg(long, default_value_t = 1)]
    pub qt: usize,
    #[arg(long, default_value_t = 1)]
    pub qr: usize,
    #[arg(long, default_value_t = McSettings::DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = McSettings::DEFAULT_SEED)]
    pub seed: u64,
    /// Work partitions; does not change results
    #[arg(long)]
    pub shards: Option<usize>,
    /// Estimate the outage probability at this rate (bits)
    #[arg(long, conflicts_with = "epsilon")]
    pub rate: Option<f64>,
    /// Estimate the ε-outage secrecy rate
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Symbols per codeword for switching
    #[arg(long, default_value_t = 1)]
    pub symbols: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Text(&'static str),
    Int(u64),
    Real(Option<f64>),
}

/// An ordered record; serializes as a JSON object in field order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct McRecord {
    fields: Vec<(&'static str, Value)>,
}

impl McRecord {
    fn text(mut self, k: &'static str, v: &'static str) -> Self {
        self.fields.push((k, Value::Text(v)));
        self
    }

    fn int(mut self, k: &'static str, v: u64) -> Self {
        self.fields.push((k, Value::Int(v)));
        self
    }

    fn real(mut self, k: &'static str, v: impl Into<Option<f64>>) -> Self {
        self.fields.push((k, Value::Real(v.into())));
        self
    }

    pub fn csv_header(&self) -> String {
        self.fields
            .iter()
            .map(|(k, _)| *k)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn csv_row(&self) -> String {
        self.fields
            .iter()
            .map(|(_, v)| match v {
                Value::Text(s) => (*s).to_owned(),
                Value::Int(n) => n.to_string(),
                Value::Real(x) => x.map(fmt_g).unwrap_or_default(),
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Looks up a real-valued field.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.fields.iter().find_map(|(k, v)| match v {
            Value::Real(x) if *k == key => *x,
            Value::Int(n) if *k == key => Some(*n as f64),
            _ => None,
        })
    }
}

impl Serialize for McRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.fields.len()))?;
        for (k, v) in &self.fields {
            match v {
                Value::Text(t) => map.serialize_entry(k, t)?,
                Value::Int(n) => map.serialize_entry(k, n)?,
                Value::Real(x) => map.serialize_entry(k, &x.map(round_g))?,
            }
        }
        map.end()
    }
}

/// Runs the estimate and returns the record and whether the rate is
/// achievable.
pub fn estimate(args: &McArgs, max_threads: Option<usize>) -> Result<(McRecord, bool)> {
    check_db("gamma-m-db", args.gamma_m_db)?;
    check_db("gamma-w-db", args.gamma_w_db)?;
    let scheme = args.scheme.simulated().ok_or_else(|| {
        CliError::Usage("awgn is not a fading scheme; use `secrecap eval --scheme awgn`".into())
    })?;
    let config = if args.scheme.single_antenna() {
        AntennaConfig::single()
    } else {
        AntennaConfig::new(args.qt, args.qr)?
    };
    let params = ChannelParams::new(db_to_linear(args.gamma_m_db), db_to_linear(args.gamma_w_db))?;
    let spec = SimulationSpec::new(scheme, params, config, args.trials, args.seed)?
        .with_shards(args.shards.unwrap_or_else(crate::default_shards))?
        .with_symbols(args.symbols)?
        .with_max_threads(max_threads);

    let head = McRecord::default()
        .text("scheme", args.scheme.as_str())
        .real("gamma_m_db", args.gamma_m_db)
        .real("gamma_w_db", args.gamma_w_db)
        .int("qt", config.q_t() as u64)
        .int("qr", config.q_r() as u64)
        .int("symbols", args.symbols as u64)
        .int("trials", args.trials)
        .int("seed", args.seed);

    Ok(match (args.rate, args.epsilon) {
        (Some(rate), _) => {
            let e = estimate_outage(&spec, rate)?;
            let rec = head
                .real("rate_bits", rate)
                .int("outages", e.outages)
                .real("p_hat", e.p_hat)
                .real("std_err", e.std_err);
            (rec, true)
        }
        (None, Some(eps)) => {
            let q = estimate_eps_quantile(&spec, eps)?;
            let feasible = q.rate.is_feasible();
            let rec = head
                .real("epsilon", eps)
                .real("rate_bits", q.rate.rate())
                .text("status", if feasible { "ok" } else { "infeasible" })
                .int("rank", q.rank)
                .real("lower", q.lower)
                .real("upper", q.upper)
                .real("half_width", q.half_width);
            (rec, feasible)
        }
        (None, None) if args.scheme == SchemeName::Switching => {
            let e = estimate_ergodic(&spec, args.symbols)?;
            let rec = head
                .real("main_bits", e.mean)
                .real("main_std_err", e.std_err)
                .real("eve_bits", e.eve_mean)
                .real("eve_std_err", e.eve_std_err)
                .real("secrecy_bits", e.secrecy());
            (rec, true)
        }
        (None, None) => {
            return Err(CliError::Usage(format!(
                "{} needs --rate or --epsilon",
                args.scheme
            )))
        }
    })
}

pub fn run(args: &McArgs, out: &mut dyn Write) -> Result<u8> {
    let (record, feasible) = estimate(args, threads_from_env()?)?;
    match args.format {
        OutputFormat::Csv => writeln!(out, "{}\n{}", record.csv_header(), record.csv_row())?,
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&record)?)?,
    }
    Ok(if feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}
