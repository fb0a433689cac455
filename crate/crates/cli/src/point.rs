use secrecap_core::analytic::{
    awgn_secrecy_capacity, conventional_eps_capacity, selection_eps_capacity,
    switching_secrecy_capacity,
};
use secrecap_core::monte_carlo::estimate_eps_quantile;
use secrecap_core::{AntennaConfig, ChannelParams, RateResult, Scheme, SimulationSpec};

use crate::record::{Method, Record, Status};
use crate::{check_db, db_to_linear, CliError, Result, SchemeName};

/// Monte Carlo knobs used wherever a rate has no closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSettings {
    pub trials: u64,
    pub seed: u64,
    pub shards: usize,
    pub max_threads: Option<usize>,
}

impl McSettings {
    pub const DEFAULT_TRIALS: u64 = 100_000;
    pub const DEFAULT_SEED: u64 = 42;
}

impl Default for McSettings {
    fn default() -> Self {
        Self {
            trials: Self::DEFAULT_TRIALS,
            seed: Self::DEFAULT_SEED,
            shards: crate::default_shards(),
            max_threads: None,
        }
    }
}

/// One operating point in CLI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub scheme: SchemeName,
    pub gamma_m_db: f64,
    pub gamma_w_db: f64,
    pub epsilon: Option<f64>,
    pub config: AntennaConfig,
}

impl Point {
    /// Single-antenna schemes always get a 1×1 configuration.
    pub fn new(
        scheme: SchemeName,
        gamma_m_db: f64,
        gamma_w_db: f64,
        epsilon: Option<f64>,
        qt: usize,
        qr: usize,
    ) -> Result<Self> {
        let config = if scheme.single_antenna() {
            AntennaConfig::single()
        } else {
            AntennaConfig::new(qt, qr)?
        };
        Ok(Self {
            scheme,
            gamma_m_db,
            gamma_w_db,
            epsilon,
            config,
        })
    }

    pub fn params(&self) -> Result<ChannelParams> {
        check_db("gamma-m-db", self.gamma_m_db)?;
        check_db("gamma-w-db", self.gamma_w_db)?;
        Ok(ChannelParams::new(
            db_to_linear(self.gamma_m_db),
            db_to_linear(self.gamma_w_db),
        )?)
    }

    fn epsilon(&self) -> Result<f64> {
        self.epsilon
            .ok_or_else(|| CliError::Usage(format!("--epsilon is required for {}", self.scheme)))
    }

    pub fn evaluate(&self, mc: &McSettings) -> Result<Record> {
        let params = self.params()?;
        let mut method = Method::Analytic;
        let mut interval = None;
        let rate = match self.scheme {
            SchemeName::Awgn => RateResult::Achievable(awgn_secrecy_capacity(
                params.gamma_bar_m(),
                params.gamma_bar_w(),
            )),
            SchemeName::Switching => RateResult::Achievable(switching_secrecy_capacity(&params)?),
            SchemeName::Conventional => conventional_eps_capacity(self.epsilon()?, &params)?,
            SchemeName::PartialCsi => {
                selection_eps_capacity(self.epsilon()?, &params, self.config.n_states())?
            }
            SchemeName::FullCsi => {
                let spec =
                    SimulationSpec::new(Scheme::FullCsi, params, self.config, mc.trials, mc.seed)?
                        .with_shards(mc.shards)?
                        .with_max_threads(mc.max_threads);
                let q = estimate_eps_quantile(&spec, self.epsilon()?)?;
                method = Method::Mc;
                interval = Some((q.lower, q.upper));
                q.rate
            }
        };
        Ok(Record {
            scheme: self.scheme,
            gamma_m_db: self.gamma_m_db,
            gamma_w_db: self.gamma_w_db,
            epsilon: self.epsilon,
            qt: self.config.q_t(),
            qr: self.config.q_r(),
            rate_bits: rate.rate(),
            status: if rate.is_feasible() {
                Status::Ok
            } else {
                Status::Infeasible
            },
            method,
            interval,
        })
    }
}
