//! Seeded Monte Carlo evaluation of all four schemes.
//!
//! # Reproducibility
//!
//! Trials are grouped into fixed chunks of [`CHUNK_TRIALS`] consecutive
//! global trial indices. Chunk `c` draws its blocks from
//! `ChannelStream::new(seed, c)`, and every per-chunk partial result (counts,
//! sums, sample buffers) is merged in chunk order. Shards are contiguous runs
//! of chunks, so the output depends only on `(seed, trials)` and never on the
//! shard count or on which thread ran which shard.
//!
//! Two specs with the same seed, trial count and antenna configuration see
//! the same channel blocks, which makes cross-scheme comparisons paired.

use std::f64::consts::LN_2;
use std::num::NonZeroUsize;
use std::thread;

use crate::analytic::RateResult;
use crate::channel::{
    fill_block, new_block, AntennaConfig, ChannelBlock, ChannelParams, ChannelStream,
};
use crate::error::{domain, Error, Result};

/// Trials per RNG substream.
pub const CHUNK_TRIALS: u64 = 4096;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Transmission scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Single antennas at both ends; uses block entry `(0, 0)` and `eve[0]`.
    Conventional,
    /// Radiation state switched every symbol, no CSI.
    Switching,
    /// Best state chosen from main-channel CSI only.
    PartialCsi,
    /// Best state chosen from main and eavesdropper CSI.
    FullCsi,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Conventional,
        Scheme::Switching,
        Scheme::PartialCsi,
        Scheme::FullCsi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Conventional => "conventional",
            Scheme::Switching => "switching",
            Scheme::PartialCsi => "partial-csi",
            Scheme::FullCsi => "full-csi",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: "scheme",
                value: s.to_string(),
                reason: "expected conventional, switching, partial-csi or full-csi",
            })
    }
}

/// What to simulate and how to split the work.
///
/// Shard `s` of `S` owns chunks `⌊s·C/S⌋ .. ⌊(s+1)·C/S⌋` of the `C` chunks;
/// the trial count need not divide evenly, the final chunk is simply short.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    pub scheme: Scheme,
    pub params: ChannelParams,
    pub config: AntennaConfig,
    pub trials: u64,
    pub seed: u64,
    pub shards: usize,
    /// Symbols per codeword for [`Scheme::Switching`].
    pub symbols: usize,
    /// Worker thread cap; `None` uses the available parallelism.
    pub max_threads: Option<usize>,
}

impl SimulationSpec {
    pub fn new(
        scheme: Scheme,
        params: ChannelParams,
        config: AntennaConfig,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter {
                name: "trials",
                value: "0".into(),
                reason: "need at least one trial",
            });
        }
        Ok(Self {
            scheme,
            params,
            config,
            trials,
            seed,
            shards: 1,
            symbols: 1,
            max_threads: None,
        })
    }

    pub fn with_shards(mut self, shards: usize) -> Result<Self> {
        if shards == 0 {
            return Err(Error::InvalidParameter {
                name: "shards",
                value: "0".into(),
                reason: "need at least one shard",
            });
        }
        self.shards = shards;
        Ok(self)
    }

    /// Symbols per codeword for switching; at most `q_t·q_r`.
    pub fn with_symbols(mut self, symbols: usize) -> Result<Self> {
        check_symbols(symbols, self.config)?;
        self.symbols = symbols;
        Ok(self)
    }

    pub fn with_max_threads(mut self, threads: Option<usize>) -> Self {
        self.max_threads = threads.filter(|&t| t > 0);
        self
    }

    fn n_chunks(&self) -> u64 {
        self.trials.div_ceil(CHUNK_TRIALS)
    }
}

fn check_symbols(symbols: usize, config: AntennaConfig) -> Result<()> {
    if symbols == 0 {
        return Err(Error::InvalidParameter {
            name: "symbols",
            value: "0".into(),
            reason: "need at least one symbol per codeword",
        });
    }
    if symbols > config.n_states() {
        return Err(Error::Constraint(format!(
            "{symbols} symbols per codeword exceed the {} distinct radiation states",
            config.n_states()
        )));
    }
    Ok(())
}

/// Monte Carlo outage probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    /// Blocks with sampled `C_s < rate`.
    pub outages: u64,
    pub trials: u64,
    pub seed: u64,
    pub p_hat: f64,
    /// `√(p̂(1−p̂)/trials)`.
    pub std_err: f64,
}

impl OutageEstimate {
    fn from_count(outages: u64, trials: u64, seed: u64) -> Self {
        let p_hat = outages as f64 / trials as f64;
        Self {
            outages,
            trials,
            seed,
            p_hat,
            std_err: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        }
    }
}

/// Empirical ε-outage rate with a 95% distribution-free confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileEstimate {
    /// The `⌈ε·n⌉`-th order statistic, or `Infeasible` if it sits on the
    /// zero atom.
    pub rate: RateResult,
    pub epsilon: f64,
    /// 1-based rank of the reported order statistic.
    pub rank: u64,
    pub lower: f64,
    pub upper: f64,
    pub half_width: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Sample mean of per-codeword ergodic capacities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgodicEstimate {
    /// Mean of `(1/m)·Σ log₂(1+γ_M,k)`.
    pub mean: f64,
    pub std_err: f64,
    /// Mean of the eavesdropper's `(1/m)·Σ log₂(1+γ_W,k)`.
    pub eve_mean: f64,
    pub eve_std_err: f64,
    pub symbols: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ErgodicEstimate {
    /// `{C̄_M − C̄_W}⁺` from the two sample means.
    pub fn secrecy(&self) -> f64 {
        (self.mean - self.eve_mean).max(0.0)
    }
}

#[inline]
fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// Secrecy capacity realized by `spec.scheme` on one channel block.
pub fn sample_secrecy_capacity(spec: &SimulationSpec, block: &ChannelBlock) -> Result<f64> {
    if !block.matches(spec.config) {
        return Err(Error::DimensionMismatch {
            want_qt: spec.config.q_t(),
            want_qr: spec.config.q_r(),
            got_qt: block.q_t(),
            got_qr: block.q_r(),
        });
    }
    if spec.scheme == Scheme::Switching {
        check_symbols(spec.symbols, spec.config)?;
    }
    Ok(secrecy_sample(spec.scheme, spec.symbols, block))
}

fn secrecy_sample(scheme: Scheme, symbols: usize, block: &ChannelBlock) -> f64 {
    match scheme {
        Scheme::Conventional => (log2_1p(block.main(0, 0)) - log2_1p(block.eve()[0])).max(0.0),
        Scheme::PartialCsi => {
            // The transmitter only sees the main channel: pick the global
            // maximum; Eve's SNR is whatever that transmit state gives her.
            let (idx, best) = block.main_entries().iter().copied().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
            );
            let tx = idx / block.q_r();
            (log2_1p(best) - log2_1p(block.eve()[tx])).max(0.0)
        }
        Scheme::FullCsi => (0..block.q_t())
            .map(|i| {
                let row_max = block
                    .main_row(i)
                    .iter()
                    .copied()
                    .fold(f64::NEG_INFINITY, f64::max);
                log2_1p(row_max) - log2_1p(block.eve()[i])
            })
            .fold(0.0, f64::max),
        Scheme::Switching => {
            let (main, eve) = switching_means(symbols, block);
            (main - eve).max(0.0)
        }
    }
}

/// Per-codeword mean capacities when symbol `k` uses state `k` (row-major),
/// so Eve sees the eavesdropper draw of that symbol's transmit state.
fn switching_means(symbols: usize, block: &ChannelBlock) -> (f64, f64) {
    let q_r = block.q_r();
    let mut main = 0.0;
    let mut eve = 0.0;
    for (k, &g) in block.main_entries()[..symbols].iter().enumerate() {
        main += log2_1p(g);
        eve += log2_1p(block.eve()[k / q_r]);
    }
    (main / symbols as f64, eve / symbols as f64)
}

/// Runs `per_trial` over every trial, one accumulator per chunk, and returns
/// the chunk accumulators in chunk order.
fn run_chunks<A, F>(spec: &SimulationSpec, init: impl Fn() -> A + Sync, per_trial: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut A, &ChannelBlock) + Sync,
{
    let n_chunks = spec.n_chunks();
    let shards = (spec.shards as u64).clamp(1, n_chunks);
    let shard_chunks = |s: u64| (s * n_chunks / shards)..((s + 1) * n_chunks / shards);

    let run_chunk = |chunk: u64| -> A {
        let mut acc = init();
        let mut stream = ChannelStream::new(spec.seed, chunk);
        let mut block = new_block(spec.config);
        let start = chunk * CHUNK_TRIALS;
        let end = (start + CHUNK_TRIALS).min(spec.trials);
        for _ in start..end {
            fill_block(&mut stream, &spec.params, &mut block);
            per_trial(&mut acc, &block);
        }
        acc
    };

    let available = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    let workers = spec
        .max_threads
        .unwrap_or(available)
        .min(shards as usize)
        .max(1);

    if workers == 1 {
        return (0..n_chunks).map(run_chunk).collect();
    }

    let mut per_shard: Vec<(u64, Vec<A>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let run_chunk = &run_chunk;
                let shard_chunks = &shard_chunks;
                scope.spawn(move || {
                    (w..shards)
                        .step_by(workers)
                        .map(|s| (s, shard_chunks(s).map(run_chunk).collect::<Vec<_>>()))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("simulation worker panicked"))
            .collect()
    });
    per_shard.sort_by_key(|(s, _)| *s);
    per_shard
        .into_iter()
        .flat_map(|(_, chunks)| chunks)
        .collect()
}

fn validate(spec: &SimulationSpec) -> Result<()> {
    if spec.scheme == Scheme::Switching {
        check_symbols(spec.symbols, spec.config)?;
    }
    Ok(())
}

/// Outage probability `P(C_s < rate)` by counting blocks.
pub fn estimate_outage(spec: &SimulationSpec, rate: f64) -> Result<OutageEstimate> {
    Ok(estimate_outage_curve(spec, &[rate])?[0])
}

/// [`estimate_outage`] at several rates from a single pass over the blocks.
pub fn estimate_outage_curve(spec: &SimulationSpec, rates: &[f64]) -> Result<Vec<OutageEstimate>> {
    validate(spec)?;
    if let Some(&bad) = rates.iter().find(|r| r.is_nan() || **r < 0.0) {
        return Err(domain("estimate_outage", bad, "rate >= 0"));
    }
    let (scheme, symbols) = (spec.scheme, spec.symbols);
    let chunks = run_chunks(
        spec,
        || vec![0u64; rates.len()],
        |counts, block| {
            let c = secrecy_sample(scheme, symbols, block);
            for (count, &rate) in counts.iter_mut().zip(rates) {
                if c < rate {
                    *count += 1;
                }
            }
        },
    );
    Ok((0..rates.len())
        .map(|k| {
            let outages = chunks.iter().map(|c| c[k]).sum();
            OutageEstimate::from_count(outages, spec.trials, spec.seed)
        })
        .collect())
}

/// All per-block secrecy capacity samples, in global trial order.
pub fn secrecy_samples(spec: &SimulationSpec) -> Result<Vec<f64>> {
    validate(spec)?;
    let (scheme, symbols) = (spec.scheme, spec.symbols);
    let chunks = run_chunks(
        spec,
        || Vec::with_capacity(CHUNK_TRIALS as usize),
        |buf: &mut Vec<f64>, block| buf.push(secrecy_sample(scheme, symbols, block)),
    );
    Ok(chunks.concat())
}

/// Empirical ε-outage secrecy rate: the `⌈ε·trials⌉`-th smallest sample.
///
/// Requires `trials ≥ 10/ε`.
pub fn estimate_eps_quantile(spec: &SimulationSpec, epsilon: f64) -> Result<QuantileEstimate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(domain("estimate_eps_quantile", epsilon, "0 < epsilon < 1"));
    }
    let required = (10.0 / epsilon).ceil() as u64;
    if spec.trials < required {
        return Err(Error::Resolution {
            trials: spec.trials,
            epsilon,
            required,
        });
    }
    let mut samples = secrecy_samples(spec)?;
    let mut q = quantile_of_samples(&mut samples, epsilon)?;
    q.seed = spec.seed;
    Ok(q)
}

/// `⌈x⌉`, treating values within rounding noise of an integer as that integer.
fn ceil_rank(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// ε-quantile of an arbitrary sample set (sorted in place).
///
/// The 95% interval uses the normal approximation to the binomial count of
/// samples below the true quantile: ranks `⌊nε − z·√(nε(1−ε))⌋` and
/// `⌈nε + z·√(nε(1−ε))⌉`, clamped to `[1, n]`.
pub fn quantile_of_samples(samples: &mut [f64], epsilon: f64) -> Result<QuantileEstimate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(domain("quantile_of_samples", epsilon, "0 < epsilon < 1"));
    }
    if samples.is_empty() {
        return Err(Error::Resolution {
            trials: 0,
            epsilon,
            required: 1,
        });
    }
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as u64;
    let nf = n as f64;
    let clamp_rank = |r: f64| (r as u64).clamp(1, n);

    let rank = clamp_rank(ceil_rank(epsilon * nf));
    let spread = Z95 * (nf * epsilon * (1.0 - epsilon)).sqrt();
    let lo_rank = clamp_rank((epsilon * nf - spread).floor());
    let hi_rank = clamp_rank((epsilon * nf + spread).ceil());

    let at = |r: u64| samples[(r - 1) as usize];
    let value = at(rank);
    let (lower, upper) = (at(lo_rank), at(hi_rank));
    Ok(QuantileEstimate {
        rate: if value > 0.0 {
            RateResult::Achievable(value)
        } else {
            RateResult::Infeasible
        },
        epsilon,
        rank,
        lower,
        upper,
        half_width: 0.5 * (upper - lower),
        trials: n,
        seed: 0,
    })
}

/// Ergodic capacity by direct averaging, with `symbols` fresh state draws per
/// codeword. Only main and eavesdropper draws of the first `symbols` states
/// are used.
pub fn estimate_ergodic(spec: &SimulationSpec, symbols: usize) -> Result<ErgodicEstimate> {
    check_symbols(symbols, spec.config)?;
    // [sum_main, sumsq_main, sum_eve, sumsq_eve]
    let chunks = run_chunks(
        spec,
        || [0.0f64; 4],
        |acc, block| {
            let (m, e) = switching_means(symbols, block);
            acc[0] += m;
            acc[1] += m * m;
            acc[2] += e;
            acc[3] += e * e;
        },
    );
    let mut tot = [0.0f64; 4];
    for c in &chunks {
        for (t, v) in tot.iter_mut().zip(c) {
            *t += v;
        }
    }
    let n = spec.trials as f64;
    let stats = |sum: f64, sumsq: f64| {
        let mean = sum / n;
        let var = if spec.trials > 1 {
            ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        (mean, (var / n).sqrt())
    };
    let (mean, std_err) = stats(tot[0], tot[1]);
    let (eve_mean, eve_std_err) = stats(tot[2], tot[3]);
    Ok(ErgodicEstimate {
        mean,
        std_err,
        eve_mean,
        eve_std_err,
        symbols,
        trials: spec.trials,
        seed: spec.seed,
    })
}
