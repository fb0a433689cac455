//! Rayleigh-fading SNR model.
//!
//! Instantaneous SNRs are exponential with the channel's mean SNR. Under
//! state selection the main channel gain is the maximum of `N = Q_T·Q_R`
//! independent draws, so the order-statistic helpers live here too.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::special::PositiveReal;

/// Largest state count the alternating binomial sums are evaluated for.
pub const MAX_ALTERNATING_STATES: usize = 30;

/// Largest `Q_T·Q_R` accepted for sampling.
pub const MAX_STATES: usize = 1024;

/// Mean linear SNRs of the main (Bob) and eavesdropper (Eve) channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    gamma_bar_m: PositiveReal,
    gamma_bar_w: PositiveReal,
}

impl ChannelParams {
    pub fn new(gamma_bar_m: f64, gamma_bar_w: f64) -> Result<Self> {
        let check = |name, v: f64| {
            PositiveReal::new(v).map_err(|_| Error::InvalidParameter {
                name,
                value: v.to_string(),
                reason: "mean SNR must be finite and > 0",
            })
        };
        Ok(Self {
            gamma_bar_m: check("gamma_bar_m", gamma_bar_m)?,
            gamma_bar_w: check("gamma_bar_w", gamma_bar_w)?,
        })
    }

    #[inline]
    pub fn gamma_bar_m(&self) -> f64 {
        self.gamma_bar_m.get()
    }

    #[inline]
    pub fn gamma_bar_w(&self) -> f64 {
        self.gamma_bar_w.get()
    }
}

/// Radiation-state counts of the transmitter and receiver antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntennaConfig {
    q_t: usize,
    q_r: usize,
}

impl AntennaConfig {
    pub fn new(q_t: usize, q_r: usize) -> Result<Self> {
        if q_t == 0 || q_r == 0 {
            return Err(Error::InvalidParameter {
                name: "q_t/q_r",
                value: format!("{q_t}x{q_r}"),
                reason: "state counts must be >= 1",
            });
        }
        match q_t.checked_mul(q_r) {
            Some(n) if n <= MAX_STATES => Ok(Self { q_t, q_r }),
            _ => Err(Error::InvalidParameter {
                name: "q_t*q_r",
                value: format!("{q_t}x{q_r}"),
                reason: "state product must be <= 1024",
            }),
        }
    }

    /// Single-antenna configuration.
    pub fn single() -> Self {
        Self { q_t: 1, q_r: 1 }
    }

    #[inline]
    pub fn q_t(&self) -> usize {
        self.q_t
    }

    #[inline]
    pub fn q_r(&self) -> usize {
        self.q_r
    }

    #[inline]
    pub fn n_states(&self) -> usize {
        self.q_t * self.q_r
    }
}

/// One codeword's worth of channel draws: `main[i][j]` for transmit state `i`
/// and receive state `j`, and `eve[i]` for transmit state `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelBlock {
    q_t: usize,
    q_r: usize,
    main: Vec<f64>,
    eve: Vec<f64>,
}

impl ChannelBlock {
    /// Builds a block from row-major main draws (`q_t` rows of `q_r`).
    pub fn new(main: Vec<Vec<f64>>, eve: Vec<f64>) -> Result<Self> {
        let q_t = main.len();
        let q_r = main.first().map_or(0, Vec::len);
        if q_t == 0 || q_r == 0 || main.iter().any(|row| row.len() != q_r) || eve.len() != q_t {
            return Err(Error::DimensionMismatch {
                want_qt: eve.len(),
                want_qr: q_r,
                got_qt: q_t,
                got_qr: main.iter().map(Vec::len).max().unwrap_or(0),
            });
        }
        let main: Vec<f64> = main.into_iter().flatten().collect();
        if main
            .iter()
            .chain(eve.iter())
            .any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::InvalidParameter {
                name: "block",
                value: "non-finite or negative SNR".into(),
                reason: "entries must be finite and >= 0",
            });
        }
        Ok(Self {
            q_t,
            q_r,
            main,
            eve,
        })
    }

    fn zeroed(config: AntennaConfig) -> Self {
        Self {
            q_t: config.q_t,
            q_r: config.q_r,
            main: vec![0.0; config.n_states()],
            eve: vec![0.0; config.q_t],
        }
    }

    #[inline]
    pub fn q_t(&self) -> usize {
        self.q_t
    }

    #[inline]
    pub fn q_r(&self) -> usize {
        self.q_r
    }

    #[inline]
    pub fn main(&self, i: usize, j: usize) -> f64 {
        self.main[i * self.q_r + j]
    }

    /// Main-channel draws for transmit state `i`.
    #[inline]
    pub fn main_row(&self, i: usize) -> &[f64] {
        &self.main[i * self.q_r..(i + 1) * self.q_r]
    }

    /// All main-channel draws, row-major.
    #[inline]
    pub fn main_entries(&self) -> &[f64] {
        &self.main
    }

    #[inline]
    pub fn eve(&self) -> &[f64] {
        &self.eve
    }

    pub fn matches(&self, config: AntennaConfig) -> bool {
        self.q_t == config.q_t && self.q_r == config.q_r
    }
}

/// Seeded counter-based uniform stream (ChaCha8).
///
/// A stream is identified by `(seed, stream_id)`; distinct ids give
/// independent substreams. Uniforms are `(next_u64 >> 11)·2⁻⁵³ ∈ [0, 1)` and
/// exponentials use the inverse CDF `−γ̄·ln(1 − u)`. Golden tests pin the
/// output, so changing any of this is a breaking change.
#[derive(Debug, Clone)]
pub struct ChannelStream {
    rng: ChaCha8Rng,
}

impl ChannelStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { rng }
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn exponential(&mut self, mean: f64) -> f64 {
        -mean * (-self.uniform()).ln_1p()
    }
}

/// Exponential density `(1/γ̄)·e^(−x/γ̄)`.
pub fn exp_pdf(x: f64, gamma_bar: PositiveReal) -> Result<f64> {
    check_nonneg("exp_pdf", x)?;
    let g = gamma_bar.get();
    Ok((-x / g).exp() / g)
}

/// Exponential CDF `1 − e^(−x/γ̄)`; `x = +∞` gives 1.
pub fn exp_cdf(x: f64, gamma_bar: PositiveReal) -> Result<f64> {
    check_nonneg("exp_cdf", x)?;
    Ok(-(-x / gamma_bar.get()).exp_m1())
}

/// CDF of the maximum of `n` i.i.d. exponentials: `(1 − e^(−x/γ̄))^n`.
pub fn max_cdf(x: f64, gamma_bar: PositiveReal, n: usize) -> Result<f64> {
    check_nonneg("max_cdf", x)?;
    check_count("max_cdf", n)?;
    Ok(pow_usize(exp_cdf(x, gamma_bar)?, n))
}

/// Density of the maximum of `n` exponentials in its stable product form
/// `n·(1 − e^(−x/γ̄))^(n−1)·e^(−x/γ̄)/γ̄`, valid for any `n`.
pub fn max_pdf(x: f64, gamma_bar: PositiveReal, n: usize) -> Result<f64> {
    check_nonneg("max_pdf", x)?;
    check_count("max_pdf", n)?;
    let g = gamma_bar.get();
    let tail = (-x / g).exp();
    Ok(n as f64 * pow_usize(-(-x / g).exp_m1(), n - 1) * tail / g)
}

/// Density of the maximum of `n` exponentials as the alternating binomial sum
/// `n·Σᵢ C(n−1,i)·(−1)^i/γ̄·e^(−x(i+1)/γ̄)`, `i = 0…n−1`.
///
/// The sum cancels catastrophically as `n` grows, so only `n ≤ 30` is
/// accepted; use [`max_pdf`] beyond that.
pub fn max_pdf_paper(x: f64, gamma_bar: PositiveReal, n: usize) -> Result<f64> {
    check_nonneg("max_pdf_paper", x)?;
    check_alternating_form("max_pdf_paper", n)?;
    let g = gamma_bar.get();
    // e^(−x(i+1)/γ̄) = q^(i+1), with q rounded once.
    let powers = dd_powers((-x / g).exp(), n);
    let sum = alternating_binomial_sum(n - 1, |i| powers[i]);
    Ok((n as f64 * sum / g).max(0.0))
}

/// Draws one block: `q_t·q_r` main SNRs in row-major order, then `q_t`
/// eavesdropper SNRs.
pub fn sample_block(
    stream: &mut ChannelStream,
    params: &ChannelParams,
    config: AntennaConfig,
) -> ChannelBlock {
    let mut block = ChannelBlock::zeroed(config);
    fill_block(stream, params, &mut block);
    block
}

/// [`sample_block`] into an existing block of the right shape.
pub(crate) fn fill_block(
    stream: &mut ChannelStream,
    params: &ChannelParams,
    block: &mut ChannelBlock,
) {
    let gm = params.gamma_bar_m();
    let gw = params.gamma_bar_w();
    for v in block.main.iter_mut() {
        *v = stream.exponential(gm);
    }
    for v in block.eve.iter_mut() {
        *v = stream.exponential(gw);
    }
}

pub(crate) fn new_block(config: AntennaConfig) -> ChannelBlock {
    ChannelBlock::zeroed(config)
}

/// `Σ_{i=0}^{m} C(m,i)·(−1)^i·term(i)`, accumulated in double-double.
///
/// Binomial coefficients are exact in `f64` for `m < 57`; with terms supplied
/// in double-double the only rounding left is in the caller's inputs.
pub(crate) fn alternating_binomial_sum(m: usize, term: impl Fn(usize) -> Dd) -> f64 {
    let mut sum = Dd::ZERO;
    let mut binom = 1.0f64;
    for i in 0..=m {
        let t = term(i) * binom;
        sum = if i % 2 == 0 { sum + t } else { sum - t };
        binom = binom * (m - i) as f64 / (i + 1) as f64;
    }
    sum.to_f64()
}

/// `q, q², …, q^n` in double-double.
pub(crate) fn dd_powers(q: f64, n: usize) -> Vec<Dd> {
    let mut out = Vec::with_capacity(n);
    let mut acc = Dd::ONE;
    for _ in 0..n {
        acc = acc * q;
        out.push(acc);
    }
    out
}

pub(crate) fn check_alternating_form(func: &'static str, n: usize) -> Result<()> {
    check_count(func, n)?;
    if n > MAX_ALTERNATING_STATES {
        return Err(Error::Range {
            func,
            what: "n_states",
            value: n as u64,
            limit: MAX_ALTERNATING_STATES as u64,
        });
    }
    Ok(())
}

fn check_nonneg(func: &'static str, x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        Err(domain(func, x, "x >= 0"))
    } else {
        Ok(())
    }
}

fn check_count(func: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        Err(domain(func, 0.0, "n >= 1"))
    } else {
        Ok(())
    }
}

fn pow_usize(base: f64, n: usize) -> f64 {
    base.powi(i32::try_from(n).unwrap_or(i32::MAX))
}
