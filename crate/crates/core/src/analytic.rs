//! Closed-form secrecy rates and outage probabilities.
//!
//! All rates are in bits per channel use. Outage is `P(C_s < R_s)`, and the
//! ε-outage capacity is the rate whose outage equals ε. When even `R_s = 0`
//! has outage at or above ε, no such rate exists and the result is
//! [`RateResult::Infeasible`].

use std::f64::consts::LN_2;

use crate::channel::{alternating_binomial_sum, check_alternating_form, dd_powers, ChannelParams};
use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::root::{expand_bracket, find_root};
use crate::special::{expx_e1, lambert_w0_from_ln};

/// Upper end of the rate search, in bits per channel use.
pub const MAX_RATE_BITS: f64 = 64.0;

/// Abscissa tolerance used when root-solving for ε-outage rates.
pub const RATE_TOLERANCE: f64 = 1e-11;

/// An ε-outage or ergodic secrecy rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateResult {
    /// Achievable rate in bits per channel use (finite, `>= 0`).
    Achievable(f64),
    /// No non-negative rate meets the outage constraint.
    Infeasible,
}

impl RateResult {
    pub fn rate(&self) -> Option<f64> {
        match *self {
            RateResult::Achievable(r) => Some(r),
            RateResult::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, RateResult::Achievable(_))
    }

    /// Rate with infeasibility read as zero throughput.
    pub fn rate_or_zero(&self) -> f64 {
        self.rate().unwrap_or(0.0)
    }
}

/// Arguments of an outage-probability evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery {
    pub rate: f64,
    pub params: ChannelParams,
    /// `N = Q_T·Q_R`; 1 for the conventional scheme.
    pub n_states: usize,
}

impl OutageQuery {
    pub fn new(rate: f64, params: ChannelParams, n_states: usize) -> Result<Self> {
        if rate.is_nan() || rate < 0.0 {
            return Err(domain("OutageQuery", rate, "rate >= 0"));
        }
        if n_states == 0 {
            return Err(domain("OutageQuery", 0.0, "n_states >= 1"));
        }
        Ok(Self {
            rate,
            params,
            n_states,
        })
    }
}

/// `{log₂(1+γ_M) − log₂(1+γ_W)}⁺` for fixed SNRs.
pub fn awgn_secrecy_capacity(gamma_m: f64, gamma_w: f64) -> f64 {
    ((gamma_m.ln_1p() - gamma_w.ln_1p()) / LN_2).max(0.0)
}

/// `2^R − 1`, accurate for small `R`.
fn pow2_minus_one(rate: f64) -> f64 {
    (rate * LN_2).exp_m1()
}

/// `P(γ_M > γ_W) = γ̄_M / (γ̄_M + γ̄_W)`.
pub fn conventional_prob_exceed(params: &ChannelParams) -> f64 {
    let gm = params.gamma_bar_m();
    gm / (gm + params.gamma_bar_w())
}

/// Outage probability of the single-antenna scheme.
pub fn conventional_outage(q: &OutageQuery) -> Result<f64> {
    if q.n_states != 1 {
        return Err(Error::InvalidParameter {
            name: "n_states",
            value: q.n_states.to_string(),
            reason: "conventional scheme has a single state",
        });
    }
    let gm = q.params.gamma_bar_m();
    let gw = q.params.gamma_bar_w();
    let ym1 = pow2_minus_one(q.rate);
    let y = ym1 + 1.0;

    let p_exceed = conventional_prob_exceed(&q.params);
    let survive = if y.is_finite() {
        (gm + gw) / (gm + y * gw) * (-ym1 / gm).exp()
    } else {
        0.0
    };
    let p_cond = 1.0 - survive;
    Ok((p_cond * p_exceed + (1.0 - p_exceed)).clamp(0.0, 1.0))
}

/// Outage at rate zero for the conventional scheme, `γ̄_W/(γ̄_M+γ̄_W)`.
pub fn conventional_outage_floor(params: &ChannelParams) -> f64 {
    let gw = params.gamma_bar_w();
    gw / (params.gamma_bar_m() + gw)
}

fn check_epsilon(func: &'static str, epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(domain(func, epsilon, "0 < epsilon < 1"))
    }
}

/// ε-outage secrecy capacity of the single-antenna scheme via Lambert W.
///
/// `2^R = γ̄_M·(W₀(e^(1/γ̄_M + 1/γ̄_W) / (γ̄_W(1−ε))) − 1/γ̄_W)`. The W₀
/// argument is formed in log space so small `γ̄_W` cannot overflow it.
pub fn conventional_eps_capacity(epsilon: f64, params: &ChannelParams) -> Result<RateResult> {
    check_epsilon("conventional_eps_capacity", epsilon)?;
    if epsilon <= conventional_outage_floor(params) {
        return Ok(RateResult::Infeasible);
    }
    let gm = params.gamma_bar_m();
    let gw = params.gamma_bar_w();
    let ln_arg = 1.0 / gm + 1.0 / gw - (gw * (-epsilon).ln_1p().exp()).ln();
    let w = lambert_w0_from_ln(ln_arg)?;
    let pow2 = gm * (w - 1.0 / gw);
    Ok(RateResult::Achievable(if pow2 > 1.0 {
        pow2.log2()
    } else {
        0.0
    }))
}

/// ε-outage secrecy capacity of the single-antenna scheme by root-solving
/// `(1−ε)(1 + (γ̄_W/γ̄_M)·2^R) = e^(−(2^R−1)/γ̄_M)` directly.
///
/// Independent of the Lambert-W route; the two must agree.
pub fn conventional_eps_capacity_by_root(
    epsilon: f64,
    params: &ChannelParams,
) -> Result<RateResult> {
    check_epsilon("conventional_eps_capacity_by_root", epsilon)?;
    let gm = params.gamma_bar_m();
    let gw = params.gamma_bar_w();
    let g = |rate: f64| {
        let ym1 = pow2_minus_one(rate);
        (1.0 - epsilon) * (1.0 + gw / gm * (ym1 + 1.0)) - (-ym1 / gm).exp()
    };
    if g(0.0) >= 0.0 {
        return Ok(RateResult::Infeasible);
    }
    let bracket = expand_bracket(g, 0.0, 1.0, MAX_RATE_BITS)?;
    Ok(RateResult::Achievable(find_root(
        g,
        bracket,
        RATE_TOLERANCE,
    )?))
}

/// Ergodic capacity `E{log₂(1+γ)}` of an exponential SNR with mean `γ̄`,
/// which equals `e^(1/γ̄)·E₁(1/γ̄)/ln 2`.
pub fn ergodic_capacity(gamma_bar: f64) -> Result<f64> {
    if !(gamma_bar.is_finite() && gamma_bar > 0.0) {
        return Err(domain(
            "ergodic_capacity",
            gamma_bar,
            "finite gamma_bar > 0",
        ));
    }
    let x = gamma_bar.recip();
    if !x.is_finite() {
        // e^x E1(x) ~ 1/x once 1/γ̄ overflows.
        return Ok(gamma_bar / LN_2);
    }
    Ok(expx_e1(x)? / LN_2)
}

/// Ergodic secrecy capacity of the state-switching scheme,
/// `{C̄(γ̄_M) − C̄(γ̄_W)}⁺`.
pub fn switching_secrecy_capacity(params: &ChannelParams) -> Result<f64> {
    let cm = ergodic_capacity(params.gamma_bar_m())?;
    let cw = ergodic_capacity(params.gamma_bar_w())?;
    Ok((cm - cw).max(0.0))
}

/// `P(γ_M,max > γ_W)` for the best of `n_states` main-channel draws.
pub fn selection_prob_exceed(params: &ChannelParams, n_states: usize) -> Result<f64> {
    check_alternating_form("selection_prob_exceed", n_states)?;
    let ratio = params.gamma_bar_w() / params.gamma_bar_m();
    let n = n_states as f64;
    let sum = alternating_binomial_sum(n_states - 1, |i| {
        let k = (i + 1) as f64;
        ((Dd::prod(k, ratio) + Dd::ONE) * k).recip()
    });
    Ok((n * sum).clamp(0.0, 1.0))
}

/// `P(γ_M,max > 2^R(1+γ_W) − 1)`: probability that the selected state
/// supports rate `R` against the eavesdropper.
fn selection_survival(q: &OutageQuery) -> f64 {
    let gm = q.params.gamma_bar_m();
    let ratio = q.params.gamma_bar_w() / gm;
    let ym1 = pow2_minus_one(q.rate);
    let y = ym1 + 1.0;
    if !y.is_finite() {
        return 0.0;
    }
    let n = q.n_states as f64;
    let yr = Dd::prod(y, ratio);
    let decay = dd_powers((-ym1 / gm).exp(), q.n_states);
    let sum = alternating_binomial_sum(q.n_states - 1, |i| {
        let k = (i + 1) as f64;
        decay[i] / ((yr * k + Dd::ONE) * k)
    });
    (n * sum).clamp(0.0, 1.0)
}

/// `P(C_s < R_s | γ_M,max > γ_W)` under partial-CSI state selection.
///
/// The binomial sum over `i = 0…N−1` evaluates the joint probability
/// `P(C_s < R_s, γ_M,max > γ_W)`; the conditional divides it by
/// [`selection_prob_exceed`].
pub fn selection_conditional_outage(q: &OutageQuery) -> Result<f64> {
    let p_exceed = selection_prob_exceed(&q.params, q.n_states)?;
    if p_exceed == 0.0 {
        return Ok(1.0);
    }
    let joint = (p_exceed - selection_survival(q)).max(0.0);
    Ok((joint / p_exceed).clamp(0.0, 1.0))
}

/// Outage probability of partial-CSI state selection over `N` states.
///
/// `P_out = P(C_s<R_s | γ_max>γ_W)·P(γ_max>γ_W) + P(γ_max ≤ γ_W)`.
pub fn selection_outage(q: &OutageQuery) -> Result<f64> {
    let p_exceed = selection_prob_exceed(&q.params, q.n_states)?;
    let joint = (p_exceed - selection_survival(q)).max(0.0);
    Ok((joint + (1.0 - p_exceed)).clamp(0.0, 1.0))
}

/// ε-outage secrecy capacity of partial-CSI state selection, by bracketed
/// root solving of `selection_outage(R) = ε` over `[0, 64]` bits.
pub fn selection_eps_capacity(
    epsilon: f64,
    params: &ChannelParams,
    n_states: usize,
) -> Result<RateResult> {
    check_epsilon("selection_eps_capacity", epsilon)?;
    check_alternating_form("selection_eps_capacity", n_states)?;
    let outage =
        |rate: f64| OutageQuery::new(rate, *params, n_states).and_then(|q| selection_outage(&q));
    if epsilon <= outage(0.0)? {
        return Ok(RateResult::Infeasible);
    }
    let g = |rate: f64| outage(rate).map_or(f64::NAN, |p| p - epsilon);
    let bracket = expand_bracket(g, 0.0, 1.0, MAX_RATE_BITS)?;
    Ok(RateResult::Achievable(find_root(
        g,
        bracket,
        RATE_TOLERANCE,
    )?))
}
