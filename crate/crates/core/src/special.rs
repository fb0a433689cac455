//! Scalar special functions behind the closed-form capacity expressions.
//!
//! * [`lambert_w0`]: principal branch of the Lambert W function on `[0, ∞)`.
//! * [`exp_integral_e1`]: exponential integral `E₁(x) = ∫ₓ^∞ e^(−t)/t dt`.
//! * [`expx_e1`]: the scaled product `e^x·E₁(x)`, evaluated without forming
//!   either factor when that would overflow.
//!
//! `E₁` uses its power series up to `x = 1` and a modified Lentz continued
//! fraction above.

use std::f64::consts::E;

use crate::error::{domain, Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_ITER: usize = 500;

/// A finite, strictly positive real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter {
                name: "value",
                value: value.to_string(),
                reason: "must be finite and > 0",
            })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<PositiveReal> for f64 {
    fn from(p: PositiveReal) -> f64 {
        p.0
    }
}

/// Principal branch `W₀(x)` for `x ≥ 0`: the `w ≥ 0` with `w·e^w = x`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain("lambert_w0", x, "finite x >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x > E {
        return lambert_w0_from_ln(x.ln());
    }

    // Halley on f(w) = w e^w - x, starting from w = x.
    let mut w = x;
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

/// `W₀(e^L)` given `L = ln x`, usable when `x` itself would overflow.
///
/// For `L > 1` this runs Halley's method on the logarithmic form
/// `w + ln w = L` from the asymptotic guess `L − ln L`.
pub fn lambert_w0_from_ln(ln_x: f64) -> Result<f64> {
    if ln_x.is_nan() || ln_x == f64::INFINITY {
        return Err(domain("lambert_w0_from_ln", ln_x, "finite ln x"));
    }
    if ln_x <= 1.0 {
        return lambert_w0(ln_x.exp());
    }
    let mut w = ln_x - ln_x.ln();
    for _ in 0..MAX_ITER {
        let g = w + w.ln() - ln_x;
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let step = g / (d1 - g * d2 / (2.0 * d1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

/// Exponential integral `E₁(x)` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_positive("exp_integral_e1", x)?;
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok(expx_e1_continued_fraction(x) * (-x).exp())
    }
}

/// Scaled exponential integral `e^x·E₁(x)` for `x > 0`.
///
/// Lies strictly between `1/(x+1)` and `1/x`.
pub fn expx_e1(x: f64) -> Result<f64> {
    check_positive("expx_e1", x)?;
    if x <= 1.0 {
        Ok(x.exp() * e1_series(x))
    } else {
        Ok(expx_e1_continued_fraction(x))
    }
}

fn check_positive(func: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(func, x, "finite x > 0"))
    }
}

/// `E₁(x) = −γ − ln x − Σ_{k≥1} (−x)^k / (k·k!)`, for `0 < x ≤ 1`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0; // (-x)^k / k!
    for k in 1..MAX_ITER {
        term *= -x / k as f64;
        let contrib = term / k as f64;
        sum += contrib;
        if contrib.abs() < f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Modified Lentz evaluation of
/// `e^x·E₁(x) = 1/(x+1− 1²/(x+3− 2²/(x+5− …)))`, for `x > 1`.
fn expx_e1_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    h
}
