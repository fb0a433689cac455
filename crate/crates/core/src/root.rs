//! Bracketed scalar root finding (Brent's method) for monotone outage curves.

use crate::error::{Error, Result};

/// Iteration cap for [`find_root`].
pub const MAX_ITERATIONS: usize = 200;

/// An interval `[lo, hi]` across which `f` changes sign.
///
/// An endpoint where `f` is exactly zero also counts as a sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the sign change.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidParameter {
                name: "bracket",
                value: format!("[{lo}, {hi}]"),
                reason: "lo must be < hi",
            });
        }
        if !opposite_signs(f_lo, f_hi) {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }
}

fn opposite_signs(a: f64, b: f64) -> bool {
    if a.is_nan() || b.is_nan() {
        return false;
    }
    a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0)
}

/// Finds a root of `f` inside `bracket` to absolute tolerance `tol`.
pub fn find_root(f: impl Fn(f64) -> f64, bracket: Bracket, tol: f64) -> Result<f64> {
    find_root_traced(f, bracket, tol, |_, _| {})
}

/// [`find_root`], reporting the current bracket `(lo, hi)` once per iteration.
pub fn find_root_traced(
    f: impl Fn(f64) -> f64,
    bracket: Bracket,
    tol: f64,
    mut trace: impl FnMut(f64, f64),
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol.to_string(),
            reason: "tolerance must be > 0",
        });
    }
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = bracket;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            // Root lies between a and b; restart the contrapoint there.
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        trace(b.min(c), b.max(c));
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // Secant step.
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // Inverse quadratic interpolation.
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain {
                func: "find_root",
                value: b,
                expected: "f finite inside the bracket",
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Grows `[x_lo, x_hi]` until `f` changes sign, doubling the distance of the
/// upper end from `x_lo` at each step and never passing `x_max`.
///
/// The returned bracket's lower end is the last upper end that failed.
pub fn expand_bracket(f: impl Fn(f64) -> f64, x_lo: f64, x_hi: f64, x_max: f64) -> Result<Bracket> {
    if !(x_lo < x_hi && x_hi <= x_max) {
        return Err(Error::InvalidParameter {
            name: "bracket",
            value: format!("[{x_lo}, {x_hi}] max {x_max}"),
            reason: "need x_lo < x_hi <= x_max",
        });
    }
    let mut lo = x_lo;
    let mut f_lo = f(lo);
    let mut hi = x_hi;
    loop {
        let f_hi = f(hi);
        if opposite_signs(f_lo, f_hi) {
            return Bracket::from_values(lo, hi, f_lo, f_hi);
        }
        if hi >= x_max {
            return Err(Error::BracketExhausted { x_max });
        }
        lo = hi;
        f_lo = f_hi;
        hi = (x_lo + 2.0 * (hi - x_lo)).min(x_max);
    }
}
