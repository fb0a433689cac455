//! Helpers for the acceptance suite: a pass/fail tally and quadrature.

use std::fmt::Display;
use std::time::Instant;

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Display) -> Self {
        Self {
            pass,
            detail: detail.to_string(),
        }
    }
}

/// Prints one line per criterion as it completes.
#[derive(Debug, Default)]
pub struct Report {
    outcomes: Vec<(u32, bool)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `check`; a returned error counts as a failure.
    pub fn run<E: Display>(
        &mut self,
        id: u32,
        name: &str,
        check: impl FnOnce() -> Result<Outcome, E>,
    ) -> bool {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} [{id:>2}] {name}: {} ({:.1}s)",
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        self.outcomes.push((id, outcome.pass));
        outcome.pass
    }

    pub fn failed(&self) -> Vec<u32> {
        self.outcomes.iter().filter(|o| !o.1).map(|o| o.0).collect()
    }

    pub fn summary(&self) -> String {
        let failed = self.failed();
        let passed = self.outcomes.len() - failed.len();
        if failed.is_empty() {
            format!("acceptance: {passed} passed, 0 failed")
        } else {
            format!(
                "acceptance: {passed} passed, {} failed {failed:?}",
                failed.len()
            )
        }
    }
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(&f, a, fa, b, fb);
    adapt(&f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Integral over `[a, ∞)` of a function decaying on length `scale`,
/// summed over doubling panels until they stop contributing.
pub fn integrate_to_inf(f: impl Fn(f64) -> f64, a: f64, scale: f64, tol: f64) -> f64 {
    let mut total = 0.0;
    let (mut lo, mut width) = (a, scale);
    for _ in 0..200 {
        let part = integrate(&f, lo, lo + width, tol);
        total += part;
        if part.abs() <= tol * 1e-3 && lo > a + 40.0 * scale {
            break;
        }
        lo += width;
        width *= 2.0;
    }
    total
}

/// First crossing of `level` by a piecewise-linear curve, interpolated.
pub fn crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    pts.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        (y0 < level && y1 >= level).then(|| x0 + (level - y0) / (y1 - y0) * (x1 - x0))
    })
}
