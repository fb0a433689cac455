//! Test-only numerical oracles, independent of the library code paths.

#![allow(dead_code)]

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

/// `∫ₐ^∞ f` for an integrand decaying on length scale `scale`, summed over
/// panels `[a + scale·2^k, a + scale·2^(k+1)]` until they stop contributing.
pub fn integrate_to_inf(f: &dyn Fn(f64) -> f64, a: f64, scale: f64, tol: f64) -> f64 {
    let mut total = integrate(f, a, a + scale, tol);
    let mut lo = a + scale;
    let mut width = scale;
    for _ in 0..60 {
        let part = integrate(f, lo, lo + width, tol);
        total += part;
        if part.abs() < 1e-18 * total.abs().max(1e-300) && width > 50.0 * scale {
            break;
        }
        lo += width;
        width *= 2.0;
    }
    total
}

/// `γ = 10^(dB/10)`.
pub fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}
