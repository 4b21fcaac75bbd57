//! Safeguarded scalar root finding: bisection refined by secant steps.

use crate::error::{Error, Result};

/// Stopping rule for [`find_root`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-15, rel: 1e-14, max_iter: 400 }
    }
}

/// Finds a root of `f` in `[lo, hi]`, which must bracket a sign change.
///
/// Each iteration tries a secant step from the bracket ends and falls back to
/// bisection whenever the secant point leaves the middle of the bracket or the
/// bracket fails to halve.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (mut fa, mut fb) = (f(a), f(b));
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::RootFinding(format!("non-finite value at bracket end ({a}, {b})")));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!("[{a}, {b}] does not bracket a root")));
    }
    let mut last_width = b - a;
    for _ in 0..tol.max_iter {
        let width = b - a;
        let scale = a.abs().max(b.abs());
        if width <= tol.abs + tol.rel * scale {
            break;
        }
        let mut x = b - fb * (b - a) / (fb - fa);
        let margin = 0.05 * width;
        if !x.is_finite() || x <= a + margin || x >= b - margin || width > 0.5 * last_width {
            x = 0.5 * (a + b);
        }
        last_width = width;
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::RootFinding(format!("non-finite value at x = {x}")));
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

/// Splits `[lo, hi]` into `n` equal cells and returns every cell whose end
/// values differ in sign.
pub fn scan_brackets<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * i as f64 };
        let f1 = f(x1);
        if f0.is_finite() && f1.is_finite() && (f0 == 0.0 || (f1 != 0.0 && f0.signum() != f1.signum())) {
            out.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}
