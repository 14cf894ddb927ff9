//! Bracketed root finding for monotone scalar equations.
//!
//! Bisection safeguards a secant step: the secant (regula falsi) point is
//! taken when it lands inside the current bracket and the bracket has been
//! shrinking at least geometrically, otherwise the step bisects.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Stop when the bracket width is below `x_tol * max(1, |x|)`.
    pub x_tol: f64,
    /// Stop when `|f(x)| <= f_tol`.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-14,
            f_tol: 0.0,
            max_iter: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Find a root of `f` in `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
pub fn solve_bracketed<F>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(Root { x: a, residual: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, residual: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::no_convergence(
            "bracketed root search",
            format!("[{a:e}, {b:e}] does not bracket a root: f = ({fa:e}, {fb:e})"),
        ));
    }

    let mut width_before = b - a;
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    for iter in 1..=opts.max_iter {
        let secant = b - fb * (b - a) / (fb - fa);
        let mid = 0.5 * (a + b);
        let use_secant = secant > a && secant < b && (b - a) <= 0.5 * width_before;
        let mut x = if use_secant { secant } else { mid };
        if x <= a || x >= b {
            x = mid;
        }
        width_before = b - a;

        let fx = f(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 || fx.abs() <= opts.f_tol {
            return Ok(Root { x, residual: fx, iterations: iter });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        let scale = a.abs().max(b.abs()).max(1.0);
        if b - a <= opts.x_tol * scale {
            return Ok(Root { x: best.0, residual: best.1, iterations: iter });
        }
    }
    Err(Error::no_convergence(
        "bracketed root search",
        format!(
            "{} iterations, bracket [{a:e}, {b:e}], best residual {:e}",
            opts.max_iter, best.1
        ),
    ))
}

/// Grow `[lo, hi]` geometrically (in the additive sense, doubling the step)
/// until `f` changes sign, for an increasing `f`. Returns the bracket.
pub fn expand_bracket_increasing<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    max_steps: usize,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut step = (hi - lo).abs().max(1.0);
    for _ in 0..max_steps {
        let flo = f(lo)?;
        let fhi = f(hi)?;
        if flo <= 0.0 && fhi >= 0.0 {
            return Ok((lo, hi));
        }
        if flo > 0.0 {
            hi = lo;
            lo -= step;
        } else {
            lo = hi;
            hi += step;
        }
        step *= 2.0;
    }
    Err(Error::no_convergence(
        "bracket expansion",
        format!("no sign change found after {max_steps} expansions, last [{lo:e}, {hi:e}]"),
    ))
}
