//! Complete Fermi-Dirac integrals
//!
//! F_j(η) = 1/Γ(j+1) ∫₀^∞ t^j / (e^{t-η} + 1) dt = -Li_{j+1}(-e^η)
//!
//! evaluated by the alternating fugacity series for z = e^η ≤ 0.9, adaptive
//! quadrature for intermediate η, and the Sommerfeld expansion for η > 30
//! (where the neglected terms are O(e^{-η}) relative to the result).

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numeric::quadrature::{integrate, QuadOptions};
use crate::numeric::roots::{expand_bracket_increasing, solve_bracketed, RootOptions};
use crate::numeric::{fermi_occupation, softplus};

/// Largest supported order j.
pub const MAX_ORDER: f64 = 10.0;

/// Above this η the Sommerfeld expansion is used.
pub const SOMMERFELD_THRESHOLD: f64 = 30.0;

/// Fugacity below which the alternating series is used.
const SERIES_MAX_FUGACITY: f64 = 0.9;

fn check_order(op: &'static str, order: f64) -> Result<()> {
    if !(order.is_finite() && (0.0..=MAX_ORDER).contains(&order)) {
        return Err(Error::domain(op, format!("order j = {order} outside [0, {MAX_ORDER}]")));
    }
    Ok(())
}

/// F_j(η), relative accuracy ≈ 1e-12 over the full real line.
pub fn fermi_dirac(order: f64, eta: f64) -> Result<f64> {
    check_order("fermi_dirac", order)?;
    if eta.is_nan() {
        return Err(Error::domain("fermi_dirac", "η is NaN"));
    }
    if eta == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if order == 0.0 {
        return Ok(softplus(eta));
    }
    if eta <= SERIES_MAX_FUGACITY.ln() {
        Ok(fermi_dirac_series(order, eta))
    } else if eta > SOMMERFELD_THRESHOLD {
        Ok(fermi_dirac_sommerfeld(order, eta))
    } else {
        fermi_dirac_quadrature(order, eta)
    }
}

/// -Li_s(-z) for z > 0, i.e. F_{s-1}(ln z).
pub fn neg_polylog_neg(s: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("neg_polylog_neg", format!("argument z = {z} must be positive")));
    }
    fermi_dirac(s - 1.0, z.ln())
}

/// Σ_{k≥1} (-1)^{k+1} z^k / k^{j+1}; converges for z ≤ 1, used for z ≤ 0.9.
pub fn fermi_dirac_series(order: f64, eta: f64) -> f64 {
    let z = eta.exp();
    let s = order + 1.0;
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..10_000u32 {
        zk *= z;
        let term = zk / (k as f64).powf(s);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// 2(1 - 2^{1-2k}) ζ(2k), the Sommerfeld coefficients, for k ≥ 1.
fn sommerfeld_coefficient(k: u32) -> f64 {
    let zeta = match k {
        1 => PI.powi(2) / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        _ => {
            let p = 2.0 * k as f64;
            (1..=64).map(|n| (n as f64).powf(-p)).sum::<f64>()
        }
    };
    2.0 * (1.0 - 2f64.powi(1 - 2 * k as i32)) * zeta
}

/// Sommerfeld asymptotic series, accurate to O(e^{-η}) for large positive η.
pub fn fermi_dirac_sommerfeld(order: f64, eta: f64) -> f64 {
    let lead = eta.powf(order + 1.0) / gamma(order + 2.0);
    let mut bracket = 1.0;
    let mut falling = 1.0;
    let mut last_term = f64::INFINITY;
    for k in 1..=20u32 {
        let i0 = 2 * (k - 1);
        falling *= (order + 1.0 - i0 as f64) * (order - i0 as f64);
        if falling == 0.0 {
            break;
        }
        let term = sommerfeld_coefficient(k) * falling / eta.powi(2 * k as i32);
        if term.abs() >= last_term.abs() {
            // asymptotic series has started to diverge
            break;
        }
        bracket += term;
        last_term = term;
        if term.abs() < 1e-17 * bracket.abs() {
            break;
        }
    }
    lead * bracket
}

/// Direct adaptive quadrature of the defining integral with t = u².
pub fn fermi_dirac_quadrature(order: f64, eta: f64) -> Result<f64> {
    check_order("fermi_dirac_quadrature", order)?;
    let upper = (eta.max(0.0) + 45.0 + 5.0 * order).sqrt();
    let breaks: Vec<f64> = if eta > 0.0 { vec![eta.sqrt()] } else { Vec::new() };
    let power = 2.0 * order + 1.0;
    let est = integrate(
        |u| 2.0 * u.powf(power) * fermi_occupation(u * u - eta),
        0.0,
        upper,
        &breaks,
        QuadOptions::relative(1e-13).with_abs_tol(1e-300),
    )?;
    Ok(est.value / gamma(order + 1.0))
}

/// Solve F_j(η) = value for η (value > 0).
pub fn inverse_fermi_dirac(order: f64, value: f64) -> Result<f64> {
    check_order("inverse_fermi_dirac", order)?;
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::domain("inverse_fermi_dirac", format!("value {value} must be positive")));
    }
    let guess = if value < 0.5 {
        value.ln()
    } else {
        (value * gamma(order + 2.0)).powf(1.0 / (order + 1.0))
    };
    let target = value.ln();
    let g = |eta: f64| fermi_dirac(order, eta).map(|f| f.ln() - target);
    let (lo, hi) = expand_bracket_increasing(g, guess - 1.0, guess + 1.0, 80)?;
    let root = solve_bracketed(
        g,
        lo,
        hi,
        RootOptions {
            x_tol: 1e-15,
            f_tol: 1e-14,
            max_iter: 300,
        },
    )?;
    Ok(root.x)
}
