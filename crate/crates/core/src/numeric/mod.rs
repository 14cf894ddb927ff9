//! Numerical building blocks: adaptive quadrature, bracketed root finding,
//! an embedded Runge-Kutta integrator, straight-line least squares and
//! monotone interpolation.

pub mod interp;
pub mod linfit;
pub mod ode;
pub mod quadrature;
pub mod roots;

/// ln(1 + e^x) without overflow or loss of precision for large |x|.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Fermi-Dirac occupation 1/(e^x + 1), stable for either sign of x.
#[inline]
pub fn fermi_occupation(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// `count` points from `min` to `max` inclusive, linearly or logarithmically spaced.
pub fn spaced_grid(min: f64, max: f64, count: usize, log: bool) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        return max;
                    }
                    let frac = i as f64 / last;
                    if log {
                        (min.ln() + frac * (max.ln() - min.ln())).exp()
                    } else {
                        min + frac * (max - min)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softplus_matches_naive_form_in_safe_range() {
        for &x in &[-2.0, -1e-3, 0.0, 0.5, 3.0, 20.0] {
            let naive = (1.0 + f64::exp(x)).ln();
            assert!((softplus(x) / naive - 1.0).abs() <= 1e-14);
        }
        assert!((softplus(-30.0) / f64::exp(-30.0) - 1.0).abs() < 1e-12);
        assert_eq!(softplus(800.0), 800.0);
        assert!(softplus(-800.0) >= 0.0);
    }

    #[test]
    fn occupation_symmetry() {
        for &x in &[0.0, 0.3, 5.0, 50.0, 700.0] {
            let s = fermi_occupation(x) + fermi_occupation(-x);
            assert!((s - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = spaced_grid(0.15, 3.0, 40, true);
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], 0.15);
        assert_eq!(g[39], 3.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let lin = spaced_grid(0.0, 10.0, 11, false);
        assert!((lin[3] - 3.0).abs() < 1e-15);
    }
}
