//! Weighted straight-line least squares, y = intercept + slope * x.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope from the residual scatter (zero for exact data).
    pub slope_stderr: f64,
    pub intercept_stderr: f64,
    /// Weighted residual variance, Σ w r² / (n - 2).
    pub residual_variance: f64,
    pub points: usize,
}

/// Fit a line through `(x, y)` with optional per-point weights (1/σ²).
///
/// Sums are taken about the weighted mean of x, so shifting every x by a
/// constant leaves the slope unchanged to rounding.
pub fn fit_line(x: &[f64], y: &[f64], weights: Option<&[f64]>) -> Result<LineFit> {
    let n = x.len();
    if y.len() != n || weights.is_some_and(|w| w.len() != n) {
        return Err(Error::Fit("x, y and weight lengths differ".into()));
    }
    if n < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {n}")));
    }
    let w = |i: usize| weights.map_or(1.0, |w| w[i]);
    if let Some(bad) = (0..n).find(|&i| !(w(i) > 0.0 && w(i).is_finite())) {
        return Err(Error::Fit(format!("weight {} at index {bad} is not positive", w(bad))));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Fit("non-finite data".into()));
    }

    let sw: f64 = (0..n).map(w).sum();
    let x_mean = (0..n).map(|i| w(i) * x[i]).sum::<f64>() / sw;
    let y_mean = (0..n).map(|i| w(i) * y[i]).sum::<f64>() / sw;
    let sxx: f64 = (0..n).map(|i| w(i) * (x[i] - x_mean).powi(2)).sum();
    if sxx <= 0.0 || sxx <= 1e-300 {
        return Err(Error::Fit("zero spread in x".into()));
    }
    let sxy: f64 = (0..n).map(|i| w(i) * (x[i] - x_mean) * (y[i] - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let ssr: f64 = (0..n)
        .map(|i| w(i) * (y[i] - intercept - slope * x[i]).powi(2))
        .sum();
    let residual_variance = ssr / (n - 2) as f64;
    let slope_stderr = (residual_variance / sxx).sqrt();
    let intercept_stderr = (residual_variance * (1.0 / sw + x_mean * x_mean / sxx)).sqrt();

    Ok(LineFit {
        slope,
        intercept,
        slope_stderr,
        intercept_stderr,
        residual_variance,
        points: n,
    })
}
