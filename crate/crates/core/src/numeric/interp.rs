//! Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson slopes).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slopes: Vec<f64>,
}

/// One-sided three-point end derivative, kept sign-consistent with the end secant.
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    if h1 <= 0.0 {
        return d0;
    }
    let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        s
    }
}

impl MonotoneCubic {
    /// Build from strictly increasing abscissae. Data that is monotone stays
    /// monotone between the nodes.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::domain("monotone cubic", "need at least two (x, y) pairs"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("monotone cubic", "abscissae must be strictly increasing"));
        }
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i]))
            .collect();
        let mut slopes = vec![0.0; n];
        for i in 1..n - 1 {
            slopes[i] = if secants[i - 1] * secants[i] <= 0.0 {
                0.0
            } else {
                // derivative of the parabola through the three nodes
                let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
                (h1 * secants[i - 1] + h0 * secants[i]) / (h0 + h1)
            };
        }
        slopes[0] = end_slope(x[1] - x[0], x[2.min(n - 1)] - x[1], secants[0], secants[1.min(n - 2)]);
        slopes[n - 1] = end_slope(
            x[n - 1] - x[n - 2],
            x[n - 2] - x[n.saturating_sub(3)],
            secants[n - 2],
            secants[n.saturating_sub(3)],
        );
        for i in 0..n - 1 {
            if secants[i] == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let a = slopes[i] / secants[i];
            let b = slopes[i + 1] / secants[i];
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                slopes[i] = tau * a * secants[i];
                slopes[i + 1] = tau * b * secants[i];
            }
        }
        Ok(Self { x, y, slopes })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Interpolated value; arguments outside the nodes are clamped to the ends.
    pub fn eval(&self, at: f64) -> f64 {
        let n = self.x.len();
        if at <= self.x[0] {
            return self.y[0];
        }
        if at >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.x.partition_point(|&xi| xi <= at) - 1;
        let h = self.x[i + 1] - self.x[i];
        let s = (at - self.x[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y[i] + h10 * h * self.slopes[i] + h01 * self.y[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes_and_stays_monotone() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| if *v < 5.0 { 0.0 } else { 1.0 + v }).collect();
        let spline = MonotoneCubic::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(spline.eval(*xi), *yi);
        }
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=900 {
            let v = spline.eval(k as f64 * 0.01);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn accurate_on_smooth_data() {
        let x: Vec<f64> = (0..=40).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|v| (-v).exp()).collect();
        let spline = MonotoneCubic::new(x, y).unwrap();
        for k in 0..400 {
            let v = k as f64 * 0.01 + 0.005;
            assert!((spline.eval(v) - (-v).exp()).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_unsorted() {
        assert!(MonotoneCubic::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }
}
