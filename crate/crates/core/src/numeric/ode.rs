//! Dormand-Prince 5(4) embedded Runge-Kutta integrator with step-size control.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step as a fraction of the integration span.
    pub first_step_fraction: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-6,
            atol: 1e-9,
            first_step_fraction: 1e-3,
            max_steps: 100_000,
        }
    }
}

/// Accepted points of an integration, starting with the initial condition.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub rejected: usize,
    pub evaluations: usize,
}

/// Failure mid-integration; carries the solution computed so far.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeFailure<const N: usize> {
    pub error: Error,
    pub partial: OdeSolution<N>,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

// fifth-order solution weights
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// fifth minus fourth order
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrate `dy/dt = rhs(t, y)` from `t0` to `t1`.
pub fn integrate<const N: usize, F>(
    mut rhs: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: OdeOptions,
) -> std::result::Result<OdeSolution<N>, OdeFailure<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let mut sol = OdeSolution {
        t: vec![t0],
        y: vec![y0],
        rejected: 0,
        evaluations: 0,
    };
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(sol);
    }
    if !(span > 0.0) {
        return Err(OdeFailure {
            error: Error::domain("ode integrate", format!("t1 = {t1} before t0 = {t0}")),
            partial: sol,
        });
    }

    let mut t = t0;
    let mut y = y0;
    let mut h = span * opts.first_step_fraction;
    let mut k1 = match rhs(t, &y) {
        Ok(k) => k,
        Err(error) => return Err(OdeFailure { error, partial: sol }),
    };
    sol.evaluations += 1;

    let mut steps = 0;
    while t < t1 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(OdeFailure {
                error: Error::no_convergence("ode integrate", format!("exceeded {} steps at t = {t:e}", opts.max_steps)),
                partial: sol,
            });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }

        let stages = (|| -> Result<([f64; N], [f64; N])> {
            let k2 = rhs(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]))?;
            let k3 = rhs(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = rhs(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
            let k5 = rhs(
                t + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            )?;
            let k6 = rhs(
                t + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            )?;
            let y_new = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = rhs(t + h, &y_new)?;
            let mut err = [0.0; N];
            for i in 0..N {
                err[i] = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            }
            Ok((y_new, err))
        })();
        sol.evaluations += 6;
        let (y_new, err) = match stages {
            Ok(v) => v,
            Err(error) => return Err(OdeFailure { error, partial: sol }),
        };

        let mut norm = 0.0;
        for i in 0..N {
            let scale = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            norm += (err[i] / scale).powi(2);
        }
        let norm = (norm / N as f64).sqrt();

        if norm <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            sol.t.push(t);
            sol.y.push(y);
            if t < t1 {
                k1 = match rhs(t, &y) {
                    Ok(k) => k,
                    Err(error) => return Err(OdeFailure { error, partial: sol }),
                };
                sol.evaluations += 1;
            }
            let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
        } else {
            sol.rejected += 1;
            h *= (0.9 * norm.powf(-0.2)).clamp(0.1, 1.0);
            if h <= f64::EPSILON * t.abs().max(span) {
                return Err(OdeFailure {
                    error: Error::no_convergence("ode integrate", format!("step size underflow at t = {t:e}")),
                    partial: sol,
                });
            }
        }
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let sol = integrate(|_, y: &[f64; 1]| Ok([-y[0]]), 0.0, [1.0], 5.0, OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            ..OdeOptions::default()
        })
        .unwrap();
        let y_end = sol.y.last().unwrap()[0];
        assert!((y_end - (-5.0f64).exp()).abs() < 1e-9);
        assert_eq!(*sol.t.last().unwrap(), 5.0);
    }

    #[test]
    fn harmonic_oscillator_conserves_energy() {
        let sol = integrate(
            |_, y: &[f64; 2]| Ok([y[1], -y[0]]),
            0.0,
            [1.0, 0.0],
            20.0,
            OdeOptions { rtol: 1e-10, atol: 1e-12, ..OdeOptions::default() },
        )
        .unwrap();
        let [x, v] = *sol.y.last().unwrap();
        assert!((x - 20f64.cos()).abs() < 1e-8);
        assert!((x * x + v * v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn constant_rhs_is_exact() {
        let sol = integrate(|_, _: &[f64; 1]| Ok([3.0]), 0.0, [0.0], 0.05, OdeOptions::default())
            .unwrap();
        assert!((sol.y.last().unwrap()[0] - 0.15).abs() < 1e-15);
    }

    #[test]
    fn failure_returns_partial_trajectory() {
        let fail = integrate(
            |t, y: &[f64; 1]| {
                if t > 0.5 {
                    Err(Error::domain("rhs", "past 0.5"))
                } else {
                    Ok([y[0]])
                }
            },
            0.0,
            [1.0],
            1.0,
            OdeOptions::default(),
        )
        .unwrap_err();
        assert!(fail.partial.t.len() > 1);
        assert!(fail.partial.t.iter().all(|&t| t <= 0.5 + 1e-12));
    }
}
