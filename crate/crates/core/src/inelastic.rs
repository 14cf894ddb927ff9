//! Condon-point model of light-assisted inelastic collisions.
//!
//! A pair absorbs a blue-detuned photon where the resonant dipole-dipole
//! shift Γ(ƛ/r)³ matches the detuning Δ. With a pair distribution
//! p(r) ∝ r^γ at short range, the loss rate scales as p(r)r²(dr/dΔ) ∝
//! Δ^{-(γ+6)/3}: γ = 0 for distinguishable atoms, γ = 2 for identical
//! fermions (p-wave).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::linfit::fit_line;
use crate::numeric::spaced_grid;
use crate::species::AtomSpecies;

/// Pair separation r_C = ƛ(Γ/Δ)^{1/3} (m) at which a blue detuning Δ (rad/s)
/// is resonant.
pub fn condon_radius(species: &AtomSpecies, detuning: f64) -> Result<f64> {
    if !(detuning.is_finite() && detuning > 0.0) {
        return Err(Error::domain(
            "condon_radius",
            format!("detuning {detuning} rad/s must be blue (positive)"),
        ));
    }
    Ok(species.reduced_wavelength() * (species.linewidth() / detuning).cbrt())
}

/// α = (γ + 6)/3 for a pair distribution p(r) ∝ r^γ.
pub fn loss_exponent(gamma: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::domain("loss_exponent", format!("γ = {gamma} must be ≥ 0")));
    }
    Ok((gamma + 6.0) / 3.0)
}

/// (Δ, A·Δ^{-α}) for each detuning; Δ may be in any positive unit, the
/// amplitude absorbs it.
pub fn loss_curve(deltas: &[f64], gamma: f64, amplitude: f64) -> Result<Vec<(f64, f64)>> {
    let alpha = loss_exponent(gamma)?;
    deltas
        .iter()
        .map(|&d| {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::domain("loss_curve", format!("detuning {d} must be positive")));
            }
            Ok((d, amplitude * d.powf(-alpha)))
        })
        .collect()
}

/// Atom loss -ln(N/N₀).
pub fn atom_loss_metric(n_final: f64, n_initial: f64) -> Result<f64> {
    if !(n_final > 0.0 && n_initial > 0.0 && n_final.is_finite() && n_initial.is_finite()) {
        return Err(Error::domain(
            "atom_loss_metric",
            format!("atom numbers must be positive (N = {n_final}, N₀ = {n_initial})"),
        ));
    }
    Ok(n_initial.ln() - n_final.ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawPoint {
    pub x: f64,
    pub y: f64,
    pub y_err: Option<f64>,
}

impl PowerLawPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y, y_err: None }
    }
}

/// y ≈ amplitude · x^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub exponent_stderr: f64,
    pub amplitude: f64,
    pub points: usize,
}

/// Least-squares line through (ln x, ln y). When every point carries an
/// uncertainty the points are weighted by (y/σ_y)², the inverse variance of
/// ln y. The exponent's standard error comes from the residual scatter.
pub fn fit_power_law(points: &[PowerLawPoint]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some(p) = points.iter().find(|p| !(p.x > 0.0 && p.y > 0.0)) {
        return Err(Error::Fit(format!("power-law fit needs x, y > 0 (got x = {}, y = {})", p.x, p.y)));
    }
    let with_err = points.iter().filter(|p| p.y_err.is_some()).count();
    let weights = match with_err {
        0 => None,
        n if n == points.len() => Some(
            points
                .iter()
                .map(|p| {
                    let e = p.y_err.unwrap_or_default();
                    if !(e > 0.0 && e.is_finite()) {
                        return Err(Error::Fit(format!("uncertainty {e} at x = {} must be positive", p.x)));
                    }
                    Ok((p.y / e).powi(2))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => return Err(Error::Fit("either all points or none may carry uncertainties".into())),
    };
    let lx: Vec<f64> = points.iter().map(|p| p.x.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.y.ln()).collect();
    let line = fit_line(&lx, &ly, weights.as_deref())?;
    Ok(FitResult {
        exponent: line.slope,
        exponent_stderr: line.slope_stderr,
        amplitude: line.intercept.exp(),
        points: points.len(),
    })
}

/// Monte Carlo self-test settings for [`fit_power_law`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationConfig {
    pub exponent: f64,
    /// Standard deviation of the multiplicative lognormal noise.
    pub noise: f64,
    pub points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        Self {
            exponent: -2.0,
            noise: 0.05,
            points: 8,
            x_min: 100.0,
            x_max: 500.0,
            trials: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub mean_exponent: f64,
    /// Sample standard deviation of the fitted exponents.
    pub spread: f64,
    pub mean_stderr: f64,
    /// Fraction of trials whose ±1 stderr interval contains the true exponent.
    pub coverage: f64,
    pub trials: usize,
}

/// Fit many synthetic noisy power laws. Trial i draws its noise from a
/// ChaCha8 stream seeded with `seed + i`, so results do not depend on
/// thread scheduling.
pub fn calibrate_fitter(cfg: &CalibrationConfig) -> Result<Calibration> {
    if cfg.trials < 2 {
        return Err(Error::domain("calibrate_fitter", "need at least 2 trials"));
    }
    let noise = Normal::new(0.0, cfg.noise)
        .map_err(|e| Error::domain("calibrate_fitter", format!("noise level {}: {e}", cfg.noise)))?;
    let xs = spaced_grid(cfg.x_min, cfg.x_max, cfg.points, true);
    let fits = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            let pts: Vec<PowerLawPoint> = xs
                .iter()
                .map(|&x| PowerLawPoint::new(x, x.powf(cfg.exponent) * noise.sample(&mut rng).exp()))
                .collect();
            fit_power_law(&pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = fits.len() as f64;
    let mean_exponent = fits.iter().map(|f| f.exponent).sum::<f64>() / n;
    let spread = (fits.iter().map(|f| (f.exponent - mean_exponent).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let mean_stderr = fits.iter().map(|f| f.exponent_stderr).sum::<f64>() / n;
    let covered = fits
        .iter()
        .filter(|f| (f.exponent - cfg.exponent).abs() <= f.exponent_stderr)
        .count();
    Ok(Calibration {
        mean_exponent,
        spread,
        mean_stderr,
        coverage: covered as f64 / n,
        trials: fits.len(),
    })
}
