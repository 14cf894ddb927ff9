//! Light scattering from a trapped cloud: the density-weighted Pauli
//! suppression, the geometric overlap between cloud and probe beam, and
//! the detected-signal curve built from both.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermi_dirac::fermi_dirac;
use crate::numeric::quadrature::{gauss_legendre, try_integrate, QuadOptions};
use crate::species::AtomSpecies;
use crate::structure::unblocked_density_with_tol;
use crate::thermo::{cloud_rms_widths, ThermoState, TrapConfig};

/// Gaussian probe beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeBeam {
    waist: f64,
    power: f64,
    detuning: f64,
    pulse_duration: f64,
}

impl ProbeBeam {
    /// `waist` is the 1/e² intensity radius (m), `power` in W, `detuning` in
    /// rad/s, `pulse_duration` in s.
    pub fn new(waist: f64, power: f64, detuning: f64, pulse_duration: f64) -> Result<Self> {
        if !(waist.is_finite() && waist > 0.0) {
            return Err(Error::domain("ProbeBeam::new", format!("waist {waist} m must be positive")));
        }
        if !(pulse_duration.is_finite() && pulse_duration > 0.0) {
            return Err(Error::domain(
                "ProbeBeam::new",
                format!("pulse duration {pulse_duration} s must be positive"),
            ));
        }
        if !(power.is_finite() && power >= 0.0) {
            return Err(Error::domain("ProbeBeam::new", format!("power {power} W must be ≥ 0")));
        }
        if !detuning.is_finite() {
            return Err(Error::domain("ProbeBeam::new", "detuning must be finite"));
        }
        Ok(Self {
            waist,
            power,
            detuning,
            pulse_duration,
        })
    }

    pub fn waist(&self) -> f64 {
        self.waist
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn pulse_duration(&self) -> f64 {
        self.pulse_duration
    }

    pub fn with_power(&self, power: f64) -> Result<Self> {
        Self::new(self.waist, power, self.detuning, self.pulse_duration)
    }

    pub fn with_waist(&self, waist: f64) -> Result<Self> {
        Self::new(waist, self.power, self.detuning, self.pulse_duration)
    }

    /// On-axis intensity 2P/(πw²) in W/m².
    pub fn peak_intensity(&self) -> f64 {
        2.0 * self.power / (PI * self.waist * self.waist)
    }

    /// Photon scattering rate per atom at the beam center (1/s).
    pub fn scattering_rate(&self, species: &AtomSpecies) -> f64 {
        species.rayleigh_rate(self.peak_intensity(), self.detuning)
    }
}

/// Density-weighted LDA average of the suppression factor for a trapped gas
/// with central η₀ at thermal momentum transfer Q:
/// β̄ = ∫d³r F_{1/2}(η₀ - V/k_BT)·β(η₀ - V/k_BT, Q) / ∫d³r F_{1/2}(η₀ - V/k_BT).
///
/// The shell coordinate s = √(V/k_BT) carries the outer quadrature.
pub fn trap_suppression_kernel(eta0: f64, big_q: f64) -> Result<f64> {
    if !eta0.is_finite() {
        return Err(Error::domain("trap suppression", format!("η₀ = {eta0} must be finite")));
    }
    let upper = (eta0.max(0.0) + 45.0).sqrt();
    let breaks = if eta0 > 0.0 { vec![eta0.sqrt()] } else { Vec::new() };
    let est = try_integrate(
        |s| Ok(s * s * unblocked_density_with_tol(eta0 - s * s, big_q, 1e-8)?),
        0.0,
        upper,
        &breaks,
        QuadOptions::relative(1e-6),
    )?;
    let norm = PI.sqrt() / 4.0 * fermi_dirac(2.0, eta0)?;
    Ok((est.value / norm).clamp(0.0, 1.0))
}

/// Trap-averaged suppression factor for momentum transfer q (1/m).
pub fn suppression_trap_averaged(state: &ThermoState, q: f64) -> Result<f64> {
    if state.trap().is_none() {
        return Err(Error::domain("suppression_trap_averaged", "a trapped state is required"));
    }
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::domain("suppression_trap_averaged", format!("q = {q} must be finite and ≥ 0")));
    }
    trap_suppression_kernel(state.eta(), q / state.thermal_wavenumber())
}

/// Where scattered light is collected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detection {
    /// A single direction at the given scattering angle (rad).
    Point { angle: f64 },
    /// A circular lens of numerical aperture `numerical_aperture` centered on
    /// the scattering angle `angle`; the signal is the solid-angle average.
    Aperture { angle: f64, numerical_aperture: f64 },
}

impl Detection {
    pub fn right_angle() -> Self {
        Detection::Point { angle: 0.5 * PI }
    }

    pub fn center_angle(&self) -> f64 {
        match *self {
            Detection::Point { angle } | Detection::Aperture { angle, .. } => angle,
        }
    }

    /// Scattering angles and solid-angle weights (summing to 1) sampled over
    /// the detector.
    pub fn angles(&self) -> Result<Vec<(f64, f64)>> {
        match *self {
            Detection::Point { angle } => Ok(vec![(angle, 1.0)]),
            Detection::Aperture {
                angle,
                numerical_aperture,
            } => aperture_angles(angle, numerical_aperture, 6, 12),
        }
    }
}

/// Gauss-Legendre sampling of a cone of half-angle asin(NA) around a
/// detection axis at scattering angle `center`. Directions are parametrized
/// by the polar angle ψ from the cone axis and the azimuth φ around it; the
/// scattering angle satisfies cos θ = cos ψ cos θ_c + sin ψ sin θ_c cos φ.
pub fn aperture_angles(center: f64, numerical_aperture: f64, n_psi: usize, n_phi: usize) -> Result<Vec<(f64, f64)>> {
    if !(numerical_aperture > 0.0 && numerical_aperture < 1.0) {
        return Err(Error::domain(
            "aperture",
            format!("numerical aperture {numerical_aperture} outside (0, 1)"),
        ));
    }
    if !(center > 0.0 && center <= PI) {
        return Err(Error::domain("aperture", format!("center angle {center} rad outside (0, π]")));
    }
    let cos_max = (1.0 - numerical_aperture * numerical_aperture).sqrt();
    let mut out = Vec::with_capacity(n_psi * n_phi);
    // uniform in cos ψ ∈ [cos ψ_max, 1]; φ ∈ [0, π] suffices by mirror symmetry
    for &(u, wu) in &gauss_legendre(n_psi) {
        let cos_psi = cos_max + 0.5 * (1.0 - cos_max) * (u + 1.0);
        let sin_psi = (1.0 - cos_psi * cos_psi).max(0.0).sqrt();
        for &(v, wv) in &gauss_legendre(n_phi) {
            let phi = 0.5 * PI * (v + 1.0);
            let cos_theta = cos_psi * center.cos() + sin_psi * center.sin() * phi.cos();
            out.push((cos_theta.clamp(-1.0, 1.0).acos(), 0.25 * wu * wv));
        }
    }
    Ok(out)
}

/// Trap-averaged suppression seen by a detector.
pub fn suppression_detected(state: &ThermoState, detection: Detection) -> Result<f64> {
    let species = state.species();
    let mut total = 0.0;
    for (theta, w) in detection.angles()? {
        let q = 2.0 * species.wavenumber() * (0.5 * theta).sin();
        total += w * suppression_trap_averaged(state, q)?;
    }
    Ok(total)
}

/// Overlap of Gaussian profiles with rms widths `sigmas` (the two cloud axes
/// transverse to the beam) with a beam of 1/e² radius `waist`:
/// Π 1/√(1 + 4σ²/w²).
pub fn gaussian_overlap(sigmas: [f64; 2], waist: f64) -> f64 {
    sigmas
        .iter()
        .map(|s| 1.0 / (1.0 + 4.0 * s * s / (waist * waist)).sqrt())
        .product()
}

/// Fraction of the peak-intensity signal collected from a cloud of finite
/// size. The beam propagates perpendicular to the trap's long axis, so the
/// transverse cloud widths are one radial and the axial width.
pub fn beam_overlap_factor(state: &ThermoState, beam: &ProbeBeam) -> Result<f64> {
    let widths = cloud_rms_widths(state)?;
    Ok(gaussian_overlap([widths[0], widths[2]], beam.waist()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuppressionRow {
    pub t_over_tf: f64,
    pub suppression: f64,
    pub overlap: f64,
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuppressionCurve {
    pub rows: Vec<SuppressionRow>,
}

/// Suppression, overlap and their product on a grid of T/T_F values.
/// Rows are computed in parallel and returned in grid order.
pub fn detected_signal_curve(
    species: &AtomSpecies,
    trap: &TrapConfig,
    beam: &ProbeBeam,
    detection: Detection,
    t_grid: &[f64],
) -> Result<SuppressionCurve> {
    if t_grid.is_empty() {
        return Err(Error::domain("detected_signal_curve", "temperature grid is empty"));
    }
    if t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) || t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "detected_signal_curve",
            "temperature grid must be positive and strictly increasing",
        ));
    }
    let rows = t_grid
        .par_iter()
        .map(|&t| {
            let state = ThermoState::trapped_at_reduced_temperature(*species, *trap, t)?;
            let suppression = suppression_detected(&state, detection)?;
            let overlap = beam_overlap_factor(&state, beam)?;
            Ok(SuppressionRow {
                t_over_tf: t,
                suppression,
                overlap,
                product: suppression * overlap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuppressionCurve { rows })
}
