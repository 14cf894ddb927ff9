//! Pair correlations and static structure factors of the ideal quantum gas.
//!
//! The Pauli suppression factor β(q) = ∫d³k f(k)(1 - f(k+q)) / ∫d³k f(k) is
//! the fraction of scattering events whose final momentum state is free. For
//! the ideal Fermi gas it is identical to the static structure factor S(q);
//! [`structure_factor`] and [`beta_homogeneous`] are the same function.
//!
//! Momenta are measured in units of the thermal wavenumber k_T = √(2mk_BT)/ħ,
//! so the occupation is f(κ) = 1/(e^{κ² - η} + 1) and the momentum transfer
//! is Q = q/k_T = qΛ_t/(2√π).

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermi_dirac::fermi_dirac;
use crate::numeric::quadrature::{try_integrate, QuadOptions};
use crate::numeric::{fermi_occupation, softplus};
use crate::thermo::{Context, ThermoState};

/// Quantum statistics of the gas, selecting the sign of the exchange term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Statistics {
    #[default]
    Fermion,
    Boson,
}

impl Statistics {
    /// -1 for fermions (antibunching), +1 for bosons.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
        }
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fermion" | "fermions" | "fermi" => Ok(Statistics::Fermion),
            "boson" | "bosons" | "bose" => Ok(Statistics::Boson),
            other => Err(Error::domain(
                "statistics",
                format!("unknown statistics '{other}' (expected fermion or boson)"),
            )),
        }
    }
}

/// g(r) ≈ 1 ∓ exp(-2πr²/Λ_t²) of a nondegenerate gas.
pub fn pair_correlation_boltzmann(r: f64, lambda_t: f64, statistics: Statistics) -> f64 {
    1.0 + statistics.sign() * (-2.0 * PI * r * r / (lambda_t * lambda_t)).exp()
}

/// S(q) ≈ 1 ∓ D exp(-q²Λ_t²/8π)/2^{3/2}, the Fourier transform of the
/// Gaussian pair correlation at phase-space density D.
pub fn s_q_gaussian(q: f64, phase_space_density: f64, lambda_t: f64, statistics: Statistics) -> f64 {
    let x = q * lambda_t;
    1.0 + statistics.sign() * phase_space_density * (-x * x / (8.0 * PI)).exp() / 2f64.powf(1.5)
}

/// Zero-temperature static structure factor of the ideal Fermi gas:
/// (3/2)x - x³/2 for x = q/2k_F ≤ 1, else 1.
pub fn beta_zero_temperature(q: f64, k_f: f64) -> f64 {
    let x = q / (2.0 * k_f);
    if x >= 1.0 {
        1.0
    } else {
        1.5 * x - 0.5 * x * x * x
    }
}

/// Below this Q the angular bracket is replaced by its Q → 0 limit.
const SMALL_TRANSFER: f64 = 1e-6;

/// Momentum cutoff in units of k_T beyond which occupations are below e^{-45}.
fn momentum_cutoff(eta: f64) -> f64 {
    (eta.max(0.0) + 45.0).sqrt()
}

fn kernel_breakpoints(eta: f64, big_q: f64) -> Vec<f64> {
    if eta <= 0.0 {
        return Vec::new();
    }
    let kf = eta.sqrt();
    vec![kf, (kf - big_q).abs(), kf + big_q]
}

/// Integrand of [`unblocked_density`] at momentum κ: the occupation of κ
/// times the angle-averaged probability that κ + Q is empty, times 4κ²/√π.
fn unblocked_integrand(kappa: f64, eta: f64, big_q: f64) -> f64 {
    let occ = fermi_occupation(kappa * kappa - eta);
    let blocked = if big_q < SMALL_TRANSFER || kappa * big_q < 1e-12 {
        fermi_occupation(kappa * kappa - eta)
    } else {
        // (1/2)∫dc f(κ² + Q² + 2κQc) in closed form via ∫f(a)da = -ln(1 + e^{η-a})
        let lo = (kappa - big_q) * (kappa - big_q);
        let hi = (kappa + big_q) * (kappa + big_q);
        (softplus(eta - lo) - softplus(eta - hi)) / (4.0 * kappa * big_q)
    };
    4.0 / PI.sqrt() * kappa * kappa * occ * (1.0 - blocked)
}

/// F_{1/2}(η)·β(η, Q): density (in units of Λ_t⁻³) of atoms whose
/// recoil-shifted momentum state is unoccupied. Reduced to a single
/// adaptive quadrature over |k| with relative tolerance `rel_tol`.
pub fn unblocked_density_with_tol(eta: f64, big_q: f64, rel_tol: f64) -> Result<f64> {
    if !(big_q >= 0.0 && big_q.is_finite()) {
        return Err(Error::domain("unblocked density", format!("Q = {big_q} must be finite and ≥ 0")));
    }
    if !eta.is_finite() {
        return Err(Error::domain("unblocked density", format!("η = {eta} must be finite")));
    }
    let est = try_integrate(
        |k| Ok(unblocked_integrand(k, eta, big_q)),
        0.0,
        momentum_cutoff(eta),
        &kernel_breakpoints(eta, big_q),
        QuadOptions::relative(rel_tol),
    )?;
    Ok(est.value.max(0.0))
}

/// [`unblocked_density_with_tol`] at relative tolerance 1e-10.
pub fn unblocked_density(eta: f64, big_q: f64) -> Result<f64> {
    unblocked_density_with_tol(eta, big_q, 1e-10)
}

/// Dimensionless suppression factor β(η, Q) ∈ [0, 1].
pub fn suppression_kernel(eta: f64, big_q: f64) -> Result<f64> {
    let unblocked = unblocked_density(eta, big_q)?;
    Ok((unblocked / fermi_dirac(0.5, eta)?).clamp(0.0, 1.0))
}

/// Momentum transfer in thermal units, Q = q/k_T.
pub fn reduced_transfer(q: f64, state: &ThermoState) -> f64 {
    q / state.thermal_wavenumber()
}

fn require_homogeneous(op: &'static str, state: &ThermoState, q: f64) -> Result<()> {
    if !matches!(state.context(), Context::Homogeneous { .. }) {
        return Err(Error::domain(op, "a homogeneous state is required"));
    }
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::domain(op, format!("q = {q} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Pauli suppression factor of a homogeneous gas at momentum transfer q (1/m).
pub fn beta_homogeneous(q: f64, state: &ThermoState) -> Result<f64> {
    require_homogeneous("beta_homogeneous", state, q)?;
    suppression_kernel(state.eta(), reduced_transfer(q, state))
}

/// Static structure factor S(q) of the ideal Fermi gas; identical to
/// [`beta_homogeneous`].
pub fn structure_factor(q: f64, state: &ThermoState) -> Result<f64> {
    beta_homogeneous(q, state)
}

/// β(η, Q) from a direct two-dimensional quadrature over |k| and the angle
/// between k and q, without the closed-form angular reduction. Slower; kept
/// as an independent check of [`suppression_kernel`].
pub fn suppression_kernel_direct(eta: f64, big_q: f64) -> Result<f64> {
    let inner_opts = QuadOptions::relative(1e-11).with_abs_tol(1e-15);
    let est = try_integrate(
        |k| {
            let occ = fermi_occupation(k * k - eta);
            if occ == 0.0 {
                return Ok(0.0);
            }
            let mut breaks = Vec::new();
            if k * big_q > 0.0 {
                let c = (eta - k * k - big_q * big_q) / (2.0 * k * big_q);
                if c > -1.0 && c < 1.0 {
                    breaks.push(c);
                }
            }
            let empty = try_integrate(
                |c| Ok(1.0 - fermi_occupation(k * k + big_q * big_q + 2.0 * k * big_q * c - eta)),
                -1.0,
                1.0,
                &breaks,
                inner_opts,
            )?;
            Ok(k * k * occ * 0.5 * empty.value)
        },
        0.0,
        momentum_cutoff(eta),
        &kernel_breakpoints(eta, big_q),
        QuadOptions::relative(1e-9),
    )?;
    let norm = PI.sqrt() / 4.0 * fermi_dirac(0.5, eta)?;
    Ok((est.value / norm).clamp(0.0, 1.0))
}

/// Default ceiling on lattice points for [`beta_lattice_oracle`] (512³).
pub const DEFAULT_LATTICE_BUDGET: u128 = 1 << 27;

/// Settings for the momentum-lattice oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeOptions {
    /// Lattice points per axis.
    pub grid_points: usize,
    /// Half-width of the lattice in units of max(k_F, k_T).
    pub cutoff: f64,
    /// Largest permitted total point count.
    pub max_points: u128,
}

impl LatticeOptions {
    pub fn new(grid_points: usize, cutoff: f64) -> Self {
        Self {
            grid_points,
            cutoff,
            max_points: DEFAULT_LATTICE_BUDGET,
        }
    }

    /// Lattice spacing in thermal units for a gas at reduced chemical potential η.
    pub fn spacing(&self, eta: f64) -> f64 {
        2.0 * self.half_width(eta) / self.grid_points as f64
    }

    fn half_width(&self, eta: f64) -> f64 {
        self.cutoff * eta.max(0.0).sqrt().max(1.0)
    }
}

/// β(η, Q) as a brute-force midpoint sum Σf(k)(1 - f(k+q))/Σf(k) over a
/// cubic lattice in momentum space, q along the third axis.
///
/// The error is first order in the lattice spacing in the worst case (a
/// sharp Fermi edge cutting through cells); smooth occupations converge
/// faster. Lattice momenta are offset by half a cell so none sits at k = 0.
pub fn suppression_kernel_lattice(eta: f64, big_q: f64, opts: LatticeOptions) -> Result<f64> {
    if opts.grid_points < 32 {
        return Err(Error::domain(
            "lattice oracle",
            format!("grid_points = {} must be at least 32", opts.grid_points),
        ));
    }
    if !(opts.cutoff >= 4.0) {
        return Err(Error::domain("lattice oracle", format!("cutoff = {} must be at least 4", opts.cutoff)));
    }
    if !(big_q >= 0.0 && big_q.is_finite()) {
        return Err(Error::domain("lattice oracle", format!("Q = {big_q} must be finite and ≥ 0")));
    }
    let n = opts.grid_points;
    let requested = (n as u128).pow(3);
    if requested > opts.max_points {
        return Err(Error::Budget {
            requested,
            limit: opts.max_points,
        });
    }

    let half = opts.half_width(eta);
    let h = 2.0 * half / n as f64;
    let axis: Vec<f64> = (0..n).map(|i| -half + (i as f64 + 0.5) * h).collect();

    // per-plane partial sums, combined in a fixed order for reproducibility
    let planes: Vec<(f64, f64)> = axis
        .par_iter()
        .map(|&kz| {
            let kz_shift = kz + big_q;
            let mut occupied = 0.0;
            let mut unblocked = 0.0;
            for &kx in &axis {
                for &ky in &axis {
                    let perp = kx * kx + ky * ky;
                    let f = fermi_occupation(perp + kz * kz - eta);
                    let f_final = fermi_occupation(perp + kz_shift * kz_shift - eta);
                    occupied += f;
                    unblocked += f * (1.0 - f_final);
                }
            }
            (occupied, unblocked)
        })
        .collect();
    let (occupied, unblocked) = planes
        .iter()
        .fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    if occupied <= 0.0 {
        return Err(Error::no_convergence(
            "lattice oracle",
            "lattice too coarse: no occupied momentum states sampled",
        ));
    }
    Ok(unblocked / occupied)
}

/// Lattice oracle for a homogeneous state at physical momentum transfer q (1/m).
pub fn beta_lattice_oracle(q: f64, state: &ThermoState, grid_points: usize, cutoff: f64) -> Result<f64> {
    beta_lattice_oracle_with(q, state, LatticeOptions::new(grid_points, cutoff))
}

pub fn beta_lattice_oracle_with(q: f64, state: &ThermoState, opts: LatticeOptions) -> Result<f64> {
    require_homogeneous("beta_lattice_oracle", state, q)?;
    suppression_kernel_lattice(state.eta(), reduced_transfer(q, state), opts)
}
