//! Ideal Fermi gas thermodynamics, homogeneous and in a cylindrically
//! symmetric harmonic trap (local density approximation).
//!
//! Internally most trap quantities are reduced to the dimensionless pair
//! (η₀ = μ₀/k_BT, t = T/T_F), linked by N = (k_BT/ħω̄)³ F₂(η₀), i.e.
//! F₂(η₀) = 1/(6t³).

use std::f64::consts::PI;

use crate::constants::{BOLTZMANN, HBAR, PLANCK};
use crate::error::{Error, Result};
use crate::fermi_dirac::{fermi_dirac, inverse_fermi_dirac};
use crate::numeric::quadrature::{try_integrate, QuadOptions};
use crate::numeric::roots::{expand_bracket_increasing, solve_bracketed, RootOptions};
use crate::species::AtomSpecies;

/// Harmonic trap with two degenerate radial axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapConfig {
    omega_r: f64,
    omega_z: f64,
    atom_number: f64,
}

impl TrapConfig {
    /// Angular frequencies in rad/s.
    pub fn new(omega_r: f64, omega_z: f64, atom_number: f64) -> Result<Self> {
        for (name, v) in [("omega_r", omega_r), ("omega_z", omega_z), ("atom_number", atom_number)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain("TrapConfig::new", format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self {
            omega_r,
            omega_z,
            atom_number,
        })
    }

    /// Trap frequencies ω/2π given in Hz.
    pub fn from_hz(freq_r: f64, freq_z: f64, atom_number: f64) -> Result<Self> {
        Self::new(2.0 * PI * freq_r, 2.0 * PI * freq_z, atom_number)
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }

    /// Angular frequencies along (x, y, z).
    pub fn omegas(&self) -> [f64; 3] {
        [self.omega_r, self.omega_r, self.omega_z]
    }

    pub fn atom_number(&self) -> f64 {
        self.atom_number
    }

    pub fn with_atom_number(&self, atom_number: f64) -> Result<Self> {
        Self::new(self.omega_r, self.omega_z, atom_number)
    }

    /// Geometric mean ω̄ = (ω_r² ω_z)^{1/3}.
    pub fn mean_frequency(&self) -> f64 {
        (self.omega_r * self.omega_r * self.omega_z).cbrt()
    }

    /// E_F = ħ(ω_r² ω_z · 6N)^{1/3}.
    pub fn fermi_energy(&self) -> f64 {
        HBAR * (self.omega_r * self.omega_r * self.omega_z * 6.0 * self.atom_number).cbrt()
    }

    pub fn fermi_temperature(&self) -> f64 {
        self.fermi_energy() / BOLTZMANN
    }

    /// Fermi wavenumber at the trap center for T = 0.
    pub fn fermi_wavenumber(&self, species: &AtomSpecies) -> f64 {
        (2.0 * species.mass() * self.fermi_energy()).sqrt() / HBAR
    }

    fn potential(&self, mass: f64, r: [f64; 3]) -> f64 {
        let w = self.omegas();
        0.5 * mass * (0..3).map(|i| (w[i] * r[i]).powi(2)).sum::<f64>()
    }
}

/// Free-function form of [`TrapConfig::fermi_temperature`].
pub fn fermi_temperature(trap: &TrapConfig) -> f64 {
    trap.fermi_temperature()
}

/// Thermal de Broglie wavelength Λ = h/√(2π m k_B T).
pub fn thermal_wavelength(species: &AtomSpecies, temperature: f64) -> f64 {
    PLANCK / (2.0 * PI * species.mass() * BOLTZMANN * temperature).sqrt()
}

/// k_F = (6π² n)^{1/3} for a single spin component.
pub fn homogeneous_fermi_wavenumber(density: f64) -> f64 {
    (6.0 * PI * PI * density).cbrt()
}

/// E_F = ħ²k_F²/2m of a homogeneous single-component gas.
pub fn homogeneous_fermi_energy(species: &AtomSpecies, density: f64) -> f64 {
    let kf = homogeneous_fermi_wavenumber(density);
    HBAR * HBAR * kf * kf / (2.0 * species.mass())
}

fn check_temperature(op: &'static str, temperature: f64) -> Result<()> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::domain(op, format!("temperature {temperature} K must be positive")));
    }
    Ok(())
}

/// Chemical potential (J) of a homogeneous gas of density n at temperature T,
/// from nΛ³ = F_{1/2}(μ/k_BT).
pub fn solve_mu_homogeneous(species: &AtomSpecies, density: f64, temperature: f64) -> Result<f64> {
    check_temperature("solve_mu_homogeneous", temperature)?;
    if !(density.is_finite() && density > 0.0) {
        return Err(Error::domain("solve_mu_homogeneous", format!("density {density} must be positive")));
    }
    let d = density * thermal_wavelength(species, temperature).powi(3);
    let eta = inverse_fermi_dirac(0.5, d)?;
    Ok(eta * BOLTZMANN * temperature)
}

/// Density of a homogeneous gas at chemical potential μ (J) and temperature T.
pub fn density_from_mu(species: &AtomSpecies, mu: f64, temperature: f64) -> Result<f64> {
    check_temperature("density_from_mu", temperature)?;
    let eta = mu / (BOLTZMANN * temperature);
    Ok(fermi_dirac(0.5, eta)? / thermal_wavelength(species, temperature).powi(3))
}

/// η₀ = μ₀/k_BT of a trapped gas at reduced temperature t = T/T_F.
pub fn trapped_eta(t_over_tf: f64) -> Result<f64> {
    if !(t_over_tf.is_finite() && t_over_tf > 0.0) {
        return Err(Error::domain("trapped_eta", format!("T/T_F = {t_over_tf} must be positive")));
    }
    inverse_fermi_dirac(2.0, 1.0 / (6.0 * t_over_tf.powi(3)))
}

/// Reduced temperature t = T/T_F corresponding to central η₀.
pub fn trapped_reduced_temperature(eta: f64) -> Result<f64> {
    Ok((6.0 * fermi_dirac(2.0, eta)?).powf(-1.0 / 3.0))
}

/// Global chemical potential μ₀ (J) fixing the trap's atom number at temperature T.
pub fn solve_mu_trapped(trap: &TrapConfig, temperature: f64) -> Result<f64> {
    check_temperature("solve_mu_trapped", temperature)?;
    let eta = trapped_eta(temperature / trap.fermi_temperature())?;
    Ok(eta * BOLTZMANN * temperature)
}

/// N = (k_BT/ħω̄)³ F₂(μ₀/k_BT).
pub fn atom_number_from_mu(trap: &TrapConfig, mu: f64, temperature: f64) -> Result<f64> {
    check_temperature("atom_number_from_mu", temperature)?;
    let kt = BOLTZMANN * temperature;
    Ok((kt / (HBAR * trap.mean_frequency())).powi(3) * fermi_dirac(2.0, mu / kt)?)
}

/// E/(N k_B T_F) of the trapped gas as a function of η₀: 3t F₃(η₀)/F₂(η₀).
pub fn reduced_trap_energy(eta: f64) -> Result<f64> {
    let f2 = fermi_dirac(2.0, eta)?;
    let f3 = fermi_dirac(3.0, eta)?;
    let t = (6.0 * f2).powf(-1.0 / 3.0);
    Ok(3.0 * t * f3 / f2)
}

/// Whether a state describes a uniform gas or a trapped cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Context {
    Homogeneous { density: f64 },
    Trapped(TrapConfig),
}

/// An equilibrium ideal Fermi gas at temperature T and chemical potential μ.
/// Immutable once constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    species: AtomSpecies,
    temperature: f64,
    chemical_potential: f64,
    context: Context,
}

impl ThermoState {
    pub fn homogeneous(species: AtomSpecies, density: f64, temperature: f64) -> Result<Self> {
        let mu = solve_mu_homogeneous(&species, density, temperature)?;
        Ok(Self {
            species,
            temperature,
            chemical_potential: mu,
            context: Context::Homogeneous { density },
        })
    }

    /// Homogeneous state at T = t·T_F(n).
    pub fn homogeneous_at_reduced_temperature(
        species: AtomSpecies,
        density: f64,
        t_over_tf: f64,
    ) -> Result<Self> {
        let tf = homogeneous_fermi_energy(&species, density) / BOLTZMANN;
        Self::homogeneous(species, density, t_over_tf * tf)
    }

    pub fn trapped(species: AtomSpecies, trap: TrapConfig, temperature: f64) -> Result<Self> {
        let mu = solve_mu_trapped(&trap, temperature)?;
        Ok(Self {
            species,
            temperature,
            chemical_potential: mu,
            context: Context::Trapped(trap),
        })
    }

    pub fn trapped_at_reduced_temperature(
        species: AtomSpecies,
        trap: TrapConfig,
        t_over_tf: f64,
    ) -> Result<Self> {
        Self::trapped(species, trap, t_over_tf * trap.fermi_temperature())
    }

    pub fn species(&self) -> &AtomSpecies {
        &self.species
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// μ (homogeneous) or the global μ₀ (trapped), in J.
    pub fn chemical_potential(&self) -> f64 {
        self.chemical_potential
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn trap(&self) -> Option<&TrapConfig> {
        match &self.context {
            Context::Trapped(trap) => Some(trap),
            Context::Homogeneous { .. } => None,
        }
    }

    /// μ/k_BT.
    pub fn eta(&self) -> f64 {
        self.chemical_potential / (BOLTZMANN * self.temperature)
    }

    pub fn fugacity(&self) -> f64 {
        self.eta().exp()
    }

    pub fn thermal_wavelength(&self) -> f64 {
        thermal_wavelength(&self.species, self.temperature)
    }

    /// Thermal wavenumber √(2m k_BT)/ħ; momenta in units of this make ħ²k²/2m = k_BT κ².
    pub fn thermal_wavenumber(&self) -> f64 {
        (2.0 * self.species.mass() * BOLTZMANN * self.temperature).sqrt() / HBAR
    }

    pub fn fermi_temperature(&self) -> f64 {
        match &self.context {
            Context::Homogeneous { density } => {
                homogeneous_fermi_energy(&self.species, *density) / BOLTZMANN
            }
            Context::Trapped(trap) => trap.fermi_temperature(),
        }
    }

    pub fn reduced_temperature(&self) -> f64 {
        self.temperature / self.fermi_temperature()
    }

    fn require_trap(&self, op: &'static str) -> Result<&TrapConfig> {
        self.trap()
            .ok_or_else(|| Error::domain(op, "state is homogeneous; a trapped state is required"))
    }

    /// Jacobian C such that ∫d³r g(V(r)/k_BT) = C ∫₀^∞ s² g(s²) ds.
    fn shell_jacobian(&self, trap: &TrapConfig) -> f64 {
        let w = trap.omegas();
        4.0 * PI * (2.0 * BOLTZMANN * self.temperature / self.species.mass()).powf(1.5)
            / (w[0] * w[1] * w[2])
    }
}

/// LDA density n(r) = F_{1/2}(η₀ - V(r)/k_BT)/Λ³ at position `r` (m) from the trap center.
pub fn density_profile(state: &ThermoState, r: [f64; 3]) -> Result<f64> {
    let trap = state.require_trap("density_profile")?;
    let v = trap.potential(state.species.mass(), r) / (BOLTZMANN * state.temperature);
    Ok(fermi_dirac(0.5, state.eta() - v)? / state.thermal_wavelength().powi(3))
}

/// Density at the trap center (or the uniform density).
pub fn peak_density(state: &ThermoState) -> Result<f64> {
    match state.context {
        Context::Homogeneous { density } => Ok(density),
        Context::Trapped(_) => density_profile(state, [0.0; 3]),
    }
}

/// Density-weighted mean density ∫n² d³r / ∫n d³r of a trapped cloud.
pub fn mean_density(state: &ThermoState) -> Result<f64> {
    let trap = state.require_trap("mean_density")?;
    let eta = state.eta();
    let lambda3 = state.thermal_wavelength().powi(3);
    let upper = (eta.max(0.0) + 50.0).sqrt();
    let breaks = if eta > 0.0 { vec![eta.sqrt()] } else { Vec::new() };
    let est = try_integrate(
        |s| Ok(s * s * fermi_dirac(0.5, eta - s * s)?.powi(2)),
        0.0,
        upper,
        &breaks,
        QuadOptions::relative(1e-10),
    )?;
    Ok(state.shell_jacobian(trap) * est.value / (lambda3 * lambda3 * trap.atom_number()))
}

/// RMS cloud widths (σ_x, σ_y, σ_z) in m:
/// ⟨x_i²⟩ = (k_BT/mω_i²) Li₄(-z)/Li₃(-z).
pub fn cloud_rms_widths(state: &ThermoState) -> Result<[f64; 3]> {
    let trap = state.require_trap("cloud_rms_widths")?;
    let eta = state.eta();
    let ratio = fermi_dirac(3.0, eta)? / fermi_dirac(2.0, eta)?;
    let kt_over_m = BOLTZMANN * state.temperature / state.species.mass();
    let w = trap.omegas();
    Ok([0, 1, 2].map(|i| (kt_over_m * ratio).sqrt() / w[i]))
}

/// Total (kinetic + potential) energy E = 3N k_BT Li₄(-z)/Li₃(-z) in J.
pub fn total_energy_trapped(state: &ThermoState) -> Result<f64> {
    let trap = state.require_trap("total_energy_trapped")?;
    let eta = state.eta();
    let ratio = fermi_dirac(3.0, eta)? / fermi_dirac(2.0, eta)?;
    Ok(3.0 * trap.atom_number() * BOLTZMANN * state.temperature * ratio)
}

/// Potential and kinetic energy, each from its own LDA integral over the cloud.
pub fn energy_components(state: &ThermoState) -> Result<(f64, f64)> {
    let trap = state.require_trap("energy_components")?;
    let eta = state.eta();
    let kt = BOLTZMANN * state.temperature;
    let lambda3 = state.thermal_wavelength().powi(3);
    let upper = (eta.max(0.0) + 60.0).sqrt();
    let breaks = if eta > 0.0 { vec![eta.sqrt()] } else { Vec::new() };
    let opts = QuadOptions::relative(1e-10);
    let potential = try_integrate(
        |s| Ok(s.powi(4) * fermi_dirac(0.5, eta - s * s)?),
        0.0,
        upper,
        &breaks,
        opts,
    )?
    .value;
    let kinetic = try_integrate(
        |s| Ok(s * s * 1.5 * fermi_dirac(1.5, eta - s * s)?),
        0.0,
        upper,
        &breaks,
        opts,
    )?
    .value;
    let c = state.shell_jacobian(trap) * kt / lambda3;
    Ok((c * potential, c * kinetic))
}

/// Zero-temperature ground-state energy (3/4) N k_B T_F.
pub fn ground_state_energy(trap: &TrapConfig) -> f64 {
    0.75 * trap.atom_number() * trap.fermi_energy()
}

/// Relative slack below the ground-state energy still accepted by
/// [`invert_energy_to_temperature`].
pub const GROUND_STATE_TOLERANCE: f64 = 1e-9;

/// Temperature (K) at which the trapped gas has total energy `energy` (J).
pub fn invert_energy_to_temperature(trap: &TrapConfig, energy: f64) -> Result<f64> {
    let target = energy / (trap.atom_number() * trap.fermi_energy());
    if !(target.is_finite() && target >= 0.75 * (1.0 - GROUND_STATE_TOLERANCE)) {
        return Err(Error::domain(
            "invert_energy_to_temperature",
            format!("E/(N k_B T_F) = {target} is below the ground-state value 3/4"),
        ));
    }
    // E(T) flattens as T → 0; below this the temperature is effectively zero
    let target = target.max(0.75 * (1.0 + 1e-12));
    let ln_target = target.ln();

    let guess_t = if target > 1.5 {
        target / 3.0
    } else {
        ((target / 0.75 - 1.0) * 1.5 / (PI * PI)).sqrt().max(1e-6)
    };
    let guess_eta = trapped_eta(guess_t)?;
    // increasing function of x = -η
    let g = |x: f64| reduced_trap_energy(-x).map(|e| e.ln() - ln_target);
    let (lo, hi) = expand_bracket_increasing(g, -guess_eta - 0.5, -guess_eta + 0.5, 80)?;
    let root = solve_bracketed(
        g,
        lo,
        hi,
        RootOptions {
            x_tol: 1e-15,
            f_tol: 1e-13,
            max_iter: 300,
        },
    )?;
    Ok(trapped_reduced_temperature(-root.x)? * trap.fermi_temperature())
}

/// Phase-space density nΛ³ (at the trap center for a trapped state).
pub fn peak_phase_space_density(state: &ThermoState) -> Result<f64> {
    fermi_dirac(0.5, state.eta())
}
