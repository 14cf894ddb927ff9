//! Physical constants (CODATA 2018). SI units throughout.

use std::f64::consts::PI;

/// Planck constant, J s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Unified atomic mass unit, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Lithium-6 atomic mass in atomic mass units.
pub const LITHIUM6_MASS_AMU: f64 = 6.015_122_887_4;

/// Lithium-6 D2 vacuum wavelength, m.
pub const LITHIUM6_D2_WAVELENGTH: f64 = 670.977_338e-9;

/// Lithium-6 D2 natural linewidth Γ/2π, Hz.
pub const LITHIUM6_D2_LINEWIDTH_HZ: f64 = 5.8724e6;

/// Lithium D2 saturation intensity for the cycling transition, W/m² (2.54 mW/cm²).
pub const LITHIUM6_D2_SATURATION_INTENSITY: f64 = 25.4;

/// Lithium-6 fine-structure splitting, Hz.
pub const LITHIUM6_FINE_STRUCTURE_HZ: f64 = 10.053e9;
