//! Atomic constants, photon kinematics and single-atom scattering diagnostics.

use std::f64::consts::PI;
use std::path::Path;

use crate::constants::{
    ATOMIC_MASS_UNIT, HBAR, LITHIUM6_D2_LINEWIDTH_HZ, LITHIUM6_D2_SATURATION_INTENSITY,
    LITHIUM6_D2_WAVELENGTH, LITHIUM6_FINE_STRUCTURE_HZ, LITHIUM6_MASS_AMU, PLANCK,
};
use crate::error::{Error, Result};

/// A two-level model atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies {
    mass: f64,
    wavelength: f64,
    linewidth: f64,
    saturation_intensity: f64,
    fine_structure_splitting: f64,
}

impl AtomSpecies {
    /// * `mass` in kg
    /// * `wavelength` resonance wavelength in m
    /// * `linewidth` Γ in rad/s
    /// * `saturation_intensity` in W/m²
    /// * `fine_structure_splitting` in Hz
    pub fn new(
        mass: f64,
        wavelength: f64,
        linewidth: f64,
        saturation_intensity: f64,
        fine_structure_splitting: f64,
    ) -> Result<Self> {
        let fields = [
            ("mass", mass),
            ("wavelength", wavelength),
            ("linewidth", linewidth),
            ("saturation_intensity", saturation_intensity),
            ("fine_structure_splitting", fine_structure_splitting),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain("AtomSpecies::new", format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self {
            mass,
            wavelength,
            linewidth,
            saturation_intensity,
            fine_structure_splitting,
        })
    }

    /// Lithium-6 on the D2 line.
    pub fn lithium6() -> Self {
        Self {
            mass: LITHIUM6_MASS_AMU * ATOMIC_MASS_UNIT,
            wavelength: LITHIUM6_D2_WAVELENGTH,
            linewidth: 2.0 * PI * LITHIUM6_D2_LINEWIDTH_HZ,
            saturation_intensity: LITHIUM6_D2_SATURATION_INTENSITY,
            fine_structure_splitting: LITHIUM6_FINE_STRUCTURE_HZ,
        }
    }

    /// Look up a built-in species by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "lithium6" | "li6" | "lithium-6" | "6li" => Some(Self::lithium6()),
            _ => None,
        }
    }

    /// Parse a species description of `key=value` lines:
    /// `mass_amu`, `wavelength_nm`, `gamma_MHz` (Γ/2π), `isat_mW_cm2`,
    /// `fs_split_GHz`. Blank lines and `#` comments are ignored; all five
    /// keys are required.
    pub fn from_key_value_str(text: &str) -> Result<Self> {
        let mut mass_amu = None;
        let mut wavelength_nm = None;
        let mut gamma_mhz = None;
        let mut isat = None;
        let mut fs = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                detail: format!("expected key=value, found `{line}`"),
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                detail: format!("`{}` is not a number", value.trim()),
            })?;
            let slot = match key {
                "mass_amu" => &mut mass_amu,
                "wavelength_nm" => &mut wavelength_nm,
                "gamma_MHz" => &mut gamma_mhz,
                "isat_mW_cm2" => &mut isat,
                "fs_split_GHz" => &mut fs,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        detail: format!("unknown species key `{other}`"),
                    })
                }
            };
            if slot.replace(value).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    detail: format!("duplicate key `{key}`"),
                });
            }
        }
        let missing = |name: &str| Error::Parse {
            line: 0,
            detail: format!("missing species key `{name}`"),
        };
        let mass_amu = mass_amu.ok_or_else(|| missing("mass_amu"))?;
        let wavelength_nm = wavelength_nm.ok_or_else(|| missing("wavelength_nm"))?;
        let gamma_mhz = gamma_mhz.ok_or_else(|| missing("gamma_MHz"))?;
        let isat = isat.ok_or_else(|| missing("isat_mW_cm2"))?;
        let fs = fs.ok_or_else(|| missing("fs_split_GHz"))?;
        Self::new(
            mass_amu * ATOMIC_MASS_UNIT,
            wavelength_nm * 1e-9,
            2.0 * PI * gamma_mhz * 1e6,
            isat * 10.0,
            fs * 1e9,
        )
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_key_value_str(&text)
    }

    /// Canonical `key=value` text accepted by [`Self::from_key_value_str`].
    pub fn to_key_value_string(&self) -> String {
        format!(
            "mass_amu={}\nwavelength_nm={}\ngamma_MHz={}\nisat_mW_cm2={}\nfs_split_GHz={}\n",
            self.mass / ATOMIC_MASS_UNIT,
            self.wavelength * 1e9,
            self.linewidth / (2.0 * PI) / 1e6,
            self.saturation_intensity / 10.0,
            self.fine_structure_splitting / 1e9,
        )
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Γ in rad/s.
    pub fn linewidth(&self) -> f64 {
        self.linewidth
    }

    pub fn saturation_intensity(&self) -> f64 {
        self.saturation_intensity
    }

    pub fn fine_structure_splitting(&self) -> f64 {
        self.fine_structure_splitting
    }

    /// Photon wavenumber k = 2π/λ.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// ƛ = λ/2π = 1/k.
    pub fn reduced_wavelength(&self) -> f64 {
        self.wavelength / (2.0 * PI)
    }

    /// Single-photon recoil energy ħ²k²/2m in J.
    pub fn recoil_energy(&self) -> f64 {
        let k = self.wavenumber();
        HBAR * HBAR * k * k / (2.0 * self.mass)
    }

    /// Recoil energy expressed as a frequency E/h in Hz.
    pub fn recoil_frequency(&self) -> f64 {
        self.recoil_energy() / PLANCK
    }

    /// Momentum transfer q = 2k sin(θ/2) for scattering angle θ ∈ (0, π].
    pub fn momentum_transfer(&self, theta: f64) -> Result<f64> {
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::domain(
                "momentum_transfer",
                format!("scattering angle {theta} rad outside (0, π]"),
            ));
        }
        Ok(2.0 * self.wavenumber() * (0.5 * theta).sin())
    }

    /// |nα| for the two-level polarizability α = 6πƛ³Γ/(Δ + iΓ).
    pub fn polarizability_parameter(&self, density: f64, detuning: f64) -> f64 {
        let lb = self.reduced_wavelength();
        let gamma = self.linewidth;
        density * 6.0 * PI * lb.powi(3) * gamma / detuning.hypot(gamma)
    }

    /// Resonant optical density 6π n ƛ² l.
    pub fn resonant_optical_density(&self, density: f64, length: f64) -> f64 {
        6.0 * PI * density * self.reduced_wavelength().powi(2) * length
    }

    /// Two-level steady-state photon scattering rate per atom (1/s):
    /// (Γ/2) s / (1 + s + (2Δ/Γ)²) with s = I/I_sat.
    pub fn rayleigh_rate(&self, intensity: f64, detuning: f64) -> f64 {
        let s = intensity / self.saturation_intensity;
        let d = 2.0 * detuning / self.linewidth;
        0.5 * self.linewidth * s / (1.0 + s + d * d)
    }

    /// Low-intensity limit of [`Self::rayleigh_rate`], exactly linear in intensity.
    pub fn rayleigh_rate_linear(&self, intensity: f64, detuning: f64) -> f64 {
        let s = intensity / self.saturation_intensity;
        let d = 2.0 * detuning / self.linewidth;
        0.5 * self.linewidth * s / (1.0 + d * d)
    }
}

impl Default for AtomSpecies {
    fn default() -> Self {
        Self::lithium6()
    }
}

/// Detection geometry: angle between incident and scattered wavevectors and
/// the (signed, angular) probe detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringGeometry {
    angle: f64,
    detuning: f64,
}

impl ScatteringGeometry {
    pub fn new(angle: f64, detuning: f64) -> Result<Self> {
        if !(angle > 0.0 && angle <= PI) {
            return Err(Error::domain(
                "ScatteringGeometry::new",
                format!("angle {angle} rad outside (0, π]"),
            ));
        }
        if !detuning.is_finite() {
            return Err(Error::domain("ScatteringGeometry::new", "detuning must be finite"));
        }
        Ok(Self { angle, detuning })
    }

    /// Right-angle detection.
    pub fn right_angle(detuning: f64) -> Self {
        Self {
            angle: 0.5 * PI,
            detuning,
        }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    /// |k_i| = |k_f| = k for elastic scattering.
    pub fn photon_wavenumber(&self, species: &AtomSpecies) -> f64 {
        species.wavenumber()
    }

    pub fn momentum_transfer(&self, species: &AtomSpecies) -> f64 {
        2.0 * species.wavenumber() * (0.5 * self.angle).sin()
    }
}
