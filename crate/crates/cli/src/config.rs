//! Run configuration: a plain `key=value` file with `[section]` headers.
//!
//! Every key is optional and falls back to the defaults below, which describe
//! the lithium-6 sample used throughout. [`RunConfig::to_canonical`] writes
//! all keys in a fixed order; parsing that text gives back the same config.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pauli_core::heating::{AngleAverage, PulseSimConfig};
use pauli_core::numeric::spaced_grid;
use pauli_core::species::AtomSpecies;
use pauli_core::structure::Statistics;
use pauli_core::thermo::TrapConfig;
use pauli_core::trap::{Detection, ProbeBeam};

use crate::error::{CliError, Result};
use crate::format::Format;

/// Sweep specification `min:max:count[:log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl Grid {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("grid '{s}' is not min:max:count[:log]"));
        }
        let min = parse_f64(parts[0])?;
        let max = parse_f64(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("grid count '{}' is not a whole number", parts[2]))?;
        let log = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(other) => return Err(format!("grid spacing '{other}' must be lin or log")),
        };
        if count == 0 {
            return Err(format!("grid '{s}' is empty"));
        }
        if count > 1 && !(max > min) {
            return Err(format!("grid '{s}' must increase (max > min)"));
        }
        if log && !(min > 0.0) {
            return Err(format!("log grid '{s}' needs min > 0"));
        }
        Ok(Self { min, max, count, log })
    }

    pub fn values(&self) -> Vec<f64> {
        spaced_grid(self.min, self.max, self.count, self.log)
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)?;
        if self.log {
            f.write_str(":log")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpeciesSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub species: SpeciesSource,

    pub freq_r_hz: f64,
    pub freq_z_hz: f64,
    pub atom_number: f64,

    pub waist_um: f64,
    pub power_mw: f64,
    pub detuning_ghz: f64,
    pub pulse_ms: f64,

    pub angle_deg: f64,
    pub aperture_average: bool,
    pub numerical_aperture: f64,

    pub t_over_tf: f64,

    pub initial_t_over_tf: f64,
    pub heat_per_event_recoils: f64,
    pub include_overlap: bool,
    pub angle_average: AngleAverage,
    pub blocking: bool,
    pub low_fraction: f64,
    pub high_fraction: f64,
    pub heating_pulse_ms: f64,
    pub heating_detuning_ghz: f64,

    pub grid_t_over_tf: Grid,
    pub grid_power_mw: Grid,
    pub grid_delta_ghz: Grid,
    pub grid_q_lambda: Grid,

    pub phase_space_density: f64,
    pub statistics: Statistics,

    pub gamma: f64,
    pub amplitude: f64,
    pub delta_min_ghz: Option<f64>,

    pub density_per_lambdabar3: f64,
    pub length_um: f64,
    pub diagnostics_detuning_ghz: f64,

    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            species: SpeciesSource::Builtin("lithium6".into()),
            freq_r_hz: 34e3,
            freq_z_hz: 770.0,
            atom_number: 6e5,
            waist_um: 110.0,
            power_mw: 2.35,
            detuning_ghz: -100.0,
            pulse_ms: 25.0,
            angle_deg: 90.0,
            aperture_average: false,
            numerical_aperture: 0.27,
            t_over_tf: 0.2,
            initial_t_over_tf: 0.2,
            heat_per_event_recoils: 2.0,
            include_overlap: false,
            angle_average: AngleAverage::Isotropic,
            blocking: true,
            low_fraction: 0.3,
            high_fraction: 0.3,
            heating_pulse_ms: 50.0,
            heating_detuning_ghz: -112.0,
            grid_t_over_tf: Grid {
                min: 0.15,
                max: 3.0,
                count: 40,
                log: true,
            },
            grid_power_mw: Grid {
                min: 0.25,
                max: 8.0,
                count: 16,
                log: false,
            },
            grid_delta_ghz: Grid {
                min: 100.0,
                max: 500.0,
                count: 9,
                log: true,
            },
            grid_q_lambda: Grid {
                min: 0.0,
                max: 10.0,
                count: 101,
                log: false,
            },
            phase_space_density: 0.1,
            statistics: Statistics::Fermion,
            gamma: 2.0,
            amplitude: 1.0,
            delta_min_ghz: None,
            density_per_lambdabar3: 3.4,
            length_um: 112.0,
            diagnostics_detuning_ghz: 500.0,
            format: Format::Csv,
        }
    }
}

const SECTIONS: [&str; 11] = [
    "species",
    "trap",
    "beam",
    "scattering",
    "sample",
    "heating",
    "grids",
    "structure",
    "inelastic",
    "diagnostics",
    "output",
];

fn parse_f64(v: &str) -> std::result::Result<f64, String> {
    let x: f64 = v.trim().parse().map_err(|_| format!("'{v}' is not a number"))?;
    if !x.is_finite() {
        return Err(format!("'{v}' is not finite"));
    }
    Ok(x)
}

fn positive(v: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be positive"))
    }
}

fn nonnegative(v: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be ≥ 0"))
    }
}

fn fraction(v: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(v)?;
    if x > 0.0 && x <= 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} must lie in (0, 1]"))
    }
}

fn nonzero(v: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(v)?;
    if x != 0.0 {
        Ok(x)
    } else {
        Err("detuning must be nonzero".into())
    }
}

fn boolean(v: &str) -> std::result::Result<bool, String> {
    match v.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(format!("'{other}' is not true or false")),
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(d) => CliError::Config(format!("{}: {d}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut section: Option<&str> = None;
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                section = Some(
                    SECTIONS
                        .iter()
                        .copied()
                        .find(|s| *s == name)
                        .ok_or_else(|| CliError::config(format!("line {line_no}: unknown section [{name}]")))?,
                );
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!("line {line_no}: expected key=value, got '{line}'")));
            };
            let Some(sec) = section else {
                return Err(CliError::config(format!("line {line_no}: key '{}' outside any [section]", key.trim())));
            };
            let key = key.trim();
            if !seen.insert((sec, key.to_string())) {
                return Err(CliError::config(format!("line {line_no}: duplicate key {key} in [{sec}]")));
            }
            cfg.set(sec, key, value.trim())
                .map_err(|d| CliError::config(format!("line {line_no}: [{sec}] {key}: {d}")))?;
        }
        Ok(cfg)
    }

    /// Assign one key; the error string is prefixed with the location by the caller.
    pub fn set(&mut self, section: &str, key: &str, value: &str) -> std::result::Result<(), String> {
        match (section, key) {
            ("species", "builtin") => {
                if AtomSpecies::builtin(value).is_none() {
                    return Err(format!("unknown builtin species '{value}'"));
                }
                self.species = SpeciesSource::Builtin(value.to_string());
            }
            ("species", "file") => {
                if value.is_empty() {
                    return Err("empty path".into());
                }
                self.species = SpeciesSource::File(PathBuf::from(value));
            }
            ("trap", "freq_r_hz") => self.freq_r_hz = positive(value)?,
            ("trap", "freq_z_hz") => self.freq_z_hz = positive(value)?,
            ("trap", "atom_number") => self.atom_number = positive(value)?,
            ("beam", "waist_um") => self.waist_um = positive(value)?,
            ("beam", "power_mw") => self.power_mw = nonnegative(value)?,
            ("beam", "detuning_ghz") => self.detuning_ghz = nonzero(value)?,
            ("beam", "pulse_ms") => self.pulse_ms = positive(value)?,
            ("scattering", "angle_deg") => {
                let a = parse_f64(value)?;
                if !(a > 0.0 && a <= 180.0) {
                    return Err(format!("{a} outside (0, 180]"));
                }
                self.angle_deg = a;
            }
            ("scattering", "aperture_average") => self.aperture_average = boolean(value)?,
            ("scattering", "numerical_aperture") => {
                let na = parse_f64(value)?;
                if !(na > 0.0 && na < 1.0) {
                    return Err(format!("{na} outside (0, 1)"));
                }
                self.numerical_aperture = na;
            }
            ("sample", "t_over_tf") => self.t_over_tf = positive(value)?,
            ("heating", "initial_t_over_tf") => self.initial_t_over_tf = positive(value)?,
            ("heating", "heat_per_event_recoils") => self.heat_per_event_recoils = nonnegative(value)?,
            ("heating", "include_overlap") => self.include_overlap = boolean(value)?,
            ("heating", "angle_average") => {
                self.angle_average = value.parse().map_err(|e: pauli_core::Error| e.to_string())?
            }
            ("heating", "blocking") => self.blocking = boolean(value)?,
            ("heating", "low_fraction") => self.low_fraction = fraction(value)?,
            ("heating", "high_fraction") => self.high_fraction = fraction(value)?,
            ("heating", "pulse_ms") => self.heating_pulse_ms = positive(value)?,
            ("heating", "detuning_ghz") => self.heating_detuning_ghz = nonzero(value)?,
            ("grids", name) => self.set_grid(name, value)?,
            ("structure", "phase_space_density") => self.phase_space_density = positive(value)?,
            ("structure", "statistics") => {
                self.statistics = value.parse().map_err(|e: pauli_core::Error| e.to_string())?
            }
            ("inelastic", "gamma") => self.gamma = nonnegative(value)?,
            ("inelastic", "amplitude") => self.amplitude = positive(value)?,
            ("inelastic", "delta_min_ghz") => self.delta_min_ghz = Some(positive(value)?),
            ("diagnostics", "density_per_lambdabar3") => self.density_per_lambdabar3 = positive(value)?,
            ("diagnostics", "length_um") => self.length_um = positive(value)?,
            ("diagnostics", "detuning_ghz") => self.diagnostics_detuning_ghz = parse_f64(value)?,
            ("output", "format") => {
                self.format = Format::parse(value).ok_or_else(|| format!("'{value}' is not csv or json"))?
            }
            _ => return Err("unknown key".into()),
        }
        Ok(())
    }

    pub fn set_grid(&mut self, name: &str, spec: &str) -> std::result::Result<(), String> {
        let grid = Grid::parse(spec)?;
        match name {
            "t_over_tf" | "power_mw" if !(grid.min > 0.0) => {
                return Err(format!("{name} grid must be positive"));
            }
            "delta_ghz" if !(grid.min > 0.0) => {
                return Err("delta_ghz grid must be positive (detuning magnitudes)".into());
            }
            "q_lambda" if grid.min < 0.0 => return Err("q_lambda grid must be ≥ 0".into()),
            _ => {}
        }
        match name {
            "t_over_tf" => self.grid_t_over_tf = grid,
            "power_mw" => self.grid_power_mw = grid,
            "delta_ghz" => self.grid_delta_ghz = grid,
            "q_lambda" => self.grid_q_lambda = grid,
            other => return Err(format!("unknown grid '{other}'")),
        }
        Ok(())
    }

    /// Apply a `--grid name=min:max:count[:log]` override.
    pub fn apply_grid_override(&mut self, arg: &str) -> Result<()> {
        let (name, spec) = arg
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("--grid '{arg}' is not name=min:max:count[:log]")))?;
        self.set_grid(name.trim(), spec)
            .map_err(|d| CliError::config(format!("--grid {arg}: {d}")))
    }

    pub fn to_canonical(&self) -> String {
        let mut s = String::new();
        let mut section = |name: &str, keys: &[(&str, String)]| {
            if !s.is_empty() {
                s.push('\n');
            }
            let _ = writeln!(s, "[{name}]");
            for (k, v) in keys {
                let _ = writeln!(s, "{k}={v}");
            }
        };
        let species = match &self.species {
            SpeciesSource::Builtin(name) => ("builtin", name.clone()),
            SpeciesSource::File(path) => ("file", path.display().to_string()),
        };
        section("species", &[species]);
        section(
            "trap",
            &[
                ("freq_r_hz", self.freq_r_hz.to_string()),
                ("freq_z_hz", self.freq_z_hz.to_string()),
                ("atom_number", self.atom_number.to_string()),
            ],
        );
        section(
            "beam",
            &[
                ("waist_um", self.waist_um.to_string()),
                ("power_mw", self.power_mw.to_string()),
                ("detuning_ghz", self.detuning_ghz.to_string()),
                ("pulse_ms", self.pulse_ms.to_string()),
            ],
        );
        section(
            "scattering",
            &[
                ("angle_deg", self.angle_deg.to_string()),
                ("aperture_average", self.aperture_average.to_string()),
                ("numerical_aperture", self.numerical_aperture.to_string()),
            ],
        );
        section("sample", &[("t_over_tf", self.t_over_tf.to_string())]);
        section(
            "heating",
            &[
                ("initial_t_over_tf", self.initial_t_over_tf.to_string()),
                ("heat_per_event_recoils", self.heat_per_event_recoils.to_string()),
                ("include_overlap", self.include_overlap.to_string()),
                ("angle_average", self.angle_average.to_string()),
                ("blocking", self.blocking.to_string()),
                ("low_fraction", self.low_fraction.to_string()),
                ("high_fraction", self.high_fraction.to_string()),
                ("pulse_ms", self.heating_pulse_ms.to_string()),
                ("detuning_ghz", self.heating_detuning_ghz.to_string()),
            ],
        );
        section(
            "grids",
            &[
                ("t_over_tf", self.grid_t_over_tf.to_string()),
                ("power_mw", self.grid_power_mw.to_string()),
                ("delta_ghz", self.grid_delta_ghz.to_string()),
                ("q_lambda", self.grid_q_lambda.to_string()),
            ],
        );
        section(
            "structure",
            &[
                ("phase_space_density", self.phase_space_density.to_string()),
                ("statistics", self.statistics.name().to_string()),
            ],
        );
        let mut inelastic = vec![("gamma", self.gamma.to_string()), ("amplitude", self.amplitude.to_string())];
        if let Some(d) = self.delta_min_ghz {
            inelastic.push(("delta_min_ghz", d.to_string()));
        }
        section("inelastic", &inelastic);
        section(
            "diagnostics",
            &[
                ("density_per_lambdabar3", self.density_per_lambdabar3.to_string()),
                ("length_um", self.length_um.to_string()),
                ("detuning_ghz", self.diagnostics_detuning_ghz.to_string()),
            ],
        );
        section("output", &[("format", self.format.name().to_string())]);
        s
    }

    pub fn species(&self) -> Result<AtomSpecies> {
        match &self.species {
            SpeciesSource::Builtin(name) => AtomSpecies::builtin(name)
                .ok_or_else(|| CliError::config(format!("unknown builtin species '{name}'"))),
            SpeciesSource::File(path) => AtomSpecies::from_file(path).map_err(|e| match e {
                pauli_core::Error::Io(detail) => CliError::Io {
                    path: path.display().to_string(),
                    detail,
                },
                other => CliError::config(format!("species file {}: {other}", path.display())),
            }),
        }
    }

    pub fn trap(&self) -> Result<TrapConfig> {
        Ok(TrapConfig::from_hz(self.freq_r_hz, self.freq_z_hz, self.atom_number)?)
    }

    /// The imaging probe beam.
    pub fn beam(&self) -> Result<ProbeBeam> {
        Ok(ProbeBeam::new(
            self.waist_um * 1e-6,
            self.power_mw * 1e-3,
            2.0 * PI * self.detuning_ghz * 1e9,
            self.pulse_ms * 1e-3,
        )?)
    }

    /// The beam used for the heating simulations (same waist and power,
    /// heating pulse length and detuning).
    pub fn heating_beam(&self) -> Result<ProbeBeam> {
        Ok(ProbeBeam::new(
            self.waist_um * 1e-6,
            self.power_mw * 1e-3,
            2.0 * PI * self.heating_detuning_ghz * 1e9,
            self.heating_pulse_ms * 1e-3,
        )?)
    }

    pub fn detection(&self) -> Detection {
        let angle = self.angle_deg.to_radians();
        if self.aperture_average {
            Detection::Aperture {
                angle,
                numerical_aperture: self.numerical_aperture,
            }
        } else {
            Detection::Point { angle }
        }
    }

    pub fn pulse_sim(&self) -> Result<PulseSimConfig> {
        let species = self.species()?;
        let mut cfg = PulseSimConfig::new(species, self.trap()?, self.heating_beam()?, self.initial_t_over_tf);
        cfg.heat_per_event = self.heat_per_event_recoils * species.recoil_energy();
        cfg.include_overlap = self.include_overlap;
        cfg.angle_average = self.angle_average;
        cfg.blocking = self.blocking;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let text = RunConfig::default().to_canonical();
        let parsed = RunConfig::parse(&text).unwrap();
        assert_eq!(parsed, RunConfig::default());
        assert_eq!(parsed.to_canonical(), text);
    }

    #[test]
    fn parses_sections_and_comments() {
        let text = "# sample\n[trap]\natom_number = 3e5\n\n[grids]\npower_mw=1:4:7:log\n[inelastic]\ndelta_min_ghz=100\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.atom_number, 3e5);
        assert!(cfg.grid_power_mw.log);
        assert_eq!(cfg.delta_min_ghz, Some(100.0));
        let canon = cfg.to_canonical();
        assert!(canon.contains("atom_number=300000\n"));
        assert!(canon.contains("power_mw=1:4:7:log\n"));
        assert_eq!(RunConfig::parse(&canon).unwrap().to_canonical(), canon);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = RunConfig::parse("[trap]\nfreq_r_hz=34000\nfreq_z_hz=-1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = RunConfig::parse("\n[bogus]\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = RunConfig::parse("freq_r_hz=1\n").unwrap_err();
        assert!(err.to_string().contains("line 1"));
        let err = RunConfig::parse("[trap]\nwhat=1\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
        let err = RunConfig::parse("[trap]\natom_number=1\natom_number=2\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
        let err = RunConfig::parse("[grids]\nt_over_tf=3:1:10\n").unwrap_err();
        assert!(err.to_string().contains("increase"));
        assert!(RunConfig::parse("[trap]\njunk\n").is_err());
        assert_eq!(RunConfig::parse("[trap]\njunk\n").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn grid_forms() {
        let g = Grid::parse("0.15:3:40:log").unwrap();
        assert_eq!(g.to_string(), "0.15:3:40:log");
        assert_eq!(g.values().len(), 40);
        assert!(!Grid::parse("0:10:101:lin").unwrap().log);
        assert!(Grid::parse("0:10:0").is_err());
        assert!(Grid::parse("0:10:5:log").is_err());
        assert!(Grid::parse("1:2").is_err());
        assert!(Grid::parse("1:2:3:cubic").is_err());
        let mut cfg = RunConfig::default();
        cfg.apply_grid_override("power_mw=0.5:4:8").unwrap();
        assert_eq!(cfg.grid_power_mw.count, 8);
        assert!(cfg.apply_grid_override("nope=1:2:3").is_err());
        assert!(cfg.apply_grid_override("power_mw=0:4:8").is_err());
    }
}
