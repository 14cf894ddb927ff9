//! Recoil heating of a trapped Fermi gas during a probe pulse.
//!
//! The gas is assumed to stay in equilibrium. Its state is the reduced
//! energy e = E/(N k_B T_F) together with the cumulative photon number per
//! atom Φ; both grow at the suppressed scattering rate R₀β̄(T):
//!
//!   dΦ/dt = R₀ β̄(T),   de/dt = R₀ β̄(T) · ε_heat / (k_B T_F)
//!
//! so that E(t) - E(0) = N Φ(t) ε_heat holds along any trajectory.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::constants::BOLTZMANN;
use crate::error::{Error, Result};
use crate::numeric::interp::MonotoneCubic;
use crate::numeric::linfit::fit_line;
use crate::numeric::ode::{self, OdeOptions};
use crate::numeric::quadrature::{try_integrate, QuadOptions};
use crate::numeric::spaced_grid;
use crate::species::AtomSpecies;
use crate::thermo::{invert_energy_to_temperature, reduced_trap_energy, trapped_eta, ThermoState, TrapConfig};
use crate::trap::{beam_overlap_factor, trap_suppression_kernel, ProbeBeam};

/// Weighting of emission directions when averaging the suppression factor
/// over all scattered photons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleAverage {
    /// Uniform over the sphere.
    #[default]
    Isotropic,
    /// Unpolarized dipole pattern (3/8)(1 + cos²θ) per unit d(cos θ).
    Dipole,
}

impl AngleAverage {
    pub fn name(self) -> &'static str {
        match self {
            AngleAverage::Isotropic => "isotropic",
            AngleAverage::Dipole => "dipole",
        }
    }

    /// Weight per unit u = q/k, where cos θ = 1 - u²/2 and u ∈ [0, 2].
    fn weight(self, u: f64) -> f64 {
        match self {
            AngleAverage::Isotropic => 0.5 * u,
            AngleAverage::Dipole => {
                let c = 1.0 - 0.5 * u * u;
                0.375 * (1.0 + c * c) * u
            }
        }
    }
}

impl fmt::Display for AngleAverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AngleAverage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "isotropic" => Ok(AngleAverage::Isotropic),
            "dipole" => Ok(AngleAverage::Dipole),
            other => Err(Error::domain(
                "angle average",
                format!("unknown angle average '{other}' (expected isotropic or dipole)"),
            )),
        }
    }
}

/// Trap-averaged suppression of the total scattering rate at reduced
/// temperature t, averaged over emission directions.
pub fn total_suppression(species: &AtomSpecies, trap: &TrapConfig, t_over_tf: f64, angle: AngleAverage) -> Result<f64> {
    let eta0 = trapped_eta(t_over_tf)?;
    // Q = q/k_T with k_T = k_F √t
    let k_over_kt = species.wavenumber() / (trap.fermi_wavenumber(species) * t_over_tf.sqrt());
    let est = try_integrate(
        |u| Ok(angle.weight(u) * trap_suppression_kernel(eta0, u * k_over_kt)?),
        0.0,
        2.0,
        &[],
        QuadOptions::relative(1e-7),
    )?;
    Ok(est.value.clamp(0.0, 1.0))
}

/// Precomputed total suppression β̄(t), interpolated monotonically in ln t.
/// Temperatures outside the tabulated range are evaluated directly.
#[derive(Debug, Clone)]
pub struct SuppressionTable {
    species: AtomSpecies,
    trap: TrapConfig,
    angle: AngleAverage,
    spline: MonotoneCubic,
}

impl SuppressionTable {
    pub fn build(
        species: &AtomSpecies,
        trap: &TrapConfig,
        angle: AngleAverage,
        t_min: f64,
        t_max: f64,
        nodes: usize,
    ) -> Result<Self> {
        if !(t_min > 0.0 && t_max > t_min && nodes >= 4) {
            return Err(Error::domain(
                "suppression table",
                format!("need 0 < t_min < t_max and ≥ 4 nodes (got {t_min}, {t_max}, {nodes})"),
            ));
        }
        let ts = spaced_grid(t_min, t_max, nodes, true);
        let values = ts
            .par_iter()
            .map(|&t| total_suppression(species, trap, t, angle))
            .collect::<Result<Vec<_>>>()?;
        let spline = MonotoneCubic::new(ts.iter().map(|t| t.ln()).collect(), values)?;
        Ok(Self {
            species: *species,
            trap: *trap,
            angle,
            spline,
        })
    }

    pub fn range(&self) -> (f64, f64) {
        let (a, b) = self.spline.domain();
        (a.exp(), b.exp())
    }

    pub fn eval(&self, t_over_tf: f64) -> Result<f64> {
        let (lo, hi) = self.spline.domain();
        let x = t_over_tf.ln();
        if x >= lo && x <= hi {
            Ok(self.spline.eval(x))
        } else {
            total_suppression(&self.species, &self.trap, t_over_tf, self.angle)
        }
    }
}

/// Upper end of the default suppression table in T/T_F.
pub const TABLE_T_MAX: f64 = 12.0;

/// Default number of table nodes.
pub const TABLE_NODES: usize = 48;

/// Parameters of a simulated probe pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSimConfig {
    pub species: AtomSpecies,
    pub trap: TrapConfig,
    pub beam: ProbeBeam,
    pub initial_t_over_tf: f64,
    /// Energy deposited per scattered photon (J).
    pub heat_per_event: f64,
    /// Scale the scattering rate by the cloud/beam overlap.
    pub include_overlap: bool,
    pub angle_average: AngleAverage,
    /// When false the suppression factor is fixed at 1 (unblocked control).
    pub blocking: bool,
    pub ode: OdeOptions,
}

impl PulseSimConfig {
    /// Defaults: two recoil energies per event, overlap off, isotropic
    /// averaging, blocking on, local error tolerance 1e-6.
    pub fn new(species: AtomSpecies, trap: TrapConfig, beam: ProbeBeam, initial_t_over_tf: f64) -> Self {
        Self {
            species,
            trap,
            beam,
            initial_t_over_tf,
            heat_per_event: 2.0 * species.recoil_energy(),
            include_overlap: false,
            angle_average: AngleAverage::Isotropic,
            blocking: true,
            ode: OdeOptions {
                rtol: 1e-6,
                atol: 1e-10,
                ..OdeOptions::default()
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_t_over_tf.is_finite() && self.initial_t_over_tf > 0.0) {
            return Err(Error::domain(
                "PulseSimConfig",
                format!("initial T/T_F = {} must be positive", self.initial_t_over_tf),
            ));
        }
        if !(self.heat_per_event.is_finite() && self.heat_per_event >= 0.0) {
            return Err(Error::domain(
                "PulseSimConfig",
                format!("heat per event {} J must be ≥ 0", self.heat_per_event),
            ));
        }
        Ok(())
    }

    /// Unsuppressed scattering rate per atom at the beam center (1/s), in the
    /// weak-probe limit where it is linear in power.
    pub fn bare_rate(&self) -> f64 {
        self.species
            .rayleigh_rate_linear(self.beam.peak_intensity(), self.beam.detuning())
    }

    /// Suppression table covering the temperatures a pulse starting at the
    /// configured initial temperature can reach.
    pub fn suppression_table(&self) -> Result<Option<SuppressionTable>> {
        if !self.blocking {
            return Ok(None);
        }
        let t_max = TABLE_T_MAX.max(2.0 * self.initial_t_over_tf);
        SuppressionTable::build(
            &self.species,
            &self.trap,
            self.angle_average,
            0.98 * self.initial_t_over_tf,
            t_max,
            TABLE_NODES,
        )
        .map(Some)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    /// Time since the start of the pulse (s).
    pub time: f64,
    pub t_over_tf: f64,
    /// Cumulative scattered photons per atom.
    pub photons: f64,
    /// Instantaneous scattering rate per atom (1/s).
    pub rate: f64,
    /// Total energy of the cloud (J).
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatingTrajectory {
    pub points: Vec<TrajectoryPoint>,
}

impl HeatingTrajectory {
    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }
}

/// A failed integration with the trajectory computed up to the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatingFailure {
    pub error: Error,
    pub partial: HeatingTrajectory,
}

impl From<HeatingFailure> for Error {
    fn from(f: HeatingFailure) -> Self {
        f.error
    }
}

struct Dynamics<'a> {
    config: &'a PulseSimConfig,
    table: Option<&'a SuppressionTable>,
    bare_rate: f64,
    energy_scale: f64,
}

impl Dynamics<'_> {
    fn t_over_tf(&self, e: f64) -> Result<f64> {
        let trap = &self.config.trap;
        Ok(invert_energy_to_temperature(trap, e * self.energy_scale)? / trap.fermi_temperature())
    }

    fn rate(&self, t_over_tf: f64) -> Result<f64> {
        if self.bare_rate == 0.0 {
            return Ok(0.0);
        }
        let mut rate = self.bare_rate;
        if let Some(table) = self.table {
            rate *= table.eval(t_over_tf)?;
        }
        if self.config.include_overlap {
            let state = ThermoState::trapped_at_reduced_temperature(self.config.species, self.config.trap, t_over_tf)?;
            rate *= beam_overlap_factor(&state, &self.config.beam)?;
        }
        Ok(rate)
    }

    fn point(&self, time: f64, y: &[f64; 2]) -> Result<TrajectoryPoint> {
        let t = self.t_over_tf(y[0])?;
        Ok(TrajectoryPoint {
            time,
            t_over_tf: t,
            photons: y[1],
            rate: self.rate(t)?,
            energy: y[0] * self.energy_scale,
        })
    }
}

/// Integrate the heating dynamics over the beam's pulse duration, using a
/// precomputed suppression table (pass `None` only when blocking is off).
pub fn evolve_heating_with_table(
    config: &PulseSimConfig,
    table: Option<&SuppressionTable>,
) -> std::result::Result<HeatingTrajectory, HeatingFailure> {
    let fail = |error: Error| HeatingFailure {
        error,
        partial: HeatingTrajectory::default(),
    };
    config.validate().map_err(fail)?;
    if config.blocking && table.is_none() {
        return Err(fail(Error::domain("evolve_heating", "blocking enabled but no suppression table given")));
    }
    let trap = &config.trap;
    let dynamics = Dynamics {
        config,
        table: if config.blocking { table } else { None },
        bare_rate: config.bare_rate(),
        energy_scale: trap.atom_number() * trap.fermi_energy(),
    };
    let heat = config.heat_per_event / (BOLTZMANN * trap.fermi_temperature());
    let e0 = trapped_eta(config.initial_t_over_tf)
        .and_then(reduced_trap_energy)
        .map_err(fail)?;

    let rhs = |_t: f64, y: &[f64; 2]| -> Result<[f64; 2]> {
        let r = dynamics.rate(dynamics.t_over_tf(y[0])?)?;
        Ok([r * heat, r])
    };
    let to_trajectory = |sol: &ode::OdeSolution<2>| -> Result<HeatingTrajectory> {
        let points = sol
            .t
            .iter()
            .zip(&sol.y)
            .map(|(&time, y)| dynamics.point(time, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(HeatingTrajectory { points })
    };

    match ode::integrate(rhs, 0.0, [e0, 0.0], config.beam.pulse_duration(), config.ode) {
        Ok(sol) => to_trajectory(&sol).map_err(fail),
        Err(failure) => Err(HeatingFailure {
            error: failure.error,
            partial: to_trajectory(&failure.partial).unwrap_or_default(),
        }),
    }
}

/// Integrate the heating dynamics for one pulse.
pub fn evolve_heating(config: &PulseSimConfig) -> std::result::Result<HeatingTrajectory, HeatingFailure> {
    let table = config.suppression_table().map_err(|error| HeatingFailure {
        error,
        partial: HeatingTrajectory::default(),
    })?;
    evolve_heating_with_table(config, table.as_ref())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRow {
    /// Probe power (W).
    pub power: f64,
    pub photons_per_atom: f64,
    pub final_t_over_tf: f64,
}

/// Photons scattered per atom over one pulse for each probe power (W).
/// Powers are simulated in parallel; rows follow the input order.
pub fn photons_vs_power(config: &PulseSimConfig, powers: &[f64]) -> Result<Vec<PowerRow>> {
    if powers.is_empty() {
        return Err(Error::domain("photons_vs_power", "power grid is empty"));
    }
    if powers.iter().any(|p| !(p.is_finite() && *p > 0.0)) || powers.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "photons_vs_power",
            "power grid must be positive and strictly increasing",
        ));
    }
    let table = config.suppression_table()?;
    powers
        .par_iter()
        .map(|&power| {
            let cfg = PulseSimConfig {
                beam: config.beam.with_power(power)?,
                ..*config
            };
            let traj = evolve_heating_with_table(&cfg, table.as_ref())?;
            let last = traj.last().expect("trajectory holds the initial point");
            Ok(PowerRow {
                power,
                photons_per_atom: last.photons,
                final_t_over_tf: last.t_over_tf,
            })
        })
        .collect()
}

/// Straight-line fits to the low- and high-power ends of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSlope {
    /// Photons per atom per W.
    pub slope_low: f64,
    pub slope_high: f64,
    /// Photons per atom at zero power extrapolated from the high-power line.
    pub intercept_high: f64,
    pub points_low: usize,
    pub points_high: usize,
}

/// Number of points assigned to a region holding `fraction` of `n` points.
fn region_size(n: usize, fraction: f64) -> usize {
    (fraction * n as f64).round() as usize
}

/// Ordinary least-squares lines through the lowest `low_fraction` and the
/// highest `high_fraction` of the rows (ordered by power).
pub fn two_slope_analysis(rows: &[PowerRow], low_fraction: f64, high_fraction: f64) -> Result<TwoSlope> {
    for f in [low_fraction, high_fraction] {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::domain("two_slope_analysis", format!("fraction {f} outside (0, 1]")));
        }
    }
    let n = rows.len();
    let n_low = region_size(n, low_fraction);
    let n_high = region_size(n, high_fraction);
    if n_low < 4 || n_high < 4 {
        return Err(Error::Fit(format!(
            "need at least 4 points per region; {n} rows give {n_low} low and {n_high} high"
        )));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| a.power.total_cmp(&b.power));
    let line = |part: &[PowerRow]| {
        let x: Vec<f64> = part.iter().map(|r| r.power).collect();
        let y: Vec<f64> = part.iter().map(|r| r.photons_per_atom).collect();
        fit_line(&x, &y, None)
    };
    let low = line(&sorted[..n_low])?;
    let high = line(&sorted[n - n_high..])?;
    Ok(TwoSlope {
        slope_low: low.slope,
        slope_high: high.slope,
        intercept_high: high.intercept,
        points_low: n_low,
        points_high: n_high,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::total_energy_trapped;
    use std::f64::consts::PI;

    fn li() -> AtomSpecies {
        AtomSpecies::lithium6()
    }

    fn trap() -> TrapConfig {
        TrapConfig::from_hz(34e3, 770.0, 6e5).unwrap()
    }

    fn config(power: f64) -> PulseSimConfig {
        let beam = ProbeBeam::new(110e-6, power, -2.0 * PI * 112e9, 50e-3).unwrap();
        PulseSimConfig::new(li(), trap(), beam, 0.2)
    }

    #[test]
    fn angle_weights_normalized() {
        for angle in [AngleAverage::Isotropic, AngleAverage::Dipole] {
            let est = crate::numeric::quadrature::integrate(|u| angle.weight(u), 0.0, 2.0, &[], QuadOptions::default())
                .unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn total_suppression_bounds() {
        let cold = total_suppression(&li(), &trap(), 0.2, AngleAverage::Isotropic).unwrap();
        let hot = total_suppression(&li(), &trap(), 3.0, AngleAverage::Isotropic).unwrap();
        let right_angle = crate::trap::suppression_trap_averaged(
            &ThermoState::trapped_at_reduced_temperature(li(), trap(), 0.2).unwrap(),
            li().momentum_transfer(0.5 * PI).unwrap(),
        )
        .unwrap();
        assert!(cold > 0.0 && cold < hot && hot < 1.0);
        // forward-scattered photons carry little momentum and are blocked most
        assert!(cold < right_angle);
    }

    #[test]
    fn table_tracks_direct_evaluation() {
        let table = SuppressionTable::build(&li(), &trap(), AngleAverage::Dipole, 0.15, 4.0, 32).unwrap();
        for &t in &[0.17, 0.33, 0.9, 2.2, 3.7] {
            let direct = total_suppression(&li(), &trap(), t, AngleAverage::Dipole).unwrap();
            assert!((table.eval(t).unwrap() - direct).abs() < 1e-4, "t={t}");
        }
        let outside = table.eval(6.0).unwrap();
        let direct = total_suppression(&li(), &trap(), 6.0, AngleAverage::Dipole).unwrap();
        assert_eq!(outside, direct);
    }

    #[test]
    fn zero_power_is_static() {
        let traj = evolve_heating(&config(0.0)).unwrap();
        for p in &traj.points {
            assert_eq!(p.photons, 0.0);
            assert!((p.t_over_tf / 0.2 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn unblocked_rate_is_linear() {
        let mut cfg = config(3e-3);
        cfg.blocking = false;
        let traj = evolve_heating(&cfg).unwrap();
        let r0 = cfg.bare_rate();
        for p in &traj.points {
            assert!((p.photons - r0 * p.time).abs() <= 1e-12 * (1.0 + r0 * p.time));
        }
    }

    #[test]
    fn energy_bookkeeping() {
        for include_overlap in [false, true] {
            let mut cfg = config(4e-3);
            cfg.include_overlap = include_overlap;
            let traj = evolve_heating(&cfg).unwrap();
            let first = traj.points[0];
            let last = *traj.last().unwrap();
            let e_end = total_energy_trapped(
                &ThermoState::trapped_at_reduced_temperature(li(), trap(), last.t_over_tf).unwrap(),
            )
            .unwrap();
            let e_start = total_energy_trapped(&ThermoState::trapped_at_reduced_temperature(li(), trap(), 0.2).unwrap())
                .unwrap();
            let deposited = trap().atom_number() * last.photons * cfg.heat_per_event;
            assert!(((e_end - e_start) / deposited - 1.0).abs() < 1e-5);
            assert!(((last.energy - first.energy) / deposited - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn trajectory_monotone() {
        let traj = evolve_heating(&config(6e-3)).unwrap();
        assert_eq!(traj.points[0].photons, 0.0);
        for w in traj.points.windows(2) {
            assert!(w[1].t_over_tf >= w[0].t_over_tf);
            assert!(w[1].photons >= w[0].photons);
            assert!(w[1].time > w[0].time);
        }
        assert!(traj.last().unwrap().t_over_tf > 0.3);
    }

    #[test]
    fn tolerance_convergence() {
        let cfg = config(5e-3);
        let table = cfg.suppression_table().unwrap();
        let coarse = evolve_heating_with_table(&cfg, table.as_ref()).unwrap();
        let mut fine = cfg;
        fine.ode.rtol *= 0.5;
        fine.ode.atol *= 0.5;
        let fine = evolve_heating_with_table(&fine, table.as_ref()).unwrap();
        let a = coarse.last().unwrap().photons;
        let b = fine.last().unwrap().photons;
        assert!((a / b - 1.0).abs() < 1e-5);
    }

    #[test]
    fn low_power_slope_is_initial_suppression() {
        let cfg = config(1e-3);
        let rows = photons_vs_power(&cfg, &[1e-7, 2e-7]).unwrap();
        let numeric = (rows[1].photons_per_atom - rows[0].photons_per_atom) / (rows[1].power - rows[0].power);
        let s0 = cfg.suppression_table().unwrap().unwrap().eval(0.2).unwrap();
        let drdp = cfg.bare_rate() / 1e-3;
        let expected = s0 * drdp * 50e-3;
        assert!((numeric / expected - 1.0).abs() < 1e-3);
        assert!(numeric < drdp * 50e-3);
    }

    #[test]
    fn sweep_shows_two_slopes() {
        let powers = spaced_grid(0.25e-3, 8e-3, 16, false);
        let cfg = config(1e-3);
        let rows = photons_vs_power(&cfg, &powers).unwrap();
        assert!(rows.windows(2).all(|w| w[1].photons_per_atom > w[0].photons_per_atom));
        assert!(rows.windows(2).all(|w| w[1].final_t_over_tf > w[0].final_t_over_tf));
        let fit = two_slope_analysis(&rows, 0.3, 0.3).unwrap();
        assert!(fit.slope_low < fit.slope_high);
        assert!(fit.intercept_high < 0.0);
        let s0 = cfg.suppression_table().unwrap().unwrap().eval(0.2).unwrap();
        let r_max = cfg.beam.with_power(8e-3).unwrap().peak_intensity();
        let bound = (1.0 - s0) * li().rayleigh_rate_linear(r_max, cfg.beam.detuning()) * 50e-3;
        assert!(fit.intercept_high.abs() <= bound);

        let mut unblocked = cfg;
        unblocked.blocking = false;
        let rows = photons_vs_power(&unblocked, &powers).unwrap();
        let fit = two_slope_analysis(&rows, 0.3, 0.3).unwrap();
        assert!((fit.slope_low / fit.slope_high - 1.0).abs() < 1e-10);
        assert!(fit.intercept_high.abs() < 1e-8);
    }

    #[test]
    fn two_slope_exact_lines() {
        let rows: Vec<PowerRow> = (0..12)
            .map(|i| {
                let p = 1e-3 * (i + 1) as f64;
                let y = if i < 6 { 300.0 * p } else { 500.0 * p - 1.2 };
                PowerRow {
                    power: p,
                    photons_per_atom: y,
                    final_t_over_tf: 0.2,
                }
            })
            .collect();
        let fit = two_slope_analysis(&rows, 0.4, 0.4).unwrap();
        assert!((fit.slope_low - 300.0).abs() < 1e-12 * 300.0);
        assert!((fit.slope_high - 500.0).abs() < 1e-12 * 500.0);
        assert!((fit.intercept_high + 1.2).abs() < 1e-12);
    }

    #[test]
    fn two_slope_rejects_small_or_degenerate_regions() {
        let rows: Vec<PowerRow> = (0..6)
            .map(|i| PowerRow {
                power: 1.0 + i as f64,
                photons_per_atom: 1.0,
                final_t_over_tf: 0.2,
            })
            .collect();
        assert!(matches!(two_slope_analysis(&rows, 0.3, 0.3), Err(Error::Fit(_))));
        let flat: Vec<PowerRow> = (0..8)
            .map(|_| PowerRow {
                power: 1.0,
                photons_per_atom: 1.0,
                final_t_over_tf: 0.2,
            })
            .collect();
        assert!(matches!(two_slope_analysis(&flat, 0.5, 0.5), Err(Error::Fit(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = config(1e-3);
        cfg.initial_t_over_tf = 0.0;
        assert!(evolve_heating(&cfg).is_err());
        let mut cfg = config(1e-3);
        cfg.heat_per_event = -1.0;
        assert!(cfg.validate().is_err());
        assert!(photons_vs_power(&config(1e-3), &[2e-3, 1e-3]).is_err());
        assert_eq!("Dipole".parse::<AngleAverage>().unwrap(), AngleAverage::Dipole);
        assert!("cardioid".parse::<AngleAverage>().is_err());
    }
}
