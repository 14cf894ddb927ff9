use std::f64::consts::PI;
use std::path::Path;

use pauli_core::heating::{evolve_heating, photons_vs_power, two_slope_analysis};
use pauli_core::inelastic::{calibrate_fitter, fit_power_law, loss_curve, CalibrationConfig, PowerLawPoint};
use pauli_core::structure::{beta_homogeneous, s_q_gaussian};
use pauli_core::thermo::{
    cloud_rms_widths, mean_density, peak_density, peak_phase_space_density, thermal_wavelength, ThermoState,
};
use pauli_core::trap::{detected_signal_curve, suppression_detected};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::format::{Report, Table};

/// What a command produced, before formatting.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Table),
    Report(Report),
    /// A curve plus a scalar summary of it.
    Both(Table, Report),
    /// Preformatted text, written as is in every format.
    Text(String),
}

pub fn constants(cfg: &RunConfig) -> Result<Output> {
    let s = cfg.species()?;
    let trap = cfg.trap()?;
    let beam = cfg.beam()?;
    let q = s.momentum_transfer(cfg.angle_deg.to_radians())?;
    let kf = trap.fermi_wavenumber(&s);
    let state = ThermoState::trapped_at_reduced_temperature(s, trap, cfg.t_over_tf)?;
    let widths = cloud_rms_widths(&state)?;
    let diag_density = cfg.density_per_lambdabar3 / s.reduced_wavelength().powi(3);
    let report = Report::new()
        .num("recoil_kHz", s.recoil_frequency() * 1e-3)
        .num("t_fermi_uK", trap.fermi_temperature() * 1e6)
        .num("e_fermi_over_recoil", trap.fermi_energy() / s.recoil_energy())
        .num("k_fermi_per_um", kf * 1e-6)
        .num("q_over_k", q / s.wavenumber())
        .num("q_over_kfermi", q / kf)
        .num("t_over_tf", cfg.t_over_tf)
        .num("temperature_uK", state.temperature() * 1e6)
        .num("thermal_wavelength_um", thermal_wavelength(&s, state.temperature()) * 1e6)
        .num("peak_density_cm3", peak_density(&state)? * 1e-6)
        .num("mean_density_cm3", mean_density(&state)? * 1e-6)
        .num("peak_phase_space_density", peak_phase_space_density(&state)?)
        .num("rms_radius_um", widths[0] * 1e6)
        .num("rms_half_length_um", widths[2] * 1e6)
        .num("suppression", suppression_detected(&state, cfg.detection())?)
        .num(
            "n_alpha",
            s.polarizability_parameter(diag_density, 2.0 * PI * cfg.diagnostics_detuning_ghz * 1e9),
        )
        .num("resonant_od", s.resonant_optical_density(diag_density, cfg.length_um * 1e-6))
        .num("peak_intensity_mW_cm2", beam.peak_intensity() * 0.1)
        .num("rayleigh_photons_per_atom", beam.scattering_rate(&s) * beam.pulse_duration());
    Ok(Output::Report(report))
}

pub fn fig2(cfg: &RunConfig) -> Result<Output> {
    let grid = cfg.grid_t_over_tf.values();
    let curve = detected_signal_curve(&cfg.species()?, &cfg.trap()?, &cfg.beam()?, cfg.detection(), &grid)?;
    let col = |f: fn(&pauli_core::trap::SuppressionRow) -> f64| curve.rows.iter().map(f).collect::<Vec<_>>();
    Ok(Output::Table(
        Table::new()
            .column("t_over_tf", col(|r| r.t_over_tf))
            .column("suppression", col(|r| r.suppression))
            .column("overlap", col(|r| r.overlap))
            .column("product", col(|r| r.product)),
    ))
}

pub fn fig3(cfg: &RunConfig) -> Result<Output> {
    let sim = cfg.pulse_sim()?;
    let powers_mw = cfg.grid_power_mw.values();
    let powers: Vec<f64> = powers_mw.iter().map(|p| p * 1e-3).collect();
    let rows = photons_vs_power(&sim, &powers)?;
    let fit = two_slope_analysis(&rows, cfg.low_fraction, cfg.high_fraction)?;
    let table = Table::new()
        .column("power_mw", powers_mw)
        .column("photons_per_atom", rows.iter().map(|r| r.photons_per_atom).collect())
        .column("final_t_over_tf", rows.iter().map(|r| r.final_t_over_tf).collect());
    // slopes per mW to match the power column
    let report = Report::new()
        .num("slope_low", fit.slope_low * 1e-3)
        .num("slope_high", fit.slope_high * 1e-3)
        .num("slope_ratio", fit.slope_low / fit.slope_high)
        .num("intercept_high", fit.intercept_high)
        .int("points_low", fit.points_low as u64)
        .int("points_high", fit.points_high as u64);
    Ok(Output::Both(table, report))
}

pub fn trajectory(cfg: &RunConfig) -> Result<Output> {
    let traj = evolve_heating(&cfg.pulse_sim()?).map_err(pauli_core::Error::from)?;
    let col = |f: fn(&pauli_core::heating::TrajectoryPoint) -> f64| traj.points.iter().map(f).collect::<Vec<_>>();
    Ok(Output::Table(
        Table::new()
            .column("t_ms", col(|p| p.time * 1e3))
            .column("t_over_tf", col(|p| p.t_over_tf))
            .column("photons", col(|p| p.photons))
            .column("rate", col(|p| p.rate)),
    ))
}

pub fn fig4(cfg: &RunConfig) -> Result<Output> {
    let curve = loss_curve(&cfg.grid_delta_ghz.values(), cfg.gamma, cfg.amplitude)?;
    Ok(Output::Table(
        Table::new()
            .column("delta_ghz", curve.iter().map(|p| p.0).collect())
            .column("loss", curve.iter().map(|p| p.1).collect()),
    ))
}

/// Read `delta_ghz,loss[,loss_err]` rows; detunings enter as |Δ|.
pub fn read_loss_csv(path: &Path) -> Result<Vec<PowerLawPoint>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::io(path, e))?;
    let headers = reader.headers().map_err(|e| CliError::io(path, e))?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let (Some(i_delta), Some(i_loss)) = (find("delta_ghz"), find("loss")) else {
        return Err(CliError::config(format!(
            "{}: header must name delta_ghz and loss columns",
            path.display()
        )));
    };
    let i_err = find("loss_err");
    let mut points = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let line = n + 2;
        let record = record.map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let field = |i: usize| -> Result<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::config(format!("{}: line {line}: '{raw}' is not a number", path.display())))
        };
        let mut p = PowerLawPoint::new(field(i_delta)?.abs(), field(i_loss)?);
        if let Some(i) = i_err {
            p.y_err = Some(field(i)?);
        }
        points.push(p);
    }
    Ok(points)
}

pub fn fit(cfg: &RunConfig, input: &Path) -> Result<Output> {
    let points = read_loss_csv(input)?;
    if let Some(min) = cfg.delta_min_ghz {
        if let Some(p) = points.iter().find(|p| p.x < min) {
            return Err(CliError::Refused(format!(
                "|delta| = {} GHz is below delta_min_ghz = {min}; loss there does not follow a power law",
                p.x
            )));
        }
    }
    let fit = fit_power_law(&points)?;
    Ok(Output::Report(
        Report::new()
            .num("exponent", fit.exponent)
            .num("exponent_stderr", fit.exponent_stderr)
            .num("amplitude", fit.amplitude)
            .int("points", fit.points as u64),
    ))
}

/// β of a homogeneous Fermi gas at phase-space density D, against qΛ_t. The
/// curve depends on temperature only through qΛ_t, so a fixed 1 μK is used.
pub fn sq(cfg: &RunConfig) -> Result<Output> {
    let species = cfg.species()?;
    let temperature = 1e-6;
    let lambda = thermal_wavelength(&species, temperature);
    let d = cfg.phase_space_density;
    let state = ThermoState::homogeneous(species, d / lambda.powi(3), temperature)?;
    let kf_lambda = (6.0 * PI * PI * d).cbrt();
    let xs = cfg.grid_q_lambda.values();
    let beta = xs
        .iter()
        .map(|x| beta_homogeneous(x / lambda, &state))
        .collect::<pauli_core::Result<Vec<_>>>()?;
    let gauss = xs
        .iter()
        .map(|x| s_q_gaussian(x / lambda, d, lambda, cfg.statistics))
        .collect();
    Ok(Output::Table(
        Table::new()
            .column("q_lambda_t", xs.clone())
            .column("q_over_kf", xs.iter().map(|x| x / kf_lambda).collect())
            .column("beta", beta)
            .column("s_gaussian", gauss),
    ))
}

pub fn fit_calibrate(trials: usize, seed: u64) -> Result<Output> {
    let cal = calibrate_fitter(&CalibrationConfig {
        trials,
        seed,
        ..CalibrationConfig::default()
    })?;
    Ok(Output::Report(
        Report::new()
            .num("mean_exponent", cal.mean_exponent)
            .num("spread", cal.spread)
            .num("mean_stderr", cal.mean_stderr)
            .num("coverage", cal.coverage)
            .int("trials", cal.trials as u64)
            .int("seed", seed),
    ))
}
