//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any fails. A criterion also fails when it overruns its
//! runtime bound.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pauli_core::heating::{evolve_heating, photons_vs_power, two_slope_analysis, PulseSimConfig};
use pauli_core::inelastic::{calibrate_fitter, condon_radius, fit_power_law, loss_exponent, CalibrationConfig, PowerLawPoint};
use pauli_core::numeric::spaced_grid;
use pauli_core::species::AtomSpecies;
use pauli_core::structure::{beta_homogeneous, beta_lattice_oracle, beta_zero_temperature, s_q_gaussian, Statistics};
use pauli_core::thermo::{homogeneous_fermi_wavenumber, thermal_wavelength, total_energy_trapped, ThermoState, TrapConfig};
use pauli_core::trap::{detected_signal_curve, suppression_detected, Detection, ProbeBeam};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn li() -> AtomSpecies {
    AtomSpecies::lithium6()
}

fn methods_trap() -> TrapConfig {
    TrapConfig::from_hz(34e3, 770.0, 6e5).expect("valid trap")
}

fn fig3_config() -> PulseSimConfig {
    let beam = ProbeBeam::new(110e-6, 1e-3, -2.0 * PI * 112e9, 50e-3).expect("valid beam");
    PulseSimConfig::new(li(), methods_trap(), beam, 0.2)
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fermi_temperature() -> Check {
    let tf = methods_trap().fermi_temperature() * 1e6;
    ensure((tf / 70.0 - 1.0).abs() <= 0.02, format!("T_F = {tf:.3} uK (70 uK ± 2%)"))
}

fn recoil() -> Check {
    let r = li().recoil_frequency() * 1e-3;
    ensure((r / 73.9 - 1.0).abs() <= 0.005, format!("E_rec/h = {r:.3} kHz (73.9 kHz ± 0.5%)"))
}

fn zero_temperature_beta() -> Check {
    let n = 2e20;
    let kf = homogeneous_fermi_wavenumber(n);
    let st = ThermoState::homogeneous_at_reduced_temperature(li(), n, 1e-3).map_err(err)?;
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.3, 0.5, 0.8, 1.0] {
        let q = 2.0 * x * kf;
        let b = beta_homogeneous(q, &st).map_err(err)?;
        worst = worst.max((b / beta_zero_temperature(q, kf) - 1.0).abs());
    }
    let tail = (beta_homogeneous(3.0 * kf, &st).map_err(err)? - 1.0).abs();
    ensure(
        worst <= 5e-3 && tail <= 1e-4,
        format!("max rel dev {worst:.2e} (≤ 5e-3); |β(x=1.5) - 1| = {tail:.1e} (≤ 1e-4)"),
    )
}

fn lattice_oracle() -> Check {
    let n = 2e20;
    let kf = homogeneous_fermi_wavenumber(n);
    let mut worst: f64 = 0.0;
    let mut at = (0.0, 0.0);
    for t in [0.1, 0.2, 0.5, 1.0] {
        let st = ThermoState::homogeneous_at_reduced_temperature(li(), n, t).map_err(err)?;
        for x in [0.2, 0.32, 0.6] {
            let q = 2.0 * x * kf;
            let quad = beta_homogeneous(q, &st).map_err(err)?;
            let lattice = beta_lattice_oracle(q, &st, 128, 4.0).map_err(err)?;
            let dev = (lattice / quad - 1.0).abs();
            if dev > worst {
                worst = dev;
                at = (t, x);
            }
        }
    }
    ensure(
        worst <= 0.01,
        format!("max |lattice/quadrature - 1| = {worst:.2e} at T/T_F = {}, x = {} (≤ 1%)", at.0, at.1),
    )
}

fn fig2() -> Check {
    let beam = ProbeBeam::new(110e-6, 2.35e-3, -2.0 * PI * 100e9, 25e-3).map_err(err)?;
    let st = ThermoState::trapped_at_reduced_temperature(li(), methods_trap(), 0.2).map_err(err)?;
    let s02 = suppression_detected(&st, Detection::right_angle()).map_err(err)?;
    let grid = spaced_grid(0.15, 3.0, 40, true);
    let curve = detected_signal_curve(&li(), &methods_trap(), &beam, Detection::right_angle(), &grid).map_err(err)?;
    let s: Vec<f64> = curve.rows.iter().map(|r| r.suppression).collect();
    let monotone = s.windows(2).all(|w| w[1] > w[0]);
    let top = *s.last().ok_or("empty curve")?;
    ensure(
        (s02 - 0.60).abs() <= 0.08 && monotone && top > 0.97,
        format!("suppression(0.2) = {s02:.4} (0.60 ± 0.08), monotone = {monotone}, suppression(3) = {top:.4} (> 0.97)"),
    )
}

fn gaussian_consistency() -> Check {
    let t = 30e-6;
    let l = thermal_wavelength(&li(), t);
    let d = 0.1;
    let st = ThermoState::homogeneous(li(), d / l.powi(3), t).map_err(err)?;
    let mut worst: f64 = 0.0;
    let mut branches = true;
    for x in spaced_grid(0.0, 10.0, 201, false) {
        let q = x / l;
        let b = beta_homogeneous(q, &st).map_err(err)?;
        let fermion = s_q_gaussian(q, d, l, Statistics::Fermion);
        let boson = s_q_gaussian(q, d, l, Statistics::Boson);
        worst = worst.max((b - fermion).abs());
        branches &= b <= 1.0 && fermion <= 1.0 && boson >= 1.0;
    }
    ensure(
        worst <= 2e-3 && branches,
        format!("max |β - S_gauss| = {worst:.2e} (≤ 2e-3), fermion ≤ 1 and boson ≥ 1: {branches}"),
    )
}

fn heating_sweep() -> Check {
    let powers = spaced_grid(0.25e-3, 8e-3, 16, false);
    let cfg = fig3_config();
    let fit = two_slope_analysis(&photons_vs_power(&cfg, &powers).map_err(err)?, 0.3, 0.3).map_err(err)?;
    let ratio = fit.slope_low / fit.slope_high;
    let mut free = cfg;
    free.blocking = false;
    let plain = two_slope_analysis(&photons_vs_power(&free, &powers).map_err(err)?, 0.3, 0.3).map_err(err)?;
    let slope_dev = (plain.slope_low / plain.slope_high - 1.0).abs();
    ensure(
        ratio <= 0.8 && fit.intercept_high < 0.0 && slope_dev <= 1e-8 && plain.intercept_high.abs() <= 1e-8,
        format!(
            "slope ratio {ratio:.4} (≤ 0.8), intercept {:.4} (< 0); unblocked: slope mismatch {slope_dev:.1e}, intercept {:.1e} (≤ 1e-8)",
            fit.intercept_high, plain.intercept_high
        ),
    )
}

fn energy_bookkeeping() -> Check {
    let mut worst: f64 = 0.0;
    for (power, overlap) in [(2e-3, false), (8e-3, false), (8e-3, true)] {
        let mut cfg = fig3_config();
        cfg.beam = cfg.beam.with_power(power).map_err(err)?;
        cfg.include_overlap = overlap;
        let traj = evolve_heating(&cfg).map_err(|f| f.error.to_string())?;
        let energy = |t: f64| {
            ThermoState::trapped_at_reduced_temperature(li(), methods_trap(), t).and_then(|s| total_energy_trapped(&s))
        };
        let e0 = energy(cfg.initial_t_over_tf).map_err(err)?;
        for p in traj.points.iter().skip(1) {
            let deposited = methods_trap().atom_number() * p.photons * cfg.heat_per_event;
            let gained = energy(p.t_over_tf).map_err(err)? - e0;
            worst = worst.max((gained / deposited - 1.0).abs());
        }
    }
    ensure(worst <= 1e-5, format!("max |ΔE / (N Φ h) - 1| = {worst:.2e} (≤ 1e-5)"))
}

fn inelastic_scaling() -> Check {
    let a0 = loss_exponent(0.0).map_err(err)?;
    let a2 = loss_exponent(2.0).map_err(err)?;
    let r = condon_radius(&li(), 2.0 * PI * 10e9).map_err(err)? * 1e9;
    ensure(
        a0 == 2.0 && a2 == 8.0 / 3.0 && (r / 10.0 - 1.0).abs() <= 0.2,
        format!("α(0) = {a0}, α(2) = {a2:.15}, r_C(10 GHz) = {r:.3} nm (10 nm ± 20%)"),
    )
}

fn fitter_calibration() -> Check {
    let exact: Vec<PowerLawPoint> = spaced_grid(100.0, 500.0, 8, true)
        .into_iter()
        .map(|d| PowerLawPoint::new(d, d.powi(-2)))
        .collect();
    let fit = fit_power_law(&exact).map_err(err)?;
    let dev = (fit.exponent + 2.0).abs();
    let cal = calibrate_fitter(&CalibrationConfig::default()).map_err(err)?;
    let bias = (cal.mean_exponent + 2.0).abs();
    ensure(
        dev <= 1e-12 && bias <= 0.02,
        format!(
            "exact fit off by {dev:.1e} (≤ 1e-12); {} seeds: mean α = {:.4} (bias ≤ 0.02), coverage {:.2}",
            cal.trials, cal.mean_exponent, cal.coverage
        ),
    )
}

fn rayleigh_budget() -> Check {
    let beam = ProbeBeam::new(110e-6, 2.35e-3, -2.0 * PI * 100e9, 25e-3).map_err(err)?;
    let photons = beam.scattering_rate(&li()) * beam.pulse_duration();
    ensure((0.9..=2.0).contains(&photons), format!("{photons:.3} photons/atom in 25 ms (0.9-2)"))
}

fn run_cli(args: &[&str], dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pauli"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(err)?;
    if !out.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    if let Ok(file) = std::fs::read(dir.join("out.dat")) {
        bytes.extend(file);
        std::fs::remove_file(dir.join("out.dat")).map_err(err)?;
    }
    Ok(bytes)
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let mut csv = String::from("delta_ghz,loss\n");
    for d in [100.0f64, 150.0, 220.0, 330.0, 500.0] {
        csv.push_str(&format!("{d},{:e}\n", d.powf(-8.0 / 3.0)));
    }
    std::fs::write(dir.path().join("loss.csv"), csv).map_err(err)?;
    let commands: [&[&str]; 9] = [
        &["constants"],
        &["fig2"],
        &["fig3"],
        &["fig4"],
        &["fit", "loss.csv"],
        &["sq"],
        &["trajectory"],
        &["fit-calibrate"],
        &["config"],
    ];
    let mut runs = 0;
    for cmd in commands {
        for format in ["csv", "json"] {
            for out in [false, true] {
                let mut args = vec!["--format", format];
                if out {
                    args.extend(["--out", "out.dat"]);
                }
                args.extend(cmd);
                let first = run_cli(&args, dir.path())?;
                let second = run_cli(&args, dir.path())?;
                if first != second {
                    return Err(format!("{args:?} differs between runs"));
                }
                runs += 2;
            }
        }
    }
    Ok(format!("{runs} runs over {} commands, byte-identical reruns", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Fermi temperature", Duration::from_millis(1), fermi_temperature),
        ("Recoil energy", Duration::from_millis(1), recoil),
        ("Zero-T structure factor", Duration::from_secs(1), zero_temperature_beta),
        ("Oracle equivalence", Duration::from_secs(120), lattice_oracle),
        ("Trap-averaged suppression curve", Duration::from_secs(60), fig2),
        ("Gaussian approximation consistency", Duration::from_secs(10), gaussian_consistency),
        ("Heating sweep", Duration::from_secs(60), heating_sweep),
        ("Energy bookkeeping", Duration::from_secs(5), energy_bookkeeping),
        ("Inelastic scaling", Duration::from_millis(1), inelastic_scaling),
        ("Fitter calibration", Duration::from_secs(30), fitter_calibration),
        ("Absolute scattering rate", Duration::from_millis(1), rayleigh_budget),
        ("Determinism", Duration::from_secs(60), determinism),
    ];
    let mut failures = 0;
    for (i, (name, bound, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *bound;
        let (ok, detail) = match result {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "[{}] {:>2} {name}: {detail} [{:.3?} / bound {:?}{}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed,
            bound,
            if in_time { "" } else { ", too slow" }
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
