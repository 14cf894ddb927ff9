use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pauli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pauli"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing from\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn constants_report() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&pauli(&["constants"], dir.path()));
    assert!((report_value(&text, "t_fermi_uK") / 70.0 - 1.0).abs() < 0.02);
    assert!((report_value(&text, "recoil_kHz") / 73.9 - 1.0).abs() < 0.005);
    assert!((report_value(&text, "q_over_k") - 2f64.sqrt()).abs() < 1e-8);
    let n_alpha = report_value(&text, "n_alpha");
    assert!((n_alpha * 1300.0 - 1.0).abs() < 0.2, "{n_alpha}");
}

#[test]
fn config_round_trips_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "[trap]\natom_number = 2.5e5\n[grids]\nt_over_tf=0.2:2:5:log\n").unwrap();
    let first = stdout(&pauli(&["--config", "run.ini", "config"], dir.path()));
    assert!(first.contains("atom_number=250000\n"));
    std::fs::write(&cfg, &first).unwrap();
    let second = stdout(&pauli(&["--config", "run.ini", "config"], dir.path()));
    assert_eq!(first, second);
}

#[test]
fn bad_config_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.ini"), "[beam]\nwaist_um=110\npower_mw=lots\n").unwrap();
    let out = pauli(&["--config", "bad.ini", "fig2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = pauli(&["--config", "missing.ini", "constants"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = pauli(&["--grid", "t_over_tf=1:0:4", "fig2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = pauli(&["no-such-command"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fit_recovers_inverse_square() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("delta_ghz,loss\n");
    for d in [100.0f64, 150.0, 220.0, 330.0, 500.0] {
        csv.push_str(&format!("{},{:e}\n", -d, 3.0 * d.powi(-2)));
    }
    std::fs::write(dir.path().join("loss.csv"), csv).unwrap();
    let text = stdout(&pauli(&["fit", "loss.csv"], dir.path()));
    assert!((report_value(&text, "exponent") + 2.0).abs() < 1e-8);
    assert!((report_value(&text, "amplitude") / 3.0 - 1.0).abs() < 1e-7);

    std::fs::write(dir.path().join("cut.ini"), "[inelastic]\ndelta_min_ghz=120\n").unwrap();
    let out = pauli(&["--config", "cut.ini", "fit", "loss.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn fit_rejects_malformed_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.csv"), "delta_ghz,loss\n100,1\n200,abc\n").unwrap();
    let out = pauli(&["fit", "x.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::write(dir.path().join("y.csv"), "detuning,loss\n100,1\n").unwrap();
    assert_eq!(pauli(&["fit", "y.csv"], dir.path()).status.code(), Some(2));
}

#[test]
fn sq_follows_gaussian_approximation() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&pauli(&["sq"], dir.path()));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q_lambda_t,q_over_kf,beta,s_gaussian"));
    let mut rows = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((v[2] - v[3]).abs() <= 2e-3, "{line}");
        assert!(v[2] <= 1.0);
        rows += 1;
    }
    assert_eq!(rows, 101);
}

#[test]
fn fig3_reports_negative_intercept() {
    let dir = tempfile::tempdir().unwrap();
    let out = pauli(&["--out", "fig3.csv", "fig3"], dir.path());
    let report = stdout(&out);
    assert!(report_value(&report, "intercept_high") < 0.0);
    assert!(report_value(&report, "slope_ratio") <= 0.8);
    let csv = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    assert!(csv.starts_with("power_mw,photons_per_atom,final_t_over_tf\n"));
    assert_eq!(csv.lines().count(), 17);
}

#[test]
fn json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = stdout(&pauli(&["fig4"], dir.path()));
    let json: Value = serde_json::from_str(&stdout(&pauli(&["--format", "json", "fig4"], dir.path()))).unwrap();
    assert_eq!(json["metadata"]["command"], "fig4");
    assert_eq!(json["metadata"]["config_hash"].as_str().unwrap().len(), 64);
    let loss = json["columns"]["loss"].as_array().unwrap();
    for (line, v) in csv.lines().skip(1).zip(loss) {
        let from_csv: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(from_csv, v.as_f64().unwrap());
    }
    // the hash follows the effective configuration
    let other: Value =
        serde_json::from_str(&stdout(&pauli(&["--format", "json", "--grid", "delta_ghz=100:400:4", "fig4"], dir.path())))
            .unwrap();
    assert_ne!(other["metadata"]["config_hash"], json["metadata"]["config_hash"]);
}

#[test]
fn seeded_calibration_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&pauli(&["--seed", "11", "fit-calibrate", "--trials", "200"], dir.path()));
    let b = stdout(&pauli(&["fit-calibrate", "--trials", "200", "--seed", "11"], dir.path()));
    let c = stdout(&pauli(&["--seed", "12", "fit-calibrate", "--trials", "200"], dir.path()));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!((report_value(&a, "mean_exponent") + 2.0).abs() < 0.02);
}
