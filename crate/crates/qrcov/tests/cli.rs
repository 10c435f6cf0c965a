//! End-to-end tests of the `qrcov` binary: exit codes, output determinism,
//! the state-file path, and the manifest sidecar.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qrcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrcov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qrcov-test-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decompose_bell_reports_the_expected_split() {
    let out = qrcov(&[
        "decompose",
        "--scenario",
        "bell",
        "--basis",
        "ZZ",
        "--mu",
        "XX",
    ]);
    let json = stdout_json(&out);
    let ln2 = 2f64.ln();
    assert!((json["info"].as_f64().unwrap() - 2.0 * ln2).abs() < 1e-9);
    assert!((json["quantumness"].as_f64().unwrap() - ln2).abs() < 1e-9);
    assert!((json["incompatible_quantumness"].as_f64().unwrap() - ln2).abs() < 1e-9);

    // maximally mixed input: everything zero
    let out = qrcov(&["decompose", "--scenario", "mixed", "--dims", "3x2"]);
    let json = stdout_json(&out);
    for key in [
        "info",
        "quantumness",
        "incompatible_quantumness",
        "discord_sym",
    ] {
        assert!(json[key].as_f64().unwrap().abs() < 1e-9, "{key} nonzero");
    }
}

#[test]
fn decompose_is_byte_deterministic() {
    let args = [
        "decompose",
        "--scenario",
        "random",
        "--dims",
        "3x3",
        "--rank",
        "4",
        "--seed",
        "11",
    ];
    let a = qrcov(&args);
    let b = qrcov(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failed_unbiasedness_exits_with_code_2() {
    let out = qrcov(&[
        "decompose",
        "--scenario",
        "bell",
        "--basis",
        "ZZ",
        "--mu",
        "ZZ",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unbiased"), "diagnostic missing: {stderr}");
}

#[test]
fn state_file_input_round_trips() {
    let dir = scratch_dir("state");
    let rho = qrcov::scenarios::random_state(
        qrcov::hilbert::SubsystemDims::bipartite(2, 2).unwrap(),
        2,
        99,
    )
    .unwrap();
    let path = dir.join("state.txt");
    std::fs::write(&path, qrcov::cli::write_state_text(&rho)).unwrap();
    let out = qrcov(&["decompose", "--state", path.to_str().unwrap()]);
    let json = stdout_json(&out);
    let direct = qrcov::resources::decompose(
        &rho,
        &qrcov::resources::ObservableSet::computational(rho.dims()).unwrap(),
        &qrcov::frames::fourier_mu_set(rho.dims()).unwrap(),
    )
    .unwrap();
    assert!((json["info"].as_f64().unwrap() - direct.info).abs() < 1e-12);
    assert!((json["quantumness"].as_f64().unwrap() - direct.quantumness).abs() < 1e-12);
}

#[test]
fn malformed_state_file_exits_with_code_2() {
    let dir = scratch_dir("badstate");
    let path = dir.join("bad.txt");
    std::fs::write(&path, "dims: 2 2\n1+0j 0+0j\n").unwrap();
    let out = qrcov(&["decompose", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn covariance_check_passes_on_small_runs() {
    let out = qrcov(&[
        "covariance-check",
        "--trials",
        "6",
        "--dims",
        "2x2",
        "--transform",
        "random-unitary",
        "--seed",
        "7",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["trials"].as_u64().unwrap(), 6);
    assert!(json["pass"].as_bool().unwrap());
    assert!(json["max_gap"].as_f64().unwrap() <= 1e-9);

    let out = qrcov(&[
        "covariance-check",
        "--trials",
        "4",
        "--transform",
        "lattice-swap",
        "--l",
        "2",
        "--seed",
        "3",
    ]);
    let json = stdout_json(&out);
    assert!(json["pass"].as_bool().unwrap());
}

#[test]
fn freefall_writes_deterministic_csv_with_manifest() {
    let dir = scratch_dir("freefall");
    let config = dir.join("run.cfg");
    std::fs::write(
        &config,
        "half_width = 7\nsigma_cm_bar = 3\nsigma_r_bar = 1\nd_bar = 2\nt_bar_list = 0, 0.5\n",
    )
    .unwrap();
    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    for out_path in [&out_a, &out_b] {
        let out = qrcov(&[
            "freefall",
            "--config",
            config.to_str().unwrap(),
            "--output",
            out_path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read_to_string(&out_a).unwrap();
    let b = std::fs::read_to_string(&out_b).unwrap();
    assert_eq!(a, b, "identical configs must give byte-identical CSV");
    assert!(a.starts_with(
        "t_bar,Q_R,Qbar_R,Q_A,Qbar_A,info,delta_percent,leaked_mass_R,leaked_mass_A\n"
    ));
    assert_eq!(a.lines().count(), 3);

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("a.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "freefall");
    assert_eq!(manifest["boundary"], "truncate");
    assert_eq!(manifest["config"]["half_width"], 7);
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn freefall_leak_above_threshold_fails_with_code_1() {
    let dir = scratch_dir("leak");
    let out_path = dir.join("leak.csv");
    let out = qrcov(&[
        "freefall",
        "--half-width",
        "7",
        "--sigma-cm-bar",
        "6.5",
        "--sigma-r-bar",
        "1",
        "--leak-threshold",
        "0.001",
        "--t-bar-steps",
        "1",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("leak"));
}

#[test]
fn two_slit_reports_both_frames_and_rejects_bad_indices() {
    let out = qrcov(&["two-slit", "--i", "1", "--j", "2", "--k", "3", "--l", "7"]);
    let json = stdout_json(&out);
    let ln2 = 2f64.ln();
    assert!((json["irreality_b_lab"].as_f64().unwrap() - ln2).abs() < 1e-10);
    assert!(json["irreality_b_frame"].as_f64().unwrap() <= 1e-12);
    assert!(json["quantumness_gap"].as_f64().unwrap() < 1e-10);

    // k walks off the grid
    let out = qrcov(&["two-slit", "--i", "1", "--j", "2", "--k", "30", "--l", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gaussian_transform_reports_crossing_params_and_purity() {
    let out = qrcov(&[
        "gaussian-transform",
        "--a",
        "1",
        "--delta",
        "1",
        "--big-delta",
        "1",
    ]);
    let json = stdout_json(&out);
    assert!((json["zeta"].as_f64().unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    assert!((json["alpha"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(json["reduced_purity"].as_f64().unwrap() < 1.0);

    let out = qrcov(&[
        "gaussian-transform",
        "--a",
        "0.5",
        "--delta",
        "1",
        "--big-delta",
        "2",
        "--transform",
        "momentum-swap",
        "--mass-a",
        "2",
        "--mass-b",
        "1",
    ]);
    let json = stdout_json(&out);
    // unitary frame changes preserve global purity
    assert!((json["global_purity"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let out = qrcov(&[
        "gaussian-transform",
        "--a",
        "1",
        "--delta",
        "-1",
        "--big-delta",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
