use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11pol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn stokes_reference_point_is_right_elliptical() {
    let out = run(&["stokes", "--amp1", "1", "--amp2", "0.5", "--phi1", "0", "--phi2", "1.5707963267948966"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["stokes"]["k1"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(v["class"]["tag"], "REP");
    assert!(v["force_residual"].as_f64().unwrap().abs() < 1e-15);
    assert!(out.stdout.ends_with(b"\n"));
}

#[test]
fn stokes_equal_in_phase_is_linear() {
    let out = run(&["stokes", "--amp1", "1", "--amp2", "1", "--phi1", "0", "--phi2", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["class"]["tag"], "LP");
}

#[test]
fn degrees_flag_converts_phases() {
    let out = run(&["stokes", "--amp1", "1", "--amp2", "1", "--phi2", "-90", "--degrees"]);
    let v = json_of(&out);
    assert_eq!(v["class"]["tag"], "CP");
    assert!(v["class"]["detail"].as_str().unwrap().starts_with("left"));
}

#[test]
fn missing_amplitude_is_usage_error() {
    let out = run(&["stokes", "--amp2", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr_of(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("--amp1"));
}

#[test]
fn negative_amplitude_is_config_error() {
    let out = run(&["stokes", "--amp1", "-1", "--amp2", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_of(&out).lines().count(), 1);
}

#[test]
fn verify_algebra_passes_reference_configuration() {
    let out = run(&["verify-algebra", "--n-max", "12", "--margin", "2", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["k3_k1"]["matched"], "i*K2");
    for entry in v["checks"].as_array().unwrap() {
        assert_eq!(entry["basis"]["n_max"], 12);
    }
}

#[test]
fn verify_algebra_rejects_tiny_cutoff() {
    let out = run(&["verify-algebra", "--n-max", "2", "--margin", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_algebra_reports_boundary_shell() {
    let out = run(&["verify-algebra", "--n-max", "8", "--margin", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["passed"], false);
    let comm = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_name"] == "commutator_k1_k2_plus_i_k3")
        .unwrap();
    assert!(comm["max_deviation"].as_f64().unwrap() > 1e-3);
}

#[test]
fn ellipse_json_spot_values_and_residual() {
    let out = run(&["ellipse", "--amp1", "1", "--amp2", "0.5", "--phi2", "1.5707963267948966", "--samples", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["degenerate"], false);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 16);
    // τ = 0 gives (A1, A2); a quarter period later τ = π/2 gives (B1, B2).
    assert_eq!(samples[0]["E1"], 2.0);
    assert!(samples[0]["E2"].as_f64().unwrap().abs() < 1e-15);
    assert!(samples[4]["E1"].as_f64().unwrap().abs() < 1e-15);
    assert!((samples[4]["E2"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert!((v["stokes_form_scale"]["scale"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn ellipse_flags_degenerate_trace() {
    let out = run(&["ellipse", "--amp1", "1", "--amp2", "0.5", "--phi1", "0.3", "--phi2", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["degenerate"], true);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn ellipse_csv_with_quadratic_file() {
    let dir = std::env::temp_dir().join(format!("su11pol-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let qpath = dir.join("quadratic.json");
    let out = run(&[
        "ellipse", "--amp1", "1", "--amp2", "0.5", "--format", "csv", "--samples", "8",
        "--quadratic", qpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("tau,E1,E2\n"));
    assert_eq!(text.lines().count(), 9);
    let q: Value = serde_json::from_str(&std::fs::read_to_string(&qpath).unwrap()).unwrap();
    assert!(q.get("cA").is_some());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ellipse_rejects_too_few_samples() {
    let out = run(&["ellipse", "--amp1", "1", "--amp2", "0.5", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_figure_settings_are_deterministic() {
    let args = ["surface", "--k0-abs", "1.5", "--steps", "9", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("chi2,psi2,K1,K2,K3\n"));
    assert_eq!(text.lines().count(), 82);
    assert!(text.lines().any(|l| l == "0.0,0.0,0.0,0.0,1.5"));
}

#[test]
fn surface_apex_for_figure_one_scales() {
    for (k0, apex) in [("0.3", 0.3), ("1.0", 1.0)] {
        let out = run(&["surface", "--k0-abs", k0, "--steps", "5", "--signs", "-+"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_of(&out);
        let min = v["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| {
                let c = |k: &str| p[k].as_f64().unwrap();
                (c("K1").powi(2) + c("K2").powi(2) + c("K3").powi(2)).sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((min - apex).abs() < 1e-12);
        assert_eq!(v["meta"]["signs"][0], "-");
    }
}

#[test]
fn surface_rejects_bad_mesh_options() {
    assert_eq!(run(&["surface", "--steps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["surface", "--k0-abs", "0"]).status.code(), Some(2));
    assert_eq!(run(&["surface", "--signs", "+"]).status.code(), Some(2));
}

#[test]
fn crosscheck_single_point() {
    let out = run(&["crosscheck", "--amp1", "1", "--amp2", "0.5", "--n-max", "40", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert!(v["norm_deficit"].as_f64().unwrap() < 1e-10);
}

#[test]
fn crosscheck_vacuum_matches_exactly() {
    let out = run(&["crosscheck", "--amp1", "0", "--amp2", "0", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let devs = json_of(&out)["deviations"].clone();
    assert_eq!(devs, serde_json::json!([0.0, 0.0, 0.0, 0.0]));
}

#[test]
fn crosscheck_reports_insufficient_truncation() {
    let out = run(&["crosscheck", "--amp1", "5", "--amp2", "0", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("truncation insufficient"));
}

#[test]
fn crosscheck_grid_sweep() {
    let out = run(&["crosscheck", "--grid"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["count"].as_u64().unwrap() >= 25);
    assert_eq!(v["passed"], true);
}
