//! End-to-end checks of the command line contract: exit codes, grammar
//! round-trips on printed output, and report determinism.

use std::process::{Command, Output};

fn vdpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdpkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn build_prints_the_defining_polynomial() {
    let out = vdpkit(&["build", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("p_3 = z1*z2*z3 + z3 + z1 - 1"), "{text}");
    assert!(text.contains("f = z1*z3"));
    assert!(text.contains("det M_3 = 1"));
}

#[test]
fn build_prints_the_level_four_decomposition() {
    let out = vdpkit(&["build", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("p_4 ="));
    assert!(text.contains("f ="));
    assert!(text.contains("g ="));
}

#[test]
fn build_rejects_small_levels_with_usage_error() {
    let out = vdpkit(&["build", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn printed_polynomials_reparse() {
    for n in ["3", "4", "5", "6"] {
        let out = vdpkit(&["build", n]);
        let text = stdout(&out);
        let nvars: usize = n.parse().unwrap();
        for line in text.lines() {
            let trimmed = line.trim_start();
            let is_poly_line = trimmed.starts_with("p_")
                || trimmed.starts_with("f =")
                || trimmed.starts_with("g =")
                || trimmed.starts_with('[')
                || trimmed.starts_with("det");
            if !is_poly_line {
                continue;
            }
            let (_, rhs) = line.split_once(" = ").unwrap();
            let p = vdp_core::poly::parse_polynomial(rhs.trim(), nvars);
            assert!(p.is_ok(), "failed to reparse {rhs}");
        }
    }
}

#[test]
fn verify_family_passes() {
    let out = vdpkit(&["verify", "family", "--n-max", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn verify_homology_with_tex() {
    let out = vdpkit(&["verify", "homology", "--n-max", "20", "--tex"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("cross_check"));
    assert!(text.contains("\\begin{tabular}"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = vdpkit(&["verify", "family", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_env_variable_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_vdpkit"))
        .args(["verify", "family"])
        .env("VDPKIT_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    // An explicit flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_vdpkit"))
        .args(["verify", "family", "--budget", "1000000"])
        .env("VDPKIT_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn realize_certifies_with_zero_residual() {
    let out = vdpkit(&["realize", "3", "z1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("residual = 0"), "{text}");

    let out = vdpkit(&["realize", "3", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("xi       = 0"));

    let out = vdpkit(&["realize", "4", "z2 dz3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("residual = 0"));
}

#[test]
fn realize_rejects_malformed_input() {
    let out = vdpkit(&["realize", "3", "z1 dz2"]);
    assert_eq!(out.status.code(), Some(2), "a 1-form is not a 0-form");
    let out = vdpkit(&["realize", "4", "z9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flow_within_tolerances() {
    let out = vdpkit(&["flow", "3", "1", "2", "--t", "1", "--steps", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("drift"));
}

#[test]
fn flow_rejects_equal_indices() {
    let out = vdpkit(&["flow", "3", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_length_flow_has_no_drift_beyond_rounding() {
    let out = vdpkit(&["flow", "3", "1", "2", "--t", "0", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let drift_line = text.lines().find(|l| l.starts_with("drift")).unwrap();
    let value: f64 = drift_line
        .split_whitespace()
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    // The start point is exact; only its float conversion can show up.
    assert!(value < 1e-12, "{drift_line}");
}

#[test]
fn reports_are_deterministic_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let args = ["verify", "all", "--n-max", "6", "--seed", "9"];
    let out = vdpkit(&[&args[..], &["--report", first.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let out = vdpkit(&[&args[..], &["--report", second.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let a = std::fs::read_to_string(&first).unwrap();
    let b = std::fs::read_to_string(&second).unwrap();
    assert_eq!(a, b, "reports must be byte-identical for a fixed config");

    // Re-running with the report's embedded configuration reproduces the
    // same verdicts and payloads.
    let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed["overall"], "pass");
    assert_eq!(parsed["schema_version"], 1);
    let config = &parsed["config"];
    let third = dir.path().join("third.json");
    let out = vdpkit(&[
        "verify",
        "all",
        "--n-max",
        &config["n_max"].as_u64().unwrap().to_string(),
        "--seed",
        &config["seed"].as_u64().unwrap().to_string(),
        "--budget",
        &config["budget"].as_u64().unwrap().to_string(),
        "--degree-bound",
        &config["degree_bound"].as_u64().unwrap().to_string(),
        "--report",
        third.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = std::fs::read_to_string(&third).unwrap();
    assert_eq!(a, c);
}
