//! End-to-end tests of the command-line surface: output schema, exit-code
//! contract (0 ok / 2 domain error / 3 verification failure), and the
//! round-trip through the JSON wire format.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpotential"))
        .args(args)
        .output()
        .expect("binary runs")
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
fn kernel_matches_expected_atom() {
    let out = run(&["kernel", "--family", "dirac", "--mu", "2", "--dim", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["atoms"][0]["kind"], "T");
    assert_eq!(v["atoms"][0]["degree"], -5);
    assert_eq!(v["atoms"][0]["coeff"]["num"], "3");
    assert_eq!(v["atoms"][0]["coeff"]["den"], "1");
    assert_eq!(v["atoms"][0]["coeff"]["pi_half"], 0);
}

#[test]
fn boundary_a_minus_one_is_delta() {
    let out = run(&["boundary", "--side", "a", "--k", "-1", "--dim", "5"]);
    let v = stdout_json(&out);
    // delta(5) = Gamma(5/2)/pi^{5/2} T*_{-5} = (3/4) pi^{-2} T*_{-5}
    assert_eq!(v["atoms"][0]["degree"], -5);
    assert_eq!(v["atoms"][0]["coeff"]["num"], "3");
    assert_eq!(v["atoms"][0]["coeff"]["den"], "4");
    assert_eq!(v["atoms"][0]["coeff"]["pi_half"], -4);
}

#[test]
fn apply_and_convolve_round_trip_through_json() {
    // H as JSON from the CLI itself
    let h = run(&["kernel", "--family", "hilbert-dirac", "--mu", "0", "--dim", "3"]);
    let h_json = String::from_utf8(h.stdout).unwrap();
    // H * H = delta
    let conv = run(&[
        "convolve",
        "--lhs",
        h_json.trim(),
        "--rhs",
        h_json.trim(),
        "--dim",
        "3",
    ]);
    let v = stdout_json(&conv);
    let delta = run(&["kernel", "--family", "dirac", "--mu", "0", "--dim", "3"]);
    let d = stdout_json(&delta);
    assert_eq!(v["atoms"], d["atoms"]);
    // hilbert(delta) = H
    let back = run(&["apply", "--op", "hilbert", "--expr", &h_json, "--dim", "3"]);
    let b = stdout_json(&back);
    assert_eq!(b["atoms"], d["atoms"]);
}

#[test]
fn verify_all_exits_zero_on_the_acceptance_dimensions() {
    let out = run(&["verify", "--name", "all", "--dims", "2,3,4,5"]);
    assert!(
        out.status.success(),
        "verify all failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_accepts_short_aliases_and_ranges() {
    let out = run(&[
        "verify",
        "--name",
        "prop41",
        "--mu-range",
        "-3..3",
        "--nu-range",
        "-3..3",
        "--dims",
        "4",
    ]);
    assert!(out.status.success());
    let out = run(&["verify", "--name", "prop61", "--beta-range", "-1..1", "--dims", "3"]);
    assert!(out.status.success());
}

#[test]
fn domain_errors_exit_with_code_two() {
    // boundary index outside its guard
    let out = run(&["boundary", "--side", "a", "--k", "4", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("k + 1 < m"), "stderr names the condition: {}", err);
    // convolution at excluded parameters
    let t1 = r#"{"dim":4,"atoms":[{"kind":"T","degree":-1,"coeff":{"num":"1","den":"1","pi_half":0}}]}"#;
    let t3 = r#"{"dim":4,"atoms":[{"kind":"T","degree":-3,"coeff":{"num":"1","den":"1","pi_half":0}}]}"#;
    let out = run(&["convolve", "--lhs", t1, "--rhs", t3, "--dim", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed expression
    let out = run(&["apply", "--op", "dirac", "--expr", "{bad json", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown identity name
    let out = run(&["verify", "--name", "nonsense", "--dims", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pair_closed_and_quadrature_agree() {
    // T*_{-1} in m=3 is quadrable; both routes within 1e-8
    let expr = r#"{"dim":3,"atoms":[{"kind":"T","degree":-1,"coeff":{"num":"1","den":"1","pi_half":0}}]}"#;
    let closed = stdout_json(&run(&["pair", "--expr", expr, "--dim", "3"]));
    let quad = stdout_json(&run(&[
        "pair",
        "--expr",
        expr,
        "--dim",
        "3",
        "--method",
        "quadrature",
        "--subtraction-order",
        "4",
    ]));
    let a = closed["scalar"]["re"].as_f64().unwrap();
    let b = quad["scalar"]["re"].as_f64().unwrap();
    assert!(((a - b) / a).abs() < 1e-8, "{} vs {}", a, b);
    assert_eq!(quad["pole_on_grid"], false);
}

#[test]
fn potential_reports_value_and_residual() {
    let out = run(&[
        "potential",
        "--family",
        "c",
        "--k",
        "-1",
        "--point",
        "1.0,0.3,-0.2,0.5",
        "--dim",
        "3",
        "--residual-step",
        "1e-3",
    ]);
    let v = stdout_json(&out);
    let res = v["monogenicity_residual"].as_f64().unwrap();
    assert!(res < 1e-6, "residual {}", res);
    assert!(v["value"].as_array().unwrap().len() > 1);
}

#[test]
fn numeric_mode_and_tolerance_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperpotential"))
        .args(["verify", "--name", "cross-kernel", "--dims", "3", "--mode", "numeric"])
        .env("HYPERPOTENTIAL_TOL", "1e-9")
        .output()
        .unwrap();
    assert!(out.status.success());
    // a fractional parameter runs through the numeric kernel path
    let out = run(&[
        "kernel",
        "--family",
        "dirac",
        "--param",
        "0.25",
        "--dim",
        "3",
        "--mode",
        "numeric",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "numeric");
    assert_eq!(v["atoms"].as_array().unwrap().len(), 2);
}
