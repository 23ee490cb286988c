use assert_cmd::Command;
use serde_json::Value;

fn kuznetsov() -> Command {
    let mut c = Command::cargo_bin("kuznetsov").unwrap();
    c.env_remove("KUZNETSOV_THREADS");
    c
}

fn run_json(args: &[&str]) -> Value {
    let out = kuznetsov().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn simplex_closed_form() {
    let v = run_json(&["region-volume", "--family", "simplex", "--n", "2", "--Y", "4.5", "--method", "closed"]);
    assert_eq!(v["value"], 0.5);
    assert_eq!(v["method"], "closed-form");
}

#[test]
fn kloosterman_over_q_matches_brute_force() {
    let v = run_json(&["kloosterman", "--field", "Q", "--c", "3", "--r", "1", "--rp", "1", "--chi", "trivial"]);
    assert!((v["value"][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert!(v["value"][1].as_f64().unwrap().abs() < 1e-10);
    assert!(v["error"].as_f64().unwrap() < 1e-12);
    let v = run_json(&["kloosterman", "--field", "Q", "--c", "4", "--r", "1"]);
    assert!((v["value"][0].as_f64().unwrap() + 2.0).abs() < 1e-12);
}

#[test]
fn kloosterman_over_a_quadratic_field_with_level() {
    let v = run_json(&["kloosterman", "--field", "Q(sqrt 5)", "--level", "(2)", "--chi", "trivial", "--r", "1/sqrt(5)", "--c", "2"]);
    assert_eq!(v["norm_c"], 4.0);
    assert!(v["value"][0].as_f64().unwrap().abs() <= 4.0);
    assert_eq!(v["weil_bound"]["shape_only"], true);
}

#[test]
fn reference_measure_of_an_interval() {
    let v = run_json(&["measure", "--kind", "nv", "--b", "1", "--region", "i[1,2]"]);
    assert!((v["value"].as_f64().unwrap() - 1.5).abs() < 1e-14);
    for key in ["value", "error", "method"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    // The same region as JSON.
    let json = r#"{"family":"product","parity":["Even"],"places":[{"imag":[[1.0,2.0]]}]}"#;
    let w = run_json(&["measure", "--kind", "nv", "--region", json]);
    assert_eq!(v, w);
}

#[test]
fn rejected_input_exits_2_and_names_the_precondition() {
    let out = kuznetsov().args(["measure", "--kind", "nv", "--region", "i[2,1]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lo > hi"));
    let out = kuznetsov().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = kuznetsov().args(["check", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = kuznetsov().args(["--params", "tau=0.6", "budget", "--family", "hypercube"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("γ"));
}

#[test]
fn precision_failure_exits_1() {
    let out = kuznetsov().args(["bessel", "--phi", "phi-p:p=0.31", "--t", "100", "--formula", "axis"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bessel_formulas_agree() {
    let v = run_json(&["bessel", "--phi", "gaussian:q=10i,U=25", "--parity", "0", "--eta", "1", "--t", "0.5", "--formula", "both"]);
    assert_eq!(v["agree"], true);
    assert!(v["difference"].as_f64().unwrap() < 1e-8);
}

#[test]
fn budget_rows_report_pre_asymptotic_sets() {
    let v = run_json(&["budget", "--family", "sphere", "--t-grid", "10:1000:5"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["rejected"].as_str().unwrap().contains("threshold")));
    let v = run_json(&["budget", "--family", "hypercube", "--log-t", "--t-grid", "10000:1000000:3"]);
    let rows = v["rows"].as_array().unwrap();
    let ratios: Vec<f64> = rows.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
    for piece in ["kloosterman", "smoothing", "boundary", "plancherel"] {
        assert!(rows[2]["pieces"][piece]["ratio"].as_f64().unwrap() < 0.1);
    }
}

#[test]
fn families_csv_has_a_row_per_grid_point() {
    let out = kuznetsov().args(["families", "--report", "csv", "--t-grid", "1000:10000:5"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("family,t,main_term"));
    assert_eq!(lines.len(), 1 + 6 * 5);
    assert!(lines.iter().any(|l| l.starts_with("sphere,")));
}

#[test]
fn synthetic_counts_are_deterministic_across_threads() {
    let one = kuznetsov().args(["synth-count", "--seed", "7", "--family", "hypercube", "--threads", "1"]).output().unwrap();
    let two = kuznetsov().args(["synth-count", "--seed", "7", "--family", "hypercube"]).env("KUZNETSOV_THREADS", "2").output().unwrap();
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((0.9..=1.1).contains(&ratio), "ratio {ratio}");
    let other = kuznetsov().args(["synth-count", "--seed", "8"]).output().unwrap();
    assert_ne!(one.stdout, other.stdout);
}

#[test]
fn thread_flag_wins_over_the_environment() {
    let out = kuznetsov().args(["--threads", "1", "--print-config", "check", "identities"]).env("KUZNETSOV_THREADS", "3").output().unwrap();
    assert!(out.status.success());
    let cfg: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(cfg["threads"], 1);
}

#[test]
fn printed_config_round_trips() {
    let out = kuznetsov()
        .args(["--field", "Q(sqrt 2)", "--seed", "11", "--params", "tau=0.35", "--print-config", "check", "identities"])
        .output()
        .unwrap();
    let printed = String::from_utf8(out.stderr).unwrap();
    let again = kuznetsov().args(["--config", printed.trim(), "--print-config", "check", "identities"]).output().unwrap();
    assert_eq!(String::from_utf8(again.stderr).unwrap(), printed);
}

#[test]
fn check_suites_pass() {
    for suite in ["kloosterman-small", "identities"] {
        let v = run_json(&["check", suite]);
        assert_eq!(v["passed"], true, "{suite}: {v:#}");
    }
    let v = run_json(&["check", "all", "--quick"]);
    assert_eq!(v["passed"], true, "{v:#}");
}
