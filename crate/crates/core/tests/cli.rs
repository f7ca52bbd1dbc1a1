use std::process::{Command, Output};

use serde_json::Value;

fn pfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfe")).args(args).output().expect("pfe runs")
}

fn json(args: &[&str]) -> Value {
    let out = pfe(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

#[test]
fn stirling_tables() {
    let t = json(&["stirling", "--family", "s2", "--nmax", "4"]);
    assert_eq!(t["rows"][4][2], "7");
    assert_eq!(t["family"], "s2");
    assert!(t["model"].is_null());

    let t = json(&["stirling", "--family", "s1y", "--rv", "exponential", "--param", "alpha=1", "--nmax", "3"]);
    assert_eq!(t["rows"][2][1], "-2");
    assert_eq!(t["model"]["kind"], "exponential");

    let csv = pfe(&["stirling", "--family", "s1", "--nmax", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "1\n0,1\n0,-1,1\n0,2,-3,1\n");

    let t = json(&["stirling", "--family", "s2l", "--lambda", "1", "--nmax", "3"]);
    assert_eq!(t["lambda"], "1");
    assert_eq!(strings(&t["rows"][3]), ["0", "0", "0", "1"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["stirling", "--family", "s2y", "--nmax", "3"][..],
        &["stirling", "--family", "s9", "--nmax", "3"],
        &["stirling", "--family", "s2", "--nmax", "3", "--rv", "poisson", "--param", "alpha=1"],
        &["family", "--u", "1", "--nmax", "3"],
        &["family", "--u", "0.5", "--nmax", "3"],
        &["family", "--u", "1/2", "--rv", "poisson", "--param", "alpha=-1"],
        &["family", "--u", "1/2", "--rv", "poisson", "--param", "p=1/2"],
        &["family", "--u", "1/2", "--rv", "custom"],
        &["expand", "--poly", "x^(1/2)", "--u", "2"],
        &["expand", "--poly", "x", "--u", "2", "--order", "2", "--theorem", "31"],
        &["expand", "--poly", "x", "--u", "2", "--theorem", "4", "--formula", "5"],
        &["verify", "--suite", "nothing", "--nmax", "1"],
        &["bogus"],
    ] {
        let out = pfe(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = pfe(&["family", "--u", "1", "--nmax", "3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("u != 1"));
}

#[test]
fn families() {
    let f = json(&["family", "--u", "1/2", "--nmax", "3"]);
    let constants: Vec<&str> = f["polys"].as_array().unwrap().iter().map(|p| p[0].as_str().unwrap()).collect();
    assert_eq!(constants, ["1", "-2", "6", "-26"]);

    let f = json(&["family", "--u", "-1", "--nmax", "1"]);
    assert_eq!(strings(&f["polys"][1]), ["-1/2", "1"]);

    let f = json(&["family", "--u", "-1"]);
    assert_eq!(f["nmax"], 16);
    assert_eq!(f["polys"].as_array().unwrap().len(), 17);
}

#[test]
fn expansions() {
    let e = json(&["expand", "--poly", "x", "--u", "1/2", "--theorem", "31"]);
    assert_eq!(strings(&e["coefficients"]), ["2", "1"]);
    assert_eq!(e["reconstruction_ok"], true);
    assert_eq!(e["formula"], "thm31-1");

    let e = json(&["expand", "--poly", "5", "--u", "-3", "--lambda", "1/4", "--order", "3"]);
    assert_eq!(strings(&e["coefficients"]), ["5"]);

    let e = json(&[
        "expand", "--poly", "x^2", "--rv", "poisson", "--param", "alpha=2", "--u", "-1",
        "--theorem", "4", "--order", "2", "--verify",
    ]);
    assert_eq!(e["reconstruction_ok"], true);
    assert_eq!(e["formulas_agree"], true);
    assert_eq!(e["basis"]["order"], 2);

    for formula in ["1", "2", "3"] {
        let e = json(&[
            "expand", "--poly", "(x-1)*(x+2)^2 - 1/3", "--rv", "geometric", "--param", "p=1/3",
            "--u", "3", "--lambda", "1/4", "--theorem", "33", "--formula", formula, "--verify",
        ]);
        assert_eq!(e["formula"], format!("thm33-{formula}"));
        assert_eq!(e["reconstruction_ok"], true);
    }
}

#[test]
fn closed_forms() {
    let e = json(&["closed", "--target", "falling", "--n", "1", "--u", "1/2", "--rv", "exponential", "--param", "alpha=3"]);
    assert_eq!(strings(&e["coefficients"]), ["2", "3"]);
    assert_eq!(e["source"], "closed-form");
    assert_eq!(e["reconstruction_ok"], true);

    let e = json(&["closed", "--target", "monomial", "--n", "4", "--u", "-1", "--lambda", "1/4", "--rv", "bernoulli", "--param", "p=1/2"]);
    assert_eq!(e["reconstruction_ok"], true);
    // No closed form for the unit model; its first-kind table comes from reversion.
    let e = json(&["closed", "--target", "falling", "--n", "2", "--u", "1/2"]);
    assert_eq!(strings(&e["coefficients"]), ["0", "3", "1"]);
    assert_eq!(pfe(&["closed", "--target", "falling", "--n", "2", "--u", "1"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = pfe(&["verify", "--suite", "all", "--nmax", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pfe(&["verify", "--suite", "orthogonality", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")));
    let out = pfe(&["verify", "--suite", "identities", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn custom_moments_file() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let path = format!("{dir}/uniform012.json");
    // Y uniform on {0, 1, 2}: E[Y^n] = (0^n + 1 + 2^n)/3.
    let moments: Vec<String> = (0..=6u32)
        .map(|n| format!("{}/3", i64::from(n == 0) + 1 + 2i64.pow(n)))
        .collect();
    std::fs::write(&path, serde_json::json!({ "moments": moments }).to_string()).unwrap();

    let t = json(&["stirling", "--family", "s2y", "--rv", "custom", "--moments-file", &path, "--nmax", "6"]);
    assert_eq!(t["rows"][1][1], "1");
    assert_eq!(t["model"]["moments"][2], "5/3");

    let e = json(&["expand", "--poly", "x^6 - x", "--u", "1/3", "--rv", "custom", "--moments-file", &path, "--order", "2", "--verify"]);
    assert_eq!(e["reconstruction_ok"], true);

    let short = pfe(&["family", "--u", "1/3", "--nmax", "9", "--rv", "custom", "--moments-file", &path]);
    assert_eq!(short.status.code(), Some(2));
    let missing = pfe(&["family", "--u", "1/3", "--rv", "custom", "--moments-file", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["expand", "--poly", "x^5 - 2/7*x^2 + 3", "--rv", "poisson", "--param", "alpha=5/2", "--u", "-1", "--lambda", "1/4", "--order", "3"];
    let a = pfe(&args);
    let b = pfe(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t1 = pfe(&["stirling", "--family", "s1yl", "--rv", "geometric", "--param", "p=1/3", "--lambda", "1/2", "--nmax", "8"]);
    let t2 = pfe(&["stirling", "--family", "s1yl", "--rv", "geometric", "--param", "p=1/3", "--lambda", "1/2", "--nmax", "8"]);
    assert_eq!(t1.stdout, t2.stdout);
}
