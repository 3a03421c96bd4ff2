//! End-to-end tests of the `sextic-lab` binary: exact JSON payloads and the
//! documented exit-code contract (0 success, 1 failed computation/check,
//! 2 usage error).

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sextic-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sextic-lab"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "unexpected failure; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coef_of(value: &Value, exps: &[u64]) -> Option<String> {
    value["monomials"].as_array().unwrap().iter().find_map(|m| {
        let e: Vec<u64> = m["exps"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        (e == exps).then(|| m["coef"].as_str().unwrap().to_string())
    })
}

#[test]
fn family_at_one_expands_the_triple_conic() {
    let v = json_of(&run(&["family", "--t", "1"]));
    assert_eq!(v["t"], "1");
    assert_eq!(v["vars"], serde_json::json!(["z0", "z1", "z2"]));
    assert_eq!(coef_of(&v, &[2, 2, 2]).as_deref(), Some("24"));
    assert_eq!(coef_of(&v, &[3, 3, 0]).as_deref(), Some("4"));
    assert_eq!(coef_of(&v, &[3, 2, 1]).as_deref(), Some("12"));

    // Graded-lex, highest first.
    let exps: Vec<Vec<u64>> = v["monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            m["exps"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect()
        })
        .collect();
    for pair in exps.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let key = |e: &Vec<u64>| (e.iter().sum::<u64>(), e.clone());
        assert!(key(a) > key(b), "{a:?} should sort before {b:?}");
    }
}

#[test]
fn family_model_change_and_chart() {
    let v = json_of(&run(&[
        "family", "--t", "5/6", "--change", "paper-epi", "--chart", "Z",
    ]));
    assert_eq!(v["vars"], serde_json::json!(["x", "y"]));
    assert_eq!(v["change"], "paper-epi");
    assert_eq!(v["chart"], "Z");
    assert_eq!(v["monomials"].as_array().unwrap().len(), 28);
    assert_eq!(coef_of(&v, &[0, 0]).as_deref(), Some("3568/177147"));
    assert_eq!(coef_of(&v, &[1, 0]).as_deref(), Some("716/19683"));
    assert_eq!(coef_of(&v, &[0, 6]).as_deref(), Some("-255219619/22674816"));
}

#[test]
fn family_symmetry_check_passes_at_zero() {
    let out = run(&["family", "--t", "0", "--check-symmetry"]);
    let v = json_of(&out);
    assert_eq!(v["cyclic_invariant"], true);
}

#[test]
fn family_pretty_output_is_equivalent() {
    let compact = json_of(&run(&["family", "--t", "2"]));
    let out = run(&["family", "--t", "2", "--pretty"]);
    assert!(out.stdout.iter().filter(|&&b| b == b'\n').count() > 1);
    assert_eq!(compact, json_of(&out));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["family", "--t", "x"][..],
        &["family", "--t", "1", "--change", "nonsense"][..],
        &["family", "--t", "1", "--change", "uv-vandermonde"][..],
        &["family", "--t", "1", "--chart", "w"][..],
        &["group", "order", "--presentation", "nonsense"][..],
        &["verify", "--only", "nonsense"][..],
        &["singular"][..],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn singular_census_reports_the_extra_node() {
    let v = json_of(&run(&["singular", "--t", "-3"]));
    assert_eq!(v["milnor_sum"], 19);
    assert_eq!(v["status"], "pass");
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    let kinds: Vec<&str> = points.iter().map(|p| p["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "A6").count(), 3);
    assert_eq!(kinds.iter().filter(|k| **k == "A1").count(), 1);
    assert!(points
        .iter()
        .any(|p| p["point"] == "(1 : 1 : 1)" && p["kind"] == "A1"));
}

#[test]
fn pencil_census_shape() {
    let v = json_of(&run(&["pencil"]));
    assert_eq!(v["t"], "5/6");
    assert_eq!(v["complex_pair_count"], 3);
    let real = v["real_values"].as_array().unwrap();
    assert_eq!(real.len(), 5);
    let exact: Vec<bool> = real.iter().map(|r| r["exact"].as_bool().unwrap()).collect();
    assert_eq!(exact, [false, false, true, false, true]);
    assert_eq!(real[2]["value"], "0");
    assert_eq!(real[4]["value"], "1/2");
    let mut mults: Vec<u64> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["multiplicity"].as_u64().unwrap())
        .collect();
    mults.sort_unstable();
    assert_eq!(mults, [1, 7, 14]);
}

#[test]
fn pencil_of_a_nonreduced_member_fails_cleanly() {
    // At t = 1 the member is the cube of a conic: the discriminant
    // vanishes identically and an empty census would be misleading.
    let out = run(&["pencil", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("vanishes identically"), "stderr: {err}");
}

#[test]
fn group_order_and_abelianization() {
    let v = json_of(&run(&["group", "order", "--presentation", "G"]));
    assert_eq!(v["order"], 42);
    assert_eq!(v["status"], "complete");

    let v = json_of(&run(&["group", "identify", "--presentation", "vankampen"]));
    assert_eq!(v["order"], 42);
    assert_eq!(v["abelian"], false);
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["derived_order"], 7);
    assert_eq!(v["order_histogram"]["21"], 12);

    let v = json_of(&run(&["group", "abelianize", "--presentation", "d14c3"]));
    assert_eq!(v["invariant_factors"], serde_json::json!(["6"]));
}

#[test]
fn coset_limit_env_is_honored() {
    let out = run_with_env(
        &["group", "order", "--presentation", "G"],
        "SEXTIC_LAB_COSET_LIMIT",
        "10",
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("overflowed"), "stderr: {stderr}");

    let out = run_with_env(
        &["group", "order", "--presentation", "G"],
        "SEXTIC_LAB_COSET_LIMIT",
        "banana",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_only_qforms_passes() {
    let out = run(&["verify", "--only", "qforms"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS qforms"), "stdout: {stdout}");
    assert!(stdout.contains("1 passed, 0 failed"), "stdout: {stdout}");
}
