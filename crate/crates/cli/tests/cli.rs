use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn turankit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turankit"))
        .args(args)
        .env_remove("TURANKIT_PRECISION")
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn explicit_kummer_upper_shift_is_all_positive() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = turankit(&[
        "verify", "--theorem", "thm1", "--family", "1f1-upper", "--c", "3", "--a", "1", "--b", "2", "--delta", "1/2", "--M", "40",
        "--out-json", json.to_str().unwrap(), "--out-csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&json);
    assert_eq!(report["summary"]["verified"], 1);
    assert_eq!(report["summary"]["violated"], 0);
    let case = &report["per_case"][0];
    assert_eq!(case["theorem"], "upper-shift");
    let signs = case["details"]["per_index_sign"].as_array().unwrap();
    assert_eq!(signs.len(), 41);
    assert!(signs[2..].iter().all(|s| s == "Positive"));

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "case,theorem,params,index,sign,expected_sign,verdict");
    assert_eq!(lines.count(), 41);
}

#[test]
fn malformed_rational_exits_two() {
    let out = turankit(&["verify", "--theorem", "thm1", "--c", "3", "--a", "1..5", "--b", "2", "--delta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1..5"));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(turankit(&["verify", "--theorem", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(turankit(&["verify", "--theorem", "thm1", "--a", "1", "--b", "2", "--delta", "1", "--c", "3", "--M", "1"]).status.code(), Some(2));
    // explicit parameters with several claims selected
    assert_eq!(turankit(&["verify", "--theorem", "thm1,thm3", "--a", "1"]).status.code(), Some(2));
    // domain violation of an explicit hypothesis
    assert_eq!(turankit(&["verify", "--theorem", "gamma-shift", "--c", "2", "--a", "-1", "--b", "2", "--delta", "1"]).status.code(), Some(2));
}

#[test]
fn silent_chain_and_reversed_sum_pass() {
    // (1,4) against (2,2) satisfies neither chain; R' must change sign
    let out = turankit(&["verify", "--theorem", "symmetric-chain", "--upper", "1,4", "--lower", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    // a < b: the terminating sum is negative, matching sign(a - b)
    let ok = turankit(&["verify", "--theorem", "terminating-sum", "--a", "1", "--b", "3", "--c", "2", "--m", "4"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn inconclusive_is_a_warning_not_a_failure() {
    // (1,4) against (2,2) fails both symmetric chains, so no sign is claimed
    let out = turankit(&["verify", "--theorem", "pfq-chain", "--upper", "1,4", "--lower", "2,2", "--a", "1", "--b", "2", "--delta", "1", "--M", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 violated, 1 inconclusive"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: 1 inconclusive"));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let mut args = vec!["verify", "--theorem", "upper-shift,ratio-lemma,qfq-sum", "--M", "12", "--seed", "11", "--random", "4"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--out-json", path.to_str().unwrap()]);
        assert_eq!(turankit(&args).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let first = run("a.json", &[]);
    assert_eq!(first, run("b.json", &[]));
    assert_eq!(first, run("c.json", &["--sequential"]));
    let other_seed = {
        let path = dir.path().join("d.json");
        let args = ["verify", "--theorem", "upper-shift,ratio-lemma,qfq-sum", "--M", "12", "--seed", "12", "--random", "4", "--out-json", path.to_str().unwrap()];
        assert_eq!(turankit(&args).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    assert_ne!(first, other_seed);
}

#[test]
fn explore_default_branch() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("q.csv");
    let json = dir.path().join("q.json");
    let out = turankit(&["explore", "--out-csv", csv.to_str().unwrap(), "--out-json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "x,Q_lo,Q_hi,bound,step");
    assert_eq!(rows.len(), 65);
    assert!(rows.iter().skip(2).all(|r| !r.ends_with("violation")));
    let report = read_json(&json);
    assert_eq!(report["summary"]["violations"], 0);
    assert_eq!(report["summary"]["points"], 64);
}

#[test]
fn explore_negative_branch_rises_toward_one() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("n.json");
    let out = turankit(&["explore", "--negative", "--c", "5", "--points", "16", "--out-json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&json);
    assert_eq!(report["summary"]["violations"], 0);
    assert_eq!(report["report"]["branch"], "negative");
    // Q moves from 1 at x -> 0- down to the limit as x -> -inf, i.e. increases in x
    let pts = report["report"]["points"].as_array().unwrap();
    let q = |p: &Value| p["q_lo"].as_f64().unwrap();
    assert!(q(&pts[0]) > q(&pts[pts.len() - 1]));
}

#[test]
fn explore_empty_grid_exits_two() {
    assert_eq!(turankit(&["explore", "--points", "0"]).status.code(), Some(2));
    assert_eq!(turankit(&["explore", "--x", ""]).status.code(), Some(2));
    assert_eq!(turankit(&["explore", "--x", "1,-1"]).status.code(), Some(2));
}

#[test]
fn precision_env_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("p.json");
    let out = Command::new(env!("CARGO_BIN_EXE_turankit"))
        .args(["verify", "--theorem", "turan-bound", "--out-json", json.to_str().unwrap()])
        .env("TURANKIT_PRECISION", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bits = read_json(&json)["config_echo"]["precision_bits"].as_u64().unwrap();
    assert!(bits > 166, "{bits}");
}

#[test]
fn full_default_suite_passes() {
    let out = turankit(&["verify", "--theorem", "all", "--grid", "default"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
