use std::process::{Command, Output};

use serde_json::Value;

fn detrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detrep")).args(args).env_remove("DETREP_PRIME").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = detrep(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn formulas_examples() {
    let v = json(&["formulas", "--t", "2", "--c", "2", "--d", "2"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["results"]["chi_bound"]["0"], -1);
    assert_eq!(v["results"]["criterion"], true);
    assert_eq!(v["results"]["fgh"]["f"], -1);

    let v = json(&["formulas", "--t", "3", "--c", "2", "--d", "17"]);
    assert_eq!(v["results"]["criterion"], false);

    let v = json(&["formulas", "--t", "2", "--c", "1"]);
    assert_eq!(v["results"]["fgh"]["h"], 0);
    assert_eq!(v["results"]["forms_agree"], true);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(code(&detrep(&["formulas", "--t", "2"])), 2);
    assert_eq!(code(&detrep(&["formulas", "--t", "2", "--c", "2", "--d", "3", "--nu", "1"])), 2);
    assert_eq!(code(&detrep(&["ext", "--t", "2", "--c", "2", "--n", "4", "--i", "1", "--nu", "-3"])), 2);
}

#[test]
fn table_diff_is_empty() {
    let out = detrep(&["table"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 26);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(csv.contains("3,2,d<=16,3,2,d<=16"));
    assert!(csv.contains("t<=17,2,2,t<=17,2,2"));
    assert!(csv.contains("3,c<=26,5,3,c<=26,5"));
}

fn ext_dims(v: &Value) -> Vec<i64> {
    v["results"]["entries"].as_array().unwrap().iter().map(|e| e["dim"].as_i64().unwrap()).collect()
}

#[test]
fn ext_examples() {
    let v = json(&["ext", "--t", "2", "--c", "3", "--n", "5", "--pair", "L2L1", "--i", "1", "--nu", "0"]);
    assert_eq!(ext_dims(&v), [2]);
    assert_eq!(v["results"]["entries"][0]["matches"], true);

    let v = json(&["ext", "--t", "3", "--c", "1", "--n", "3", "--pair", "L2L1", "--i", "1", "--nu", "0"]);
    assert_eq!(ext_dims(&v), [3]);

    let v = json(&["ext", "--t", "2", "--c", "2", "--n", "4", "--pair", "L2L1", "--i", "0", "--nu", "0"]);
    assert_eq!(ext_dims(&v), [0]);

    let v = json(&["ext", "--t", "3", "--c", "2", "--n", "5", "--pair", "MMdual", "--i", "0,1"]);
    assert_eq!(ext_dims(&v), [0, 4]);
}

#[test]
fn output_is_deterministic() {
    let args = ["ext", "--t", "3", "--c", "2", "--n", "5", "--i", "0,1,2", "--nu", "0,-1", "--seed", "7"];
    assert_eq!(detrep(&args).stdout, detrep(&args).stdout);
}

#[test]
fn chi_matches_bound() {
    let v = json(&["chi", "--t", "3", "--c", "3", "--n", "5"]);
    assert_eq!(v["results"]["oracle"], serde_json::json!([-17, -12, 3]));
    assert_eq!(v["results"]["consistent"], true);
    assert_eq!(v["model"]["p"], 32003);
}

#[test]
fn prime_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_detrep"))
        .args(["chi", "--t", "2", "--c", "2", "--n", "4"])
        .env("DETREP_PRIME", "10007")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["model"]["p"], 10007);
    assert_eq!(v["results"]["oracle"], serde_json::json!([-1, -2, 0]));

    let bad = Command::new(env!("CARGO_BIN_EXE_detrep"))
        .args(["formulas", "--t", "2", "--c", "2"])
        .env("DETREP_PRIME", "12")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn resolve_reports_exactness() {
    let v = json(&["resolve", "--t", "2", "--c", "2", "--n", "4", "--complex", "D", "--i", "-1"]);
    assert_eq!(v["results"]["ranks"], serde_json::json!([3, 6, 3]));
    assert_eq!(v["results"]["expected_ranks"], v["results"]["ranks"]);
    assert_eq!(v["results"]["d_squared_zero"], true);
    assert_eq!(v["results"]["exactness"]["failures"], serde_json::json!([]));
}

#[test]
fn extend_cubic_scroll() {
    let v = json(&["extend", "--t", "2", "--c", "2", "--n", "4", "--rank", "2"]);
    let u = &v["results"]["ulrich"];
    assert_eq!(u["generators"], 6);
    assert_eq!(u["additivity"], true);
    assert_eq!(v["results"]["a_module"], "pass");

    let v = json(&["extend", "--t", "2", "--c", "2", "--n", "4", "--rank", "1", "--presentation"]);
    assert_eq!(v["results"]["ulrich"]["generators"], 3);
    assert_eq!(v["results"]["presentation"]["rank"], 1);

    let out = detrep(&["extend", "--t", "2", "--c", "2", "--n", "4", "--rank", "50"]);
    assert_eq!(code(&out), 2);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["refused"], true);
    assert_eq!(v["results"]["a_module_class_dim"], 1);
}

#[test]
fn scan_csv() {
    let out = detrep(&["scan", "--t-range", "3", "--c-range", "3", "--d-range", "5..4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "t,c,d,n,chi0,chi-1,chi-2,criterion,ext1,verdict,seed\n");

    let grid = ["scan", "--t-range", "2..4", "--c-range", "1..3", "--d-range", "1..3", "--oracle", "--max-n", "6"];
    let one = detrep(&[&grid[..], &["--jobs", "1"]].concat());
    let many = detrep(&[&grid[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.contains("\n2,3,2,5,-2,-3,0,true,2,tame,1\n"));
}

#[test]
fn scan_matches_table() {
    // every triple of the t = 3, c = 2 column agrees with the table membership
    let out = detrep(&["scan", "--t-range", "3", "--c-range", "2", "--d-range", "2..20"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let d: usize = f[2].parse().unwrap();
        assert_eq!(f[7] == "true", d <= 16, "{line}");
    }
}

#[test]
fn verify_subset() {
    let out = detrep(&["verify", "--criteria", "1,2,3,4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
