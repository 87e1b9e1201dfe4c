use std::io::Write;
use std::process::{Command, Output};

fn pf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pf"))
        .args(args)
        .env_remove("PF_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("pfsym-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn expand_four_text() {
    let o = pf(&["expand", "4", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "a(1,2)a(3,4) - a(1,3)a(2,4) + a(1,4)a(2,3)");
}

#[test]
fn expand_json_is_valid_and_stable() {
    let a = pf(&["expand", "6", "--format", "json"]);
    let b = pf(&["expand", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["terms"], 15);
    let poly: pfsym::poly::Poly = serde_json::from_value(v["pfaffian"].clone()).unwrap();
    assert_eq!(poly.len(), 15);
}

#[test]
fn matchings_line_count() {
    let o = pf(&["matchings", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 15);
    assert_eq!(text.lines().next(), Some("+ (1,2)(3,4)(5,6)"));
    let o = pf(&["matchings", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[1]["sign"], -1);
}

#[test]
fn verify_all_small_exits_zero() {
    let o = pf(&["verify", "all", "--n", "1..3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "cosine,trig-alternating", "--n", "2..3", "--seed", "42", "--format", "json"];
    let a = pf(&args);
    let b = pf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["check", "n", "mode", "pass", "residual", "lhs", "rhs", "seed"] {
            assert!(v.get(key).is_some(), "{key} missing in {line}");
        }
        assert_eq!(v["seed"], 42);
    }
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let o = pf(&["verify", "cosine", "--n", "3", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn eval_and_det_files() {
    let path = temp_file(
        "sq.json",
        r#"{"two_n": 4, "mode": "symmetric",
            "entries": {"1,2": "1", "1,3": "4", "1,4": "9", "2,3": "1", "2,4": "4", "3,4": "1"}}"#,
    );
    let o = pf(&["eval", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "-6");
    let o = pf(&["det", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["determinant"], "0");
    let o = pf(&["sym", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("order 24"));
}

#[test]
fn sym_builtin_and_poly() {
    let o = pf(&["sym", "--builtin", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 12);
    assert_eq!(v["equals_dihedral"], true);
    assert!(v.get("elements").is_none());
    let o = pf(&["sym", "--builtin", "4", "--mode", "skew", "--signed", "--elements"]);
    assert_eq!(stdout(&o).lines().count(), 25);
    let o = pf(&["sym", "--poly", "(x1-x2)(x2-x3)(x3-x4)(x4-x1)", "--degree", "4"]);
    assert!(stdout(&o).contains("order 8"), "{}", stdout(&o));
}

#[test]
fn schema_errors_name_the_key() {
    let path = temp_file("bad.json", r#"{"two_n": 4, "entries": {"1,2": "1"}}"#);
    let o = pf(&["eval", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entries.1,3"));
}

#[test]
fn caps_are_reported() {
    let o = Command::new(env!("CARGO_BIN_EXE_pf"))
        .args(["expand", "8"])
        .env("PF_CAP", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("cap 6"), "{err}");
    let o = pf(&["matchings", "18"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 16"));
}

#[test]
fn usage_errors() {
    assert_eq!(pf(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(pf(&["verify", "all", "--n", "3..1"]).status.code(), Some(2));
    assert_eq!(pf(&[]).status.code(), Some(2));
    assert!(pf(&["--help"]).status.success());
}

#[test]
fn run_is_callable_in_process() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = pfsym::cli::run(["pf", "expand", "2"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "a(1,2)\n");
}
