use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpn")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = ncpn(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn script(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "scripts", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("ncpn-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn parse_prints_canonical_terms() {
    let (code, v) = json(&["--quiver", "cm", "parse", "1/3 a a a"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["check"], "parse");
    assert_eq!(v["verdict"], Value::Null);
    assert_eq!(v["result"]["text"], "1/3 a a a");
    assert_eq!(v["result"]["terms"][0]["coeff"], "1/3");
    assert_eq!(v["result"]["terms"][0]["word"], serde_json::json!(["a", "a", "a"]));

    let (_, v) = json(&["--quiver", "cm", "parse", "[@a^, @a]"]);
    assert_eq!(v["params"]["kind"], "polyvector");
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn incomposable_product_is_zero_with_warning() {
    let (code, v) = json(&["--quiver", "gh", "parse", "a y"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["text"], "0");
    assert!(v["warnings"][0].as_str().unwrap().contains("incomposable"));
    let out = ncpn(&["--quiver", "gh", "parse", "a y"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("warning:"));
}

#[test]
fn builtins_resolve_without_quiver_flag() {
    let (code, v) = json(&["parse", "cm.H1"]);
    assert_eq!(code, 0);
    assert_eq!(v["params"]["kind"], "path");
    let (_, v) = json(&["builtins"]);
    assert!(v["result"].as_array().unwrap().iter().any(|n| n == "gh.pi1"));
}

#[test]
fn poisson_check_passes() {
    let (code, v) = json(&["check", "poisson", "cm.pi1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["residue"], Value::Null);
    assert!(v["cases"].as_u64().unwrap() >= 1);
}

#[test]
fn non_poisson_bivector_fails_with_residue() {
    let (code, v) = json(&["--quiver", "cm", "check", "poisson", "[a^ a^ @a^, @a]"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
    assert!(v["residue"].is_string());
}

#[test]
fn hierarchy_matches_closed_forms() {
    let (code, v) = json(&["hierarchy", "cm.pi0", "cm.N", "--depth", "3", "--expect", "cm.pi"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn gh_lenard_chain() {
    let (code, v) = json(&["check", "lenard", "gh.pi0", "gh.pi1", "--chain", "I2", "--links", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["cases"], 4);
}

#[test]
fn nijenhuis_checks() {
    let (code, v) = json(&["check", "torsion", "cm.N", "--bound", "2"]);
    assert_eq!((code, &v["verdict"]), (0, &Value::from("pass")));
    let (code, _) = json(&["check", "compat", "cm.pi0", "cm.N", "--bound", "2"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["check", "ksm", "cm.pi0", "cm.N_alt", "--bound", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncpn(&["check", "bogus"]).status.code(), Some(2));
    assert_eq!(ncpn(&["--quiver", "cm", "parse", "a +"]).status.code(), Some(2));
    assert_eq!(ncpn(&["check", "poisson", "cm.pi0", "gh.pi0"]).status.code(), Some(2));
    assert_eq!(ncpn(&["check", "torsion"]).status.code(), Some(2));
    let (code, v) = json(&["parse", "nobody.knows"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = json(&["check", "poisson", "cm.pi0"]);
    assert_eq!(v["elapsed_ms"], Value::Null);
    let (_, v) = json(&["check", "poisson", "cm.pi0", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn output_is_deterministic() {
    let args = ["--quiver", "gh", "rep-eval", "a a x x^", "--seed", "7", "--dims", "2,1"];
    let a = ncpn(&args);
    let b = ncpn(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["check", "descent", "cm.pi0", "cm.pi1", "--points", "3", "--format", "json"];
    assert_eq!(ncpn(&args).stdout, ncpn(&args).stdout);
}

#[test]
fn rep_eval_reads_a_point() {
    let (_, v) = json(&["--quiver", "cm", "rep-eval", "a a^", "--dims", "2", "--seed", "3"]);
    let point = temp("point.json", &v["result"]["point"].to_string());
    let (code, w) = json(&["--quiver", "cm", "rep-eval", "a a^", "--point", &point]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], w["result"]["value"]);
}

#[test]
fn shipped_scripts_pass() {
    for s in ["compatibility.ncpn", "custom.ncpn", "gh.ncpn", "lenard.ncpn"] {
        let (code, v) = json(&["run", &script(s)]);
        assert_eq!(code, 0, "{s}");
        assert_eq!(v["verdict"], "pass", "{s}");
    }
}

#[test]
fn script_errors_carry_line_numbers_and_run_nothing() {
    let p = temp("bad.ncpn", "use cm\ncheck poisson cm.pi0\nlet x = a +\n");
    let out = ncpn(&["run", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:"));
    let p = temp("mixed.ncpn", "use cm\nuse gh\n");
    assert_eq!(ncpn(&["run", &p]).status.code(), Some(2));
}

#[test]
fn script_with_failing_check_exits_1() {
    let p = temp("fail.ncpn", "use cm\nlet b = [a^ a^ @a^, @a]\ncheck poisson b\ncheck poisson cm.pi0\nreport\n");
    let (code, v) = json(&["run", &p]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["reports"][2]["verdict"], "fail");
}
