use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn adhm(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_adhm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn report(args: &[&str], stdin: Option<&str>) -> Value {
    let out = adhm(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn check_gitvsfj() {
    let r = report(&["check", "--fixture", "gitvsfj", "--json"], None);
    assert_eq!(r["adhm"], true);
    assert_eq!(r["stable"], true);
    assert_eq!(r["costable"], true);
    assert_eq!(r["fj_semistable"], false);
    assert_eq!(r["unstable_locus"]["kind"], "whole_line");
}

#[test]
fn check_fj_counterexample() {
    let r = report(&["check", "--fixture", "fj-counterexample", "--json"], None);
    assert_eq!(r["fj_stable"], true);
    assert_eq!(r["chern"]["charge"], 3);
}

#[test]
fn check_empty_datum_is_vacuously_true() {
    let zero = r#"{"c":0,"r":2,"B1":[],"B2":[],"i":[],"j":[[],[]]}"#;
    let r = report(&["check", "--input", "-", "--json"], Some(zero));
    for key in ["adhm", "stable", "costable", "regular", "fj_stable", "fj_semistable", "fj_costable", "fj_regular"] {
        assert_eq!(r[key], true, "{key}");
    }
}

#[test]
fn deform_fj_counterexample() {
    let r = report(&["deform", "--fixture", "fj-counterexample", "--json"], None);
    assert_eq!((r["h0"].as_u64(), r["h1"].as_u64(), r["h2"].as_u64()), (Some(0), Some(51), Some(3)));
    assert_eq!(r["smooth_point"], false);
    assert_eq!(r["surjectivity_criterion"], false);
    assert_eq!(r["euler_characteristic"], -48);
    let with_complex = report(&["deform", "--fixture", "gitvsfj", "--complex", "--json"], None);
    assert_eq!(with_complex["d1"].as_array().unwrap().len(), 12);
}

#[test]
fn du_fj_counterexample() {
    let r = report(&["du", "--fixture", "fj-counterexample", "--json"], None);
    assert_eq!(r["c_prime"], 0);
    assert_eq!(r["rank0_charge"], 3);
}

#[test]
fn monad_point_and_line() {
    let r = report(
        &["monad", "--fixture", "gitvsfj", "--point", "1,2,5,7", "--line", "1,0,0,0;0,1,0,0", "--json"],
        None,
    );
    assert_eq!(r["framing"]["rank"], 1);
    assert_eq!(r["point"]["fiber_dim"], 1);
    assert_eq!(r["line"]["beta_locus"]["kind"], "whole_line");
    assert_eq!(r["monad"]["alpha"][0][0], serde_json::json!({"x0": "1", "x2": "1"}));
}

#[test]
fn rank0_reports() {
    let r = report(&["rank0", "--c2-fixtures", "--json"], None);
    assert_eq!(r["all_pass"], true);

    let r = report(&["rank0", "--lines", "3,0,0,5", "--traces", "1", "--json"], None);
    let trace = |w: &str| {
        r["traces"].as_array().unwrap().iter().find(|e| e["word"] == w).unwrap()["trace"].clone()
    };
    assert_eq!(trace("y1"), "-3");
    assert_eq!(trace("z2"), "-5");

    let r = report(&["rank0", "--charge1", "x=1,0;y=2,0;z=0,0;w=0,1", "--json"], None);
    assert_eq!(r["dmu_rank"], 3);
    assert_eq!(r["stable"], true);
    assert_eq!(r["fj_stable"], false);

    let r = report(&["rank0", "--fixture", "lines-demo", "--json"], None);
    assert_eq!(r["relations_hold"], true);
    assert_eq!(r["max_len"], 4);
}

#[test]
fn fixtures_round_trip_through_json() {
    let list = report(&["fixtures", "--json"], None);
    for entry in list.as_array().unwrap() {
        let id = entry["id"].as_str().unwrap();
        let printed = adhm(&["fixtures", id], None);
        assert!(printed.status.success());
        let text = String::from_utf8(printed.stdout).unwrap();
        let direct = report(&["check", "--fixture", id, "--json"], None);
        let parsed = report(&["check", "--input", "-", "--json"], Some(&text));
        assert_eq!(direct, parsed, "{id}");
        if entry["r"] == 0 {
            let traces = report(&["rank0", "--input", "-", "--json", "--traces", "1"], Some(&text));
            assert_eq!(traces["relations_hold"], true);
        }
    }
}

#[test]
fn input_file_path() {
    let path = std::env::temp_dir().join(format!("adhm-cli-test-{}.json", std::process::id()));
    let text = adhm(&["fixtures", "gitvsfj"], None).stdout;
    std::fs::write(&path, text).unwrap();
    let r = report(&["check", "--input", path.to_str().unwrap(), "--json"], None);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(r["stable"], true);
}

#[test]
fn schema_errors_exit_2_with_position() {
    let bad = "{\n  \"c\": 1,\n  \"r\": 0,\n  \"B1\": [[{\"x0\": \"one\"}]]\n}";
    let out = adhm(&["check", "--input", "-"], Some(bad));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let unknown = r#"{"c":0,"r":0,"B1":[],"B2":[],"i":[],"j":[],"extra":1}"#;
    let out = adhm(&["check", "--input", "-"], Some(unknown));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column"), "{}", stderr(&out));

    let out = adhm(&["check", "--fixture", "no-such-fixture"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gitvsfj"));
}

#[test]
fn precondition_failures_exit_2() {
    let not_adhm = r#"{"c":1,"r":1,"B1":[[{}]],"B2":[[{}]],"i":[[{"x0":"1"}]],"j":[[{"x0":"1"}]]}"#;
    let out = adhm(&["monad", "--input", "-"], Some(not_adhm));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ADHM"));

    let out = adhm(&["check", "--fixture", "fj-counterexample", "--max-c", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("size guard"));

    let out = adhm(&["du", "--fixture", "lines-demo"], None);
    assert_eq!(out.status.code(), Some(2));

    let out = adhm(&["rank0", "--lines", "1,2,3"], None);
    assert_eq!(out.status.code(), Some(2));

    let out = adhm(&["rank0", "--fixture", "gitvsfj"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["check", "--fixture", "gitvsfj"][..],
        &["deform", "--fixture", "fj-counterexample", "--json"][..],
        &["rank0", "--c2-fixtures"][..],
        &["du", "--fixture", "charge1-nonsingular", "--json"][..],
    ] {
        let a = adhm(args, None);
        let b = adhm(args, None);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_output_renders_linear_forms() {
    let out = adhm(&["monad", "--fixture", "gitvsfj"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[x0 + x2, x0]"), "{text}");
}
