use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const SPHERE: &str = "1,0,0,0,0,1,0,0,0,1,0,0,1,0,1";
const PENCIL: &str = "0,0,0,0,0,1,0,0,0,2,0,0,3,0,4";

fn surface_file(field: &str, seed: &str) -> tempfile::NamedTempFile {
    let out = run(&["random", "--field", field, "--seed", seed]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", v[0]["surface"]).unwrap();
    f
}

#[test]
fn random_is_deterministic() {
    let a = run(&["random", "--field", "17", "--count", "3", "--seed", "7"]);
    let b = run(&["random", "--field", "17", "--count", "3", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["surface"]["p"], 17);
    assert_eq!(v[0]["surface"]["f1"].as_array().unwrap().len(), 15);
}

#[test]
fn random_over_f9_and_f4() {
    let out = run(&["random", "--field", "9"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v[0]["surface"]["q"], 2);
    let out = run(&["random", "--field", "3^2"]);
    assert_eq!(stdout_json(&out), v);

    let out = run(&["random", "--field", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "characteristic 2 unsupported");
}

#[test]
fn count_rejects_bad_input() {
    let out = run(&["count", "--field", "17", "--f1", SPHERE, "--f2", SPHERE]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "not smooth");

    let out = run(&["count", "--field", "2", "--f1", SPHERE, "--f2", PENCIL]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "characteristic 2 unsupported");

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"p\": 17, \"q\": 1, \"f1\": [1, 2]").unwrap();
    let out = run(&["count", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "parse error");

    let out = run(&["count", "--field", "17", "--f1", "1,2,3", "--f2", PENCIL]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "parse error");

    let out = run(&["count", "--field", "6", "--f1", SPHERE, "--f2", PENCIL]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_diagonal_pencil() {
    let out = run(&["count", "--field", "17", "--f1", SPHERE, "--f2", PENCIL]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["format"], "arithline-report-v1");
    assert_eq!(v["is_8H"], true);
    assert_eq!(v["sum_degrees"], 16);
    assert_eq!(v["total"]["rank"], 16);
    assert_eq!(v["qhat_used"], Value::Null);

    let text = run(&["count", "--field", "17", "--f1", SPHERE, "--f2", PENCIL, "--text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("equals 8H: true"));
}

#[test]
fn count_small_field_uses_extension() {
    let out = run(&["count", "--field", "5", "--f1", SPHERE, "--f2", "0,0,0,0,0,1,0,0,0,2,0,0,3,0,-1"]);
    let v = stdout_json(&out);
    assert_eq!(v["qhat_used"], 3);
    assert_eq!(v["working_field"]["n"], 3);
    assert_eq!(v["total_over_base"]["rank"], 16);
    let code = if v["is_8H"] == true { 0 } else { 2 };
    assert_eq!(out.status.code(), Some(code));
}

#[test]
fn count_exit_code_tracks_8h() {
    let f = surface_file("17", "3");
    let path = f.path().to_str().unwrap();
    let out = run(&["count", "--input", path]);
    let v = stdout_json(&out);
    assert_eq!(v["sum_degrees"], 16);
    let code = if v["is_8H"] == true { 0 } else { 2 };
    assert_eq!(out.status.code(), Some(code));

    let verbose = stdout_json(&run(&["count", "--input", path, "--verbose"]));
    assert!(verbose["chart_systems"].is_object());
}

#[test]
fn count_with_given_one_form() {
    let one_form = "1,0,0,0,0,0,0,0,0,0";
    let out = run(&["count", "--field", "17", "--f1", SPHERE, "--f2", PENCIL, "--one-form", one_form]);
    assert_eq!(stdout_json(&out)["one_form"][0][0], 1);
    // the zero form vanishes everywhere
    let zero = "0,0,0,0,0,0,0,0,0,0";
    let out = run(&["count", "--field", "17", "--f1", SPHERE, "--f2", PENCIL, "--one-form", zero]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "degenerate one-form");
}

#[test]
fn oracle_agrees_and_guards() {
    let f = surface_file("17", "1");
    let path = f.path().to_str().unwrap();
    let out = run(&["oracle", "--input", path, "--dmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["agree"], true);
    assert!(v["diff"]["only_oracle"].as_array().unwrap().is_empty());

    let out = run(&["oracle", "--input", path, "--dmax", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "too large");

    let out = run(&["oracle", "--field", "17", "--f1", SPHERE, "--f2", SPHERE]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "not smooth");
}

#[test]
fn selftest_is_reproducible() {
    let a = run(&["selftest", "--seed", "3"]);
    let b = run(&["selftest", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    let code = if v["all_passed"] == true { 0 } else { 1 };
    assert_eq!(a.status.code(), Some(code));
    for name in ["qhat table", "GW relations", "trace form rank", "chart independence"] {
        let row = v["checks"].as_array().unwrap().iter().find(|r| r["check"] == name).unwrap();
        assert_eq!(row["passed"], true, "{name}");
    }

    let forced = run(&["selftest", "--force-fail"]);
    assert_eq!(forced.status.code(), Some(1));
    assert_eq!(stdout_json(&forced)["all_passed"], false);
}
