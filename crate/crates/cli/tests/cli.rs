use std::path::PathBuf;
use std::process::{Command, Output};

fn blendext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blendext")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("blendext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const CONST_ONE_TRIANGLE: &str = r#"{"n":2,"k":0,"facets":[
 {"omit":0,"form":{"n":2,"vertices":[1,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":1,"den":1}]}]}},
 {"omit":1,"form":{"n":2,"vertices":[0,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":1,"den":1}]}]}},
 {"omit":2,"form":{"n":2,"vertices":[0,1],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":1,"den":1}]}]}}]}"#;

const INTERVAL_0_1: &str = r#"{"n":1,"k":0,"facets":[
 {"omit":0,"form":{"n":1,"vertices":[1],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0],"num":1,"den":1}]}]}},
 {"omit":1,"form":{"n":1,"vertices":[0],"k":0,"terms":[]}}]}"#;

#[test]
fn verify_all_suites_on_the_triangle() {
    let json = std::env::temp_dir().join(format!("blendext-report-{}.json", std::process::id()));
    let o = blendext(&["verify", "--n", "2", "--r", "2", "--suite", "all", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert!(report["suites"].as_array().unwrap().len() >= 8);
    assert!(report.get("timings_ms").is_none());
}

#[test]
fn verify_tetrahedron_trace_and_cochain() {
    let o = blendext(&["verify", "--n", "3", "--r", "1", "--suite", "trace,cochain"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_rejects_out_of_range() {
    assert_eq!(blendext(&["verify", "--n", "9"]).status.code(), Some(2));
    assert_eq!(blendext(&["verify", "--n", "3", "--r", "3"]).status.code(), Some(2));
    assert_eq!(blendext(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let base = std::env::temp_dir().join(format!("blendext-det-{}", std::process::id()));
    let a = format!("{}-a.json", base.display());
    let b = format!("{}-b.json", base.display());
    for path in [&a, &b] {
        let o = blendext(&["verify", "--n", "1..2", "--r", "1", "--seed", "11", "--json", path]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn extend_constant_and_interval() {
    let input = scratch("const.json", CONST_ONE_TRIANGLE);
    let out = scratch("const-out.json", "");
    let o = blendext(&["extend", input.to_str().unwrap(), "--k", "0", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("polynomial degree 0"));
    let e = blendext(&["eval", out.to_str().unwrap(), "--point", "1/5,1/5,3/5"]);
    assert_eq!(stdout(&e).trim(), "1/1");

    let input = scratch("interval.json", INTERVAL_0_1);
    let out = scratch("interval-out.json", "");
    let o = blendext(&["extend", input.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let e = blendext(&["eval", out.to_str().unwrap(), "--point", "2/7,5/7"]);
    assert_eq!(stdout(&e).trim(), "5/7");
}

#[test]
fn extend_error_codes() {
    let bad = scratch("bad.json", "{\"n\": 2, ");
    assert_eq!(blendext(&["extend", bad.to_str().unwrap()]).status.code(), Some(2));
    let mismatched = CONST_ONE_TRIANGLE.replacen("\"num\":1", "\"num\":2", 1);
    let path = scratch("mismatch.json", &mismatched);
    assert_eq!(blendext(&["extend", path.to_str().unwrap()]).status.code(), Some(1));
    let path = scratch("const2.json", CONST_ONE_TRIANGLE);
    assert_eq!(blendext(&["extend", path.to_str().unwrap(), "--k", "1"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let one = scratch(
        "one.json",
        r#"{"n":2,"vertices":[0,1,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0,0],"num":1,"den":1}]}]}"#,
    );
    let o = blendext(&["eval", one.to_str().unwrap(), "--point", "1/3,1/3,1/3"]);
    assert_eq!(stdout(&o).trim(), "1/1");

    let lam = scratch(
        "lambda1.json",
        r#"{"n":2,"vertices":[0,1,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,1,0],"num":1,"den":1}]}]}"#,
    );
    let o = blendext(&["eval", lam.to_str().unwrap(), "--point", "1/3,1/3,1/3"]);
    assert_eq!(stdout(&o).trim(), "1/3");

    let dlam = scratch(
        "dlambda1.json",
        r#"{"n":2,"vertices":[0,1,2],"k":1,"terms":[{"dlambda":[1],"poly":[{"alpha":[0,0,0],"num":1,"den":1}]}]}"#,
    );
    let o = blendext(&["eval", dlam.to_str().unwrap(), "--point", "1/3,1/3,1/3", "--vector", "x1-x0"]);
    assert_eq!(stdout(&o).trim(), "1/1");
    let o = blendext(&["eval", dlam.to_str().unwrap(), "--point", "1/3,1/3,1/3", "--vector", "-1,1,0"]);
    assert_eq!(stdout(&o).trim(), "1/1");

    let o = blendext(&["eval", lam.to_str().unwrap(), "--point", "1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bases_table() {
    let o = blendext(&["bases", "--n", "2", "--r", "1..2", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(" 2  1  1  trimmed      3  ok"), "{text}");
    assert!(text.contains(" 2  2  1     full     12  ok"), "{text}");
    assert_eq!(blendext(&["bases", "--n", "5"]).status.code(), Some(2));
}
