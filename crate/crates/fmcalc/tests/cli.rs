use std::io::Write;
use std::process::Command;

use fmcalc::json::canonical;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fmcalc").chain(args.iter().copied());
    let code = fmcalc::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn spec(name: &str) -> String {
    format!("{}/specs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn unramified_suite_reports_images() {
    let (code, out, _) = run(&["verify", "unramified", "--p", "2", "--f", "2", "--N", "6"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["cases"][0]["images"][3], "v2");
}

#[test]
fn flagship_spec_is_not_realizable() {
    for name in ["bp_p2_example.json", "bp_p3_example.json"] {
        let (code, out, _) = run(&["obstruct", &spec(name)]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "NotRealizable");
        assert_eq!(v["rules_fired"][0]["rule"], "R1");
    }
    let (_, out, _) = run(&["obstruct", &spec("va_unramified_f2.json")]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rules_fired"][0]["rule"], "R2");
}

#[test]
fn splitting_finds_three() {
    let (code, out, _) = run(&["splitting", "x^2+1", "--pmax", "100"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["prime"], 3);
    let (code, _, err) = run(&["splitting", "x^2-x", "--pmax", "10"]);
    assert_eq!(code, 1);
    assert!(err.contains("NoSuitablePrimeFound"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "no-such-suite"]).0, 2);
    assert_eq!(run(&["tower", "check"]).0, 2);
    assert_eq!(run(&["tower", "check", "--f", "2"]).0, 2);
    assert_eq!(run(&["splitting", "x^^2"]).0, 2);
    assert_eq!(run(&["obstruct", "/nonexistent/spec.json"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    // module errors are check failures
    let (code, _, err) = run(&["tower", "check", "--p", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotPrime"));
    let (code, _, err) = run(&["tower", "check", "--p", "2", "--eis", "-4,0,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotEisenstein"), "{err}");
    assert_eq!(run(&["verify", "low-degree", "--p", "2", "--f", "2"]).0, 1);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, r#"{{"tower": {{"p": 3, "e": 2}}, "N": 3, "seed": 99}}"#).unwrap();
    let (code, out, _) = run(&["gamma", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 99);
    assert_eq!(v["images"].as_array().unwrap().len(), 3);
    assert_eq!(v["target"]["e"], 2);
    // flags override the file
    let (_, out, _) = run(&["gamma", "--config", path.to_str().unwrap(), "--N", "2", "--seed", "5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["images"].as_array().unwrap().len(), 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"N": 0}"#).unwrap();
    assert_eq!(run(&["verify", "unramified", "--config", bad.to_str().unwrap()]).0, 2);
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"colour": "red"}"#).unwrap();
    assert_eq!(run(&["verify", "unramified", "--config", unknown.to_str().unwrap()]).0, 2);
}

#[test]
fn binary_reads_config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.json");
    std::fs::write(&path, r#"{"tower": {"p": 2, "f": 3}, "N": 3, "output": "text"}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fmcalc"))
        .args(["verify", "unramified"])
        .env("FMCALC_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cases[0].f: 3"), "{text}");
    assert!(text.contains("passed: true"));

    let out = Command::new(env!("CARGO_BIN_EXE_fmcalc")).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_round_trip_and_repeat() {
    for args in [
        vec!["verify", "ordering", "--seed", "3"],
        vec!["verify", "eventual-division"],
        vec!["log", "--p", "2", "--e", "2", "--N", "3"],
    ] {
        let (code, a, _) = run(&args);
        assert_eq!(code, 0);
        let (_, b, _) = run(&args);
        assert_eq!(a, b);
        let parsed: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(canonical(&parsed), a);
    }
    let (_, out, _) = run(&["verify", "ordering", "--seed", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["cases"][0]["seed"], 3);
}

#[test]
fn local_cohomology_from_file() {
    let (code, out, _) = run(&["localcoh", &spec("localcoh_example.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degrees"][0]["h0_invariants"], serde_json::json!(["9"]));
    assert_eq!(v["degrees"][2]["h1_corank"], 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"p": 2, "degrees": [{"degree": 0, "matrix": [["1/2"]]}]}"#).unwrap();
    let (code, _, err) = run(&["localcoh", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("NonIntegerMatrix"));
}

#[test]
fn polynomial_parser() {
    use fmcalc::cli::parse_univariate;
    let c = parse_univariate("x^3 - 2").unwrap();
    assert_eq!(c, vec![(-2).into(), 0.into(), 0.into(), 1.into()]);
    let c = parse_univariate("2*x^2+x-1").unwrap();
    assert_eq!(c, vec![(-1).into(), 1.into(), 2.into()]);
}
