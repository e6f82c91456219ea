use std::process::Command;

use edgeideal::cli::{run, EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_SKIPPED};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("edgeideal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert!(code == EXIT_OK || code == EXIT_SKIPPED, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn gen_reports_counts() {
    let v = json(&["gen", "tsnake(n=3,p=3)"]);
    assert_eq!((v["vertices"].as_u64(), v["edges"].as_u64()), (Some(13), Some(21)));
    let v = json(&["gen", "brs(q=3,ouroboros(n=4,p=2))"]);
    assert_eq!((v["vertices"].as_u64(), v["edges"].as_u64()), (Some(48), Some(56)));
    let (code, out, _) = call(&["gen", "star(u=1)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("2 vertices, 1 edges"));
    assert_eq!(out.matches(" -- ").count(), 1);
}

#[test]
fn gen_is_deterministic() {
    assert_eq!(call(&["gen", "brs(q=2,tsnake(n=2,p=2))"]), call(&["gen", "brs(q=2,tsnake(n=2,p=2))"]));
}

#[test]
fn inv_matches_known_values() {
    let v = json(&["inv", "brs(q=1,tsnake(n=1,p=1))"]);
    let get = |k: &str| v[k].as_u64().unwrap();
    assert_eq!((get("depth"), get("sdepth"), get("reg"), get("pdim")), (3, 3, 1, 3));
    assert!(v.get("timings_ms").is_none());
    let v = json(&["inv", "star(u=3)"]);
    assert_eq!((v["reg"].as_u64(), v["depth"].as_u64()), (Some(1), Some(1)));
    let v = json(&["inv", "path(4)", "--field", "3", "--timings"]);
    assert_eq!((v["depth"].as_u64(), v["field"].as_u64()), (Some(2), Some(3)));
    assert!(v["timings_ms"]["betti"].is_u64());
}

#[test]
fn inv_csv_is_the_betti_table() {
    let (code, out, _) = call(&["inv", "path(4)", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "i,j,beta\n0,0,1\n1,2,3\n2,3,2\n");
}

#[test]
fn cap_errors_explain_the_flag() {
    let (code, _, err) = call(&["inv", "tsnake(n=4,p=3)", "--hochster-cap", "8"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("--hochster-cap"), "{err}");
}

#[test]
fn sdepth_witness_and_bounds() {
    let v = json(&["sdepth", "cycle(n=5)"]);
    assert_eq!(v["sdepth"].as_u64(), Some(2));
    assert!(!v["witness"].as_array().unwrap().is_empty());
    let v = json(&["sdepth", "brs(q=1,tsnake(n=2,p=2))"]);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(7), Some(7)));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(call(&["verify", "th3.3", "--n", "1..4", "--p", "1..2"]).0, EXIT_OK);
    assert_eq!(call(&["verify", "lem4.4", "--n", "1..2", "--p", "1", "--q", "1"]).0, EXIT_OK);
    let v = json(&["verify", "th4.3", "--n", "3..4", "--p", "1..3"]);
    let cells = v["cells"].as_array().unwrap();
    for c in cells.iter().filter(|c| c["invariant"] == "reg") {
        let p = c["params"]["p"].as_i64().unwrap();
        let expected = if p < 3 { "observational" } else { "pass" };
        assert_eq!(c["status"], expected, "{c}");
    }
    assert_eq!(v["summary"]["fail"].as_u64(), Some(0));
    let (code, _, _) = call(&["verify", "th3.3", "--n", "3", "--p", "3", "--hochster-cap", "6"]);
    assert_eq!(code, EXIT_SKIPPED);
}

#[test]
fn verify_reports_are_reproducible() {
    let a = call(&["verify", "all", "--format", "json"]);
    let b = call(&["verify", "all", "--format", "json"]);
    assert_eq!(a.0, EXIT_OK, "{}", a.2);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["seed"].as_u64(), Some(edgeideal::verify::DEFAULT_SEED));
}

#[test]
fn verify_props_passes() {
    let v = json(&["verify", "props", "--seed", "11"]);
    assert_eq!(v["seed"].as_u64(), Some(11));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["violations"] == 0));
}

#[test]
fn decomp_replays_catalogue() {
    let (code, out, _) = call(&["decomp", "all"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("0 failures\n"), "{out}");
    let v = json(&["decomp", "R18", "--n", "4", "--p", "2", "--q", "3"]);
    assert_eq!(v["reports"][0]["pass"], true);
    assert_eq!(v["reports"][0]["actual_free"].as_u64(), Some(19));
}

#[test]
fn bad_input_is_an_error() {
    let (code, _, err) = call(&["gen", "tsnake(n=3,p=)"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("position 13"), "{err}");
    assert_eq!(call(&["verify", "th9.9"]).0, EXIT_ERROR);
    assert_eq!(call(&["verify", "th3.3", "--n", "4..1"]).0, EXIT_ERROR);
    assert_eq!(call(&["gen", "star(u=1)", "--field", "4"]).0, EXIT_ERROR);
    assert_eq!(call(&["gen", "star(u=1)", "--hochster-cap", "0"]).0, EXIT_ERROR);
    assert_eq!(call(&["frobnicate"]).0, EXIT_ERROR);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("edgeideal_cli_{}.csv", std::process::id()));
    let (code, out, _) = call(&["verify", "th2.8", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("family,source,invariant"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_edgeideal");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "th2.8"]), Some(EXIT_OK));
    assert_eq!(status(&["gen", "nonsense("]), Some(EXIT_ERROR));
    assert_ne!(EXIT_FAIL, EXIT_OK);
}
