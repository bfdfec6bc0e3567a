use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balpair")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn demo_passes_and_is_reproducible() {
    for field in ["2", "3"] {
        let a = run(&["demo", "--field", field]);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        let r = report(&a);
        assert_eq!(r["passed"], true);
        assert_eq!(r["schema"], 1);
        assert_eq!(r["seed"], 0);
        let checks: Vec<&str> = r["verdicts"].as_array().unwrap().iter().map(|v| v["check"].as_str().unwrap()).collect();
        assert!(checks.contains(&"negative_controls") && checks.contains(&"eta"));
        let b = run(&["demo", "--field", field]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_changes_the_generated_corpus() {
    let a = run(&["equiv", "verify", "--algebra", "builtin:gorenstein-nakayama", "--seed", "1"]);
    let b = run(&["equiv", "verify", "--algebra", "builtin:gorenstein-nakayama", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(report(&a)["verdicts"], report(&b)["verdicts"]);
}

#[test]
fn malformed_algebra_exits_two_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"schema":1,"field":2,"quiver":{"vertices":1,"arrows":[{"source":0,"target":"zero","name":"x"}]}}"#).unwrap();
    let out = run(&["algebra", "check", "--algebra", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("quiver.arrows[0].target"), "{err}");
}

#[test]
fn semantic_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"schema":1,"field":4,"quiver":{"vertices":1,"arrows":[]}}"#).unwrap();
    assert_eq!(run(&["algebra", "check", "--algebra", p.to_str().unwrap()]).status.code(), Some(2));
    let out = run(&["eta", "verify", "--algebra", &data("algebras/dual-numbers.json"), "--corpus", &data("corpus/gorenstein-nakayama")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broken_pair_exits_one() {
    let out = run(&["balanced", "check", "--pair", &data("pairs/broken-pair.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    assert!(!r["verdicts"][0]["detail"]["failures"].as_array().unwrap().is_empty());
    let ok = run(&["balanced", "check", "--pair", &data("pairs/a2-proj-inj.json")]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn json_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = run(&["gorenstein", "profile", "--algebra", &data("algebras/gorenstein-nakayama.json"), "--json-out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&p).unwrap(), out.stdout);
    let r = report(&out);
    assert_eq!(r["verdicts"][0]["detail"]["d"], 2);
    assert!(r["verdicts"][0]["detail"]["nonprojective_gproj"].as_u64().unwrap() > 0);
}

#[test]
fn file_driven_commands() {
    let cases: Vec<Vec<String>> = vec![
        vec!["complex".into(), "check".into(), "--complexes".into(), data("corpus/gorenstein-nakayama/x-complexes.json")],
        vec!["approx".into(), "--task".into(), data("tasks/a2-simple-proj.json")],
        vec!["resolve".into(), "--task".into(), data("tasks/nakayama-simple-gproj.json"), "--co".into()],
        vec!["totalize".into(), "--complexes".into(), data("corpus/gorenstein-nakayama/mixed-complexes.json")],
        vec!["equiv".into(), "verify".into(), "--complexes".into(), data("corpus/gorenstein-nakayama/x-complexes.json")],
        vec!["gorenstein".into(), "check".into(), "--algebra".into(), "builtin:a2".into(), "--field".into(), "3".into()],
        vec!["eta".into(), "verify".into(), "--algebra".into(), data("algebras/dual-numbers.json"), "--corpus".into(), data("corpus/dual-numbers")],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&a);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(report(&out)["command"].as_array().unwrap().len(), args.len());
    }
}

#[test]
fn resolution_too_long_is_a_check_failure() {
    let out = run(&["resolve", "--task", &data("tasks/a2-simple-proj.json"), "--max-len", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eta_rejects_noncommutative_algebra() {
    let out = run(&["eta", "verify", "--algebra", "builtin:a2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert!(r["verdicts"][0]["detail"]["error"].as_str().unwrap().contains("commutative"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["totalize"]).status.code(), Some(2));
}
