use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_blowup-positivity"));
    cmd.env_remove("BLOWUP_POSITIVITY_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("blowup-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn certified_general_class() {
    let out = run(&["check", "ample", "7; 3 2 2 2 2 2 2 2 1 1 1 1", "--json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v = json(&out);
    assert_eq!(v["outcome"], "certified");
    assert_eq!(v["criterion"], "ample-general");
    assert_eq!(v["class"], "7; 3 2 2 2 2 2 2 2 1 1 1 1");
}

#[test]
fn not_certified_carries_witness() {
    let out = run(&["check", "ample", "--uniform", "d=170", "r=8", "m=60", "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["outcome"], "not-certified");
    let witnesses: Vec<&str> = v["witnesses"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    assert!(witnesses.contains(&"6; 3 2 2 2 2 2 2 2"), "{witnesses:?}");
}

#[test]
fn conflicting_conic_is_reported() {
    let out = run(&["check", "ample", "5; 2 2 2 2 2 2"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("witness: 2; 1 1 1 1 1 0"), "{text}");
}

#[test]
fn conditional_exit_code() {
    let plain = run(&["check", "ample", "--uniform", "d=95", "r=10", "m=30"]);
    assert_eq!(code(&plain), 1);
    let out = run(&["check", "ample", "--uniform", "d=95", "r=10", "m=30", "--conditional", "--json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["criterion"], "ample-nagata");
    let mode = run(&["check", "ample", "--uniform", "d=95", "r=10", "m=30", "--mode", "conditional"]);
    assert_eq!(code(&mode), 2);
}

#[test]
fn explicit_certifier() {
    let out = run(&["check", "gg", "--uniform", "d=33", "r=10", "m=10", "--mode", "gg-uniform", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["criterion"], "gg-uniform");
    let out = run(&["check", "gg", "--uniform", "d=33", "r=10", "m=10", "--mode", "st-gg"]);
    assert_eq!(code(&out), 1);
    let out = run(&["check", "va", "--uniform", "d=34", "r=10", "m=10"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn invalid_input_exits_3() {
    for args in [
        vec!["check", "ample", "7; 3 x"],
        vec!["check", "ample"],
        vec!["check", "ample", "--uniform", "d=5", "r=0", "m=1"],
        vec!["check", "ample", "5; 1 1", "--mode", "gg-uniform"],
        vec!["check", "ample", "5; 1 1", "--mode", "no-such-certifier"],
        vec!["check", "bright", "5; 1 1"],
        vec!["bogus"],
        vec!["mindeg", "ample-nagata", "--uniform", "r=10", "m=3"],
        vec!["exceptional", "3; 1 1"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 3, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn reduce_reaches_line() {
    let out = run(&["reduce", "17; 6 6 6 6 6 6 6 6", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["end"], "1; 0 0 0 0 0 0 0 0");
    let text = stdout(&run(&["reduce", "0; 1 0 0"]));
    assert!(text.contains("NonEffective"), "{text}");
}

#[test]
fn exceptional_membership_and_enumeration() {
    assert_eq!(code(&run(&["exceptional", "6; 3 2 2 2 2 2 2 2"])), 0);
    assert_eq!(code(&run(&["exceptional", "6; 3 2 2 2 2 2 2 1"])), 1);
    let v = json(&run(&["exceptional", "--enumerate", "r=8", "--json"]));
    assert_eq!(v["count"], 240);
    let printed = stdout(&run(&["exceptional", "--enumerate", "r=7"]));
    let lines: Vec<&str> = printed.lines().collect();
    assert_eq!(lines.len(), 56);
    // every printed class parses back and is itself exceptional
    for line in lines.iter().step_by(7) {
        assert_eq!(code(&run(&["exceptional", line])), 0, "{line}");
    }
}

#[test]
fn minimal_degrees() {
    assert_eq!(stdout(&run(&["mindeg", "ample", "--mults", "3 2 2 2 2 2 2 2 1 1 1 1"])).trim(), "7");
    assert_eq!(stdout(&run(&["mindeg", "ample", "--uniform", "r=10", "m=10"])).trim(), "32");
    let v = json(&run(&["mindeg", "st-gg", "--uniform", "r=30", "m=10", "--json"]));
    assert_eq!(v["min_degree"], 59);
}

#[test]
fn dimension_report() {
    let out = run(&["dim", "2; 2 2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["expected_dim"], -1);
    assert_eq!(v["actual_dim"], 0);
    assert_eq!(v["special"], true);
    assert_eq!(v["seed"], 20240601);
    let seeded = bin().args(["dim", "3; 1 1"]).env("BLOWUP_POSITIVITY_SEED", "7").output().unwrap();
    assert_eq!(json(&seeded)["seed"], 7);
    assert_eq!(code(&run(&["dim", "2; 1", "--prime", "15"])), 3);
}

#[test]
fn repro_matches_golden() {
    let out = run(&["repro"]);
    assert_eq!(code(&out), 0, "{}\n{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
}

#[test]
fn repro_only_runs_one_case() {
    let out = run(&["repro", "--only", "five-points-m10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("five-points-m10"));
    assert!(!text.contains("eight-points-m60"), "{text}");
    assert_eq!(code(&run(&["repro", "--only", "no-such-case"])), 3);
}

#[test]
fn perturbed_golden_fails_with_diff() {
    let dir = scratch("perturbed");
    let name = "five-points-m10.json";
    let text = fs::read_to_string(golden_dir().join(name)).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    perturb_first_string(&mut v["result"]);
    fs::write(dir.join(name), serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let out = run(&["repro", "--only", "five-points-m10", "--golden-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let all = format!("{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    assert!(all.contains("five-points-m10"), "{all}");
    assert!(all.contains("PERTURBED"), "{all}");
    let _ = fs::remove_dir_all(&dir);
}

fn perturb_first_string(v: &mut Value) -> bool {
    match v {
        Value::String(s) => {
            *s = "PERTURBED".into();
            true
        }
        Value::Array(items) => items.iter_mut().any(perturb_first_string),
        Value::Object(map) => map.values_mut().any(perturb_first_string),
        _ => false,
    }
}

#[test]
fn missing_golden_exits_3() {
    let dir = scratch("missing");
    let out = run(&["repro", "--only", "five-points-m10", "--golden-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn bless_then_repro_round_trips() {
    let dir = scratch("bless");
    let d = dir.to_str().unwrap();
    assert_eq!(code(&run(&["repro", "--only", "exceptional-curves", "--golden-dir", d, "--bless"])), 0);
    assert_eq!(code(&run(&["repro", "--only", "exceptional-curves", "--golden-dir", d])), 0);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn sweep_lemma_key_is_clean() {
    let out = run(&["sweep", "lemma-key"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["unexpected_equalities"], 0);
}
