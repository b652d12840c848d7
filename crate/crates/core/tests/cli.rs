use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn svk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svk")).args(args).env_remove("SVK_GUARD").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn pw_on_three_candidates() {
    let v = json(&svk(&["pw", "--instance", &data("three_candidates.json"), "--rule", "plurality"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["winners"], serde_json::json!(["c1", "c2", "c3"]));
    let o = json(&svk(&["oracle", "pw", "--instance", &data("three_candidates.json")]));
    assert_eq!(o["winners"], v["winners"]);
}

#[test]
fn nw_single_candidate() {
    let v = json(&svk(&["nw", "--instance", &data("three_candidates.json"), "--candidate", "c2"]));
    assert_eq!(v["necessary_winner"], false);
}

#[test]
fn rankings_listing() {
    let v = json(&svk(&["rankings", "--instance", &data("three_candidates.json"), "--voter", "v1"]));
    assert_eq!(v["voters"][0]["rankings"].as_array().unwrap().len(), 4);
    let text = svk(&["--format", "text", "rankings", "--instance", &data("three_candidates.json")]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("c2 > c3 > c1"));
}

#[test]
fn faces_in_the_plane() {
    let v = json(&svk(&["faces", "--instance", &data("plane.json")]));
    assert_eq!(v["bisectors"], 6);
    assert!(v["count"].as_u64().unwrap() <= 1 + 6 + 15);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "profile", "--seed", "42", "--dimension", "2", "--candidates", "5"];
    let (a, b) = (svk(&args), svk(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, svk(&["gen", "profile", "--seed", "43", "--dimension", "2", "--candidates", "5"]).stdout);
}

#[test]
fn generated_instance_feeds_back() {
    let dir = std::env::temp_dir().join(format!("svk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gen.json");
    std::fs::write(&path, svk(&["gen", "profile", "--seed", "9", "--voters", "2"]).stdout).unwrap();
    let path = path.display().to_string();
    let pw = json(&svk(&["pw", "--instance", &path, "--rule", "veto"]));
    let oracle = json(&svk(&["oracle", "pw", "--instance", &path, "--rule", "veto"]));
    assert_eq!(pw["winners"], oracle["winners"]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reduce_sched_output_is_an_election() {
    let v = json(&svk(&["reduce-sched", "--instance", &data("reduction_jobs.json"), "--k", "3"]));
    assert_eq!(v["kind"], "election");
    assert_eq!(v["target"], "c*");
    assert_eq!(v["rule"], "approval:3");
}

#[test]
fn errors_and_guard() {
    let out = svk(&["pw", "--instance", &data("plane.json"), "--rule", "borda"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "no_polynomial_algorithm");

    let out = svk(&["oracle", "pw", "--instance", &data("plane.json"), "--guard", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_svk"))
        .args(["pw", "--instance", &data("plane.json"), "--rule", "borda", "--allow-exponential"])
        .env("SVK_GUARD", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = svk(&["pw", "--instance", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(1));
}
