use std::io::Write;
use std::process::{Command, Output};

fn ggwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggwb")).args(args).env_remove("GGWB_SEED").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn list_shows_builtins_and_labels() {
    let out = ggwb(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["S1-flat-cosymplectic", "S5-NxT2", "normaltotal", "eqptans3"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn exit_zero_when_everything_holds() {
    let out = ggwb(&["check", "S6b"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[PASS]"));
}

#[test]
fn exit_one_on_failed_check() {
    let out = ggwb(&["check", "S3", "--check", "normal", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["entries"][0]["status"], "Failed");
    assert!(v["entries"][0]["witness"]["point"].is_object());
}

#[test]
fn exit_two_on_configuration_errors() {
    let bad = ggwb(&["check", "S1", "--check", "nosuch"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    assert_eq!(ggwb(&["check", "/nonexistent/scenario.json"]).status.code(), Some(2));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"{\"chart\": {\"name\": \"R\", \"coords\": [\"x\"]}, \"fields\": 3}").unwrap();
    assert_eq!(ggwb(&["check", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn scenario_file_with_explicit_checks() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(include_bytes!("../scenarios/S1-flat-cosymplectic.json")).unwrap();
    let out = ggwb(&["check", f.path().to_str().unwrap(), "--check", "normal", "--check", "CRFK", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["total"], 2);
}

#[test]
fn seed_flag_and_environment() {
    let out = ggwb(&["check", "S1", "--check", "normal", "--format", "json", "--seed", "11", "--samples", "5", "--tol", "1e-6"]);
    let v = json(&out);
    assert_eq!(v["policy"]["seed"], 11);
    assert_eq!(v["policy"]["samples"], 5);
    let env = Command::new(env!("CARGO_BIN_EXE_ggwb"))
        .args(["check", "S1", "--check", "normal", "--format", "json"])
        .env("GGWB_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&env)["policy"]["seed"], 42);
}
