use std::path::PathBuf;
use std::process::{Command, Output};

use equivk::format::ReportFile;

fn equivk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equivk")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("equivk-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn lists_and_prints_examples() {
    let out = equivk(&["examples"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["sp2", "f4-spin9", "so-n-so2-torus"] {
        assert!(text.contains(name), "{text}");
    }
    let out = equivk(&["examples", "sp2"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("[diagram]"));
    assert_eq!(equivk(&["examples", "nope"]).status.code(), Some(2));
}

#[test]
fn compute_is_deterministic_and_round_trips() {
    let args = ["compute", "example:sp2", "--window-radius", "3"];
    let a = equivk(&args);
    let b = equivk(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let json = String::from_utf8(a.stdout).unwrap();
    let report = ReportFile::from_json(&json).unwrap();
    assert!(report.certified);
    assert_eq!(report.window.radius, 3);
    assert_eq!(report.to_json().trim(), json.trim());
}

#[test]
fn text_format() {
    let out = equivk(&["compute", "example:su3-d6", "--format", "text", "--no-action"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("su3-d6: certified"), "{text}");
}

#[test]
fn integral_mapping_torus_fails_the_certificate() {
    assert_eq!(equivk(&["compute", "example:so-n-so2-torus", "--coeff", "Z"]).status.code(), Some(1));
    assert!(equivk(&["compute", "example:so-n-so2-torus", "--coeff", "Z[1/2]"]).status.success());
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = scratch("invalid");
    let path = dir.join("bad.toml");
    std::fs::write(&path, "name = \"x\"\n[window]\nradius = 2\nextra = 1\n").unwrap();
    let out = equivk(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("4:1"), "{err}");
    assert_eq!(equivk(&["compute", "/no/such/file.toml"]).status.code(), Some(2));
    assert_eq!(equivk(&["compute", "example:sp2", "--coeff", "0"]).status.code(), Some(2));
    assert_eq!(equivk(&["verify", "no-such-lemma"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_prints_one_line_per_lemma() {
    let out = equivk(&["verify", "branching"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.ends_with("pass")), "{text}");
    let json = equivk(&["verify", "dihedral-d6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v[0]["status"], "window-limited");
    assert!(v[0].get("runtime_ms").is_none());
    let timed = equivk(&["verify", "cosets-c3", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v[0]["runtime_ms"].is_u64());
}

#[test]
fn report_dir_receives_copies() {
    let dir = scratch("reports");
    let out = Command::new(env!("CARGO_BIN_EXE_equivk"))
        .args(["compute", "example:spin4-d4", "--no-action"])
        .env("EQUIVK_REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let saved = std::fs::read_to_string(dir.join("spin4-d4.json")).unwrap();
    assert_eq!(saved.trim(), String::from_utf8(out.stdout).unwrap().trim());
    std::fs::remove_dir_all(&dir).ok();
}
