use serde_json::Value;
use std::path::Path;
use std::process::Command;

const C2: &str = "weights = 0 1; 1 0\ncartan:\n  2 -1\n  -2 2\n";

fn run(dir: &Path, config: &str, args: &[&str]) -> (i32, String) {
    let cfg = dir.join("job.cfg");
    std::fs::write(&cfg, config).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qfold"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn report(dir: &Path, command: &str) -> Value {
    let text = std::fs::read_to_string(dir.join("out").join(format!("{command}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn fold_emits_three_vertex_quiver() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = run(dir.path(), C2, &["--command", "fold"]);
    assert_eq!(code, 0, "{stdout}");
    let r = report(dir.path(), "fold");
    assert_eq!(r["data"]["round_trip"], "pass");
    assert_eq!(r["data"]["vertices"], 3);
    assert!(r["tags"]["layout"].is_string() && r["tags"]["coproduct"].is_string() && r["tags"]["monomial_sign"].is_string());
    let dot = std::fs::read_to_string(dir.path().join("out/quiver.dot")).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("orbit=")).count(), 3);
}

#[test]
fn module_character_of_sl2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(dir.path(), "command = module\nweights = 2\ncartan:\n2\n", &[]);
    assert_eq!(code, 0);
    let r = report(dir.path(), "module");
    let dims: Vec<u64> = r["data"]["character"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1]);
    assert_eq!(r["passed"], true);
}

#[test]
fn ybe_on_sl2_triple() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(dir.path(), "weights = 1\ncartan:\n2\n", &["--command", "ybe"]);
    assert_eq!(code, 0);
    let r = report(dir.path(), "ybe");
    assert_eq!(r["data"]["verdict"], "pass");
    assert_eq!(r["data"]["dimension"], 8);
}

#[test]
fn other_commands_pass_on_c2() {
    let dir = tempfile::tempdir().unwrap();
    for c in ["crystal", "fold-crystal", "tensor", "theta", "forms"] {
        let (code, stdout) = run(dir.path(), C2, &["--command", c, "--jobs", "2"]);
        assert_eq!(code, 0, "{c}: {stdout}");
    }
    let r = report(dir.path(), "tensor");
    assert_eq!(r["data"]["module_decomposition"], r["data"]["crystal_decomposition"]);
    let dot = std::fs::read_to_string(dir.path().join("out/crystal.dot")).unwrap();
    assert!(dot.starts_with("digraph crystal {") && dot.contains("v0 [label=\"(1,1)\"]"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), C2, &["--command", "theta"]);
    let first = std::fs::read(dir.path().join("out/theta.json")).unwrap();
    run(dir.path(), C2, &["--command", "theta", "--jobs", "3"]);
    assert_eq!(first, std::fs::read(dir.path().join("out/theta.json")).unwrap());
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), "cartan:\n2 -1\n-1 3\n", &["--command", "fold"]).0, 2);
    assert_eq!(run(dir.path(), C2, &["--command", "dance"]).0, 2);
    assert_eq!(run(dir.path(), "weights = -1\ncartan:\n2\n", &["--command", "module"]).0, 2);
    assert_eq!(run(dir.path(), "cartan:\n2\n", &["--command", "module"]).0, 2);
    assert_eq!(run(dir.path(), "depth = x\ncartan:\n2\n", &["--command", "fold"]).0, 2);
}

#[test]
fn failures_exit_1_with_report() {
    // tensor crystals need complete factors; the affine crystal is truncated
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = run(dir.path(), "weights = 1 0\ndepth = 3\ncartan:\n2 -2\n-2 2\n", &["--command", "tensor"]);
    assert_eq!(code, 1, "{stdout}");
    let r = report(dir.path(), "tensor");
    assert_eq!(r["passed"], false);
    assert!(r["first_failure"]["identity"].as_str().unwrap().contains("truncated"));
}
