use std::path::PathBuf;
use std::process::{Command, Output};

fn braidlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidlab")).args(args).env_remove("BRAIDLAB_THREADS").output().expect("run braidlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_writes_a_checkable_file() {
    let path = scratch("eta.json");
    let p = path.to_str().unwrap();
    let o = braidlab(&["rep", "build", "--family", "eta", "--theta", "1/4pi", "--n", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = braidlab(&["rep", "check", "--in", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_file_fails_with_residual() {
    let path = scratch("corrupt.json");
    let p = path.to_str().unwrap();
    assert!(braidlab(&["rep", "build", "--spec", "eta:1/4pi", "--out", p]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replacen("7.0710678118654757e-1", "7.5e-1", 1);
    assert_ne!(text, bad);
    std::fs::write(&path, bad).unwrap();
    let o = braidlab(&["rep", "check", "--in", p]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL") && out.contains("max relation residual"), "{out}");
}

#[test]
fn unparseable_input_is_a_usage_error() {
    let path = scratch("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(braidlab(&["rep", "check", "--in", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(braidlab(&["rep", "check", "--rep", "nosuchfamily:1"]).status.code(), Some(2));
    assert_eq!(braidlab(&["limits", "bogus"]).status.code(), Some(2));
    assert_eq!(braidlab(&["rep", "check", "--rep", "eta:1/4pi", "--tol-relation", "-1"]).status.code(), Some(2));
}

#[test]
fn eval_prints_the_matrix() {
    let o = braidlab(&["rep", "eval", "--rep", "eta:1/4pi", "--word", "1 2 -1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.trim_start().starts_with('[')).count(), 2);
}

#[test]
fn equiv_finds_the_jones_witness() {
    let o = braidlab(&["rep", "equiv", "--a", "eta:3/10pi", "--b", "jones:r=5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S ="));
    let o = braidlab(&["rep", "equiv", "--a", "eta:1/4pi", "--b", "character:1/4pi+character:3/4pi"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_has_four_passing_angles() {
    let path = scratch("scan.json");
    let o = braidlab(&["leakage", "scan", "--family", "eta3x3", "--grid", "181", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let passing: Vec<&str> =
        rows.as_array().unwrap().iter().filter(|r| r["pass"] == true).map(|r| r["theta"].as_str().unwrap()).collect();
    assert_eq!(passing, ["-3/4pi", "-1/4pi", "1/4pi", "3/4pi"]);
}

#[test]
fn qubit_bridge_solves_in_closed_form() {
    let o = braidlab(&["leakage", "solve", "--left", "eta:1/4pi", "--right", "eta:1/4pi"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bridge"));
    let o = braidlab(&["leakage", "solve", "--left", "eta:1/3pi", "--right", "eta:1/3pi"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ising_parity_sector_never_leaks() {
    let o = braidlab(&["leakage", "enum", "--rep", "ising6", "--proj", "parity-even", "--maxlen", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all enumerated elements are leakage-free"));
    let o = braidlab(&["leakage", "enum", "--rep", "ising6", "--proj", "block:0,1,2", "--maxlen", "1"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("all enumerated"));
}

#[test]
fn limits_examples() {
    let o = braidlab(&["limits", "bound", "--d", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("N(3)=5"));
    let o = braidlab(&["limits", "classify", "--theta", "1/4pi"]);
    assert_eq!(stdout(&o).lines().next(), Some("ExceptionalAngle(4)"));
    let o = braidlab(&["limits", "classify", "--r", "10"]);
    assert_eq!(stdout(&o).lines().next(), Some("OrderTenRoot"));
    let o = braidlab(&["limits", "growth", "--rep", "eta:3/10pi", "--maxlen", "8"]);
    assert_eq!(stdout(&o).lines().last(), Some("Growing"));
    let o = braidlab(&["limits", "growth", "--rep", "eta:1/4pi", "--maxlen", "8"]);
    assert_eq!(stdout(&o).lines().last(), Some("SaturatedFinite(24)"));
}

#[test]
fn linear_growth_counts_phases() {
    let last = |args: &[&str]| stdout(&braidlab(args)).lines().last().unwrap().to_string();
    let projective = last(&["limits", "growth", "--rep", "character:1/4pi", "--maxlen", "12"]);
    let linear = last(&["limits", "growth", "--rep", "character:1/4pi", "--maxlen", "12", "--linear"]);
    assert_eq!(projective, "SaturatedFinite(1)");
    assert_eq!(linear, "SaturatedFinite(8)");
}

#[test]
fn seeded_reports_are_byte_identical() {
    let a = scratch("solve-a.json");
    let b = scratch("solve-b.json");
    for p in [&a, &b] {
        let o = braidlab(&[
            "leakage", "solve", "--left", "eta:1/4pi+character:1/4pi", "--right", "eta:1/4pi", "--seed", "11",
            "--restarts", "3", "--out", p.to_str().unwrap(),
        ]);
        assert!(matches!(o.status.code(), Some(0 | 1)));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn thread_cap_does_not_change_results() {
    let run = |threads: &str, name: &str| {
        let p = scratch(name);
        let o = Command::new(env!("CARGO_BIN_EXE_braidlab"))
            .args(["leakage", "solve", "--left", "eta:1/4pi", "--right", "standard:n=3:z=1/2pi", "--seed", "5"])
            .args(["--out", p.to_str().unwrap()])
            .env("BRAIDLAB_THREADS", threads)
            .output()
            .unwrap();
        assert!(matches!(o.status.code(), Some(0 | 1)));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("1", "t1.json"), run("4", "t4.json"));
    let o = Command::new(env!("CARGO_BIN_EXE_braidlab")).args(["limits", "bound", "--d", "3"]).env("BRAIDLAB_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = scratch("run.toml");
    std::fs::write(&cfg, "[tolerances]\nrelation = 1e-30\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = braidlab(&["--config", c, "rep", "check", "--rep", "jones:r=7"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let o = braidlab(&["--config", c, "--tol-relation", "1e-9", "rep", "check", "--rep", "jones:r=7"]);
    assert_eq!(o.status.code(), Some(0));

    let bad = scratch("bad.toml");
    std::fs::write(&bad, "unknown_key = 1\n").unwrap();
    assert_eq!(braidlab(&["--config", bad.to_str().unwrap(), "limits", "bound", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn config_supplies_scan_angles() {
    let cfg = scratch("scan.toml");
    std::fs::write(&cfg, "thetas = [\"1/4pi\", \"1/3pi\"]\n").unwrap();
    let o = braidlab(&["--config", cfg.to_str().unwrap(), "leakage", "scan"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}
