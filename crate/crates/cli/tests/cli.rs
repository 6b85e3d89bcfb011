use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C3: &str = "3 3\n0 1\n1 2\n0 2\n";
const PATH2: &str = "2 1\n0 1\n";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_thickness-lab"));
    c.env_remove("THICKNESS_LAB_BUDGET_SECS");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("k4.g"), K4).unwrap();
    fs::write(d.path().join("c3.g"), C3).unwrap();
    fs::write(d.path().join("p2.g"), PATH2).unwrap();
    d
}

#[test]
fn recognize_single_and_all() {
    let d = setup();
    let o = run(d.path(), &["recognize", "--class", "outerplanar", "k4.g"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false\n");

    let o = run(d.path(), &["recognize", "--class", "planar", "k4.g"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");

    let o = run(d.path(), &["recognize", "--all", "c3.g"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("forest: false"));
    assert!(text.contains("cactus: true"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let d = setup();
    fs::write(d.path().join("bad.g"), "3 2\n0 1\n").unwrap();
    assert_eq!(run(d.path(), &["recognize", "--class", "nosuch", "k4.g"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["recognize", "--class", "forest", "bad.g"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["recognize", "--class", "forest", "missing.g"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["edgecolor", "--format", "dot", "k4.g"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["campaign", "nosuch"]).status.code(), Some(2));
}

#[test]
fn thickness_decide_and_exact() {
    let d = setup();
    let o = run(d.path(), &["thickness", "--class", "outerplanar", "--k", "1", "k4.g"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("decision: no\n"));

    let o = run(d.path(), &["thickness", "--class", "outerplanar", "--k", "2", "--oracle", "--stdout", "k4.g"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("certificate: partition"));
    assert!(text.contains("oracle: agrees"));

    let o = run(d.path(), &["thickness", "--class", "forest", "k4.g"]);
    assert_eq!(stdout(&o), "thickness: 2\n");
}

#[test]
fn edgecolor_index() {
    let d = setup();
    let o = run(d.path(), &["edgecolor", "k4.g"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chromatic_index: 3"));
    let o = run(d.path(), &["edgecolor", "--k", "2", "k4.g"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn structured_output_is_json() {
    let d = setup();
    let o = run(d.path(), &["thickness", "--class", "outerplanar", "--k", "2", "--format", "structured", "k4.g"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decision"], "yes");
}

#[test]
fn budget_exit_3() {
    let d = setup();
    let o = run(d.path(), &[
        "reduce", "--class", "outerplanar", "--k", "3", "--mode", "paper", "--budget-nodes", "1000", "k4.g",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn env_budget_cap_applies() {
    let d = setup();
    let o = bin()
        .current_dir(d.path())
        .env("THICKNESS_LAB_BUDGET_SECS", "0")
        .args(["reduce", "--class", "outerplanar", "--k", "3", "--mode", "paper", "k4.g"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reduce_refuses_forest() {
    let d = setup();
    let o = run(d.path(), &["reduce", "--class", "forest", "--k", "3", "k4.g"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("condition (c)"));
}

#[test]
fn reduce_then_verify_round_trip() {
    let d = setup();
    let o = run(d.path(), &["reduce", "--class", "outerplanar", "--k", "3", "--forward", "--out", "red", "k4.g"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for ext in ["g", "prov", "part"] {
        assert!(d.path().join(format!("red.{ext}")).exists());
    }
    let o = run(d.path(), &["verify", "--instance", "red.g", "--partition", "red.part"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("partition: valid"));
    assert!(text.contains("coloring: proper"));
}

#[test]
fn verify_rejects_tampered_provenance() {
    let d = setup();
    run(d.path(), &["reduce", "--class", "outerplanar", "--k", "1", "--forward", "--out", "red", "p2.g"]);
    let prov = fs::read_to_string(d.path().join("red.prov")).unwrap();
    let tampered = prov.replace("labels 1", "labels 2");
    assert_ne!(prov, tampered);
    fs::write(d.path().join("red.prov"), tampered).unwrap();
    let o = run(d.path(), &["verify", "--instance", "red.g", "--partition", "red.part"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_default_prefix() {
    let d = setup();
    let o = run(d.path(), &["reduce", "--class", "cactus", "--k", "3", "k4.g"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(d.path().join("k4.reduced.g").exists());
    assert!(d.path().join("k4.reduced.prov").exists());
}

#[test]
fn campaign_out_dir() {
    let d = setup();
    let o = run(d.path(), &["campaign", "claims", "--out", "rep"]);
    assert_eq!(o.status.code(), Some(0));
    let saved = fs::read_to_string(d.path().join("rep/report.txt")).unwrap();
    assert_eq!(saved, stdout(&o));
    assert!(saved.contains("summary: 6 passed, 0 failed, 0 skipped"));
}

#[test]
fn repeated_runs_are_identical() {
    let d = setup();
    let cmds: &[&[&str]] = &[
        &["recognize", "--all", "--format", "structured", "k4.g"],
        &["thickness", "--class", "outerplanar", "--k", "2", "--stdout", "k4.g"],
        &["edgecolor", "--stdout", "k4.g"],
        &["reduce", "--class", "outerplanar", "--k", "3", "--stdout", "--forward", "k4.g"],
        &["reduce", "--class", "outerplanar", "--k", "3", "--format", "dot", "--stdout", "k4.g"],
        &["campaign", "conditions", "--seed", "5", "--samples", "10"],
    ];
    for args in cmds {
        let a = run(d.path(), args);
        let b = run(d.path(), args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
