use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_filiform"));
    cmd.env_remove("FILIFORM_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FAM1_ZERO: &str = r#"{"family": 1, "n": 4, "alpha": ["0", "0"], "theta": "0"}"#;
const FAM1: &str = r#"{"family": 1, "n": 5, "alpha": ["1", "0", "1/2"], "theta": "2"}"#;
const FAM2: &str = r#"{"family": 2, "n": 5, "beta": ["0", "0", "0"], "gamma": "1"}"#;

#[test]
fn build_writes_tables() {
    let dir = TempDir::new().unwrap();
    let params = write(dir.path(), "p.json", FAM1_ZERO);
    let out = dir.path().join("t.json");
    assert_eq!(run(&["build", "--params", s(&params), "--out", s(&out)]).status.code(), Some(0));
    let table: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(table["n"], 4);
    assert_eq!(table["constants"].as_array().unwrap().len(), 4);

    let params = write(dir.path(), "p2.json", FAM2);
    assert_eq!(run(&["build", "--params", s(&params), "--out", s(&out)]).status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains(r#""c": "1",
      "i": 1,
      "j": 1,
      "k": 5"#));

    let bad = write(dir.path(), "bad.json", "{\"family\": 1,");
    assert_eq!(run(&["build", "--params", s(&bad), "--out", s(&out)]).status.code(), Some(2));
}

#[test]
fn check_leibniz_and_grade() {
    let dir = TempDir::new().unwrap();
    let params = write(dir.path(), "p.json", FAM1);
    let table = dir.path().join("t.json");
    run(&["build", "--params", s(&params), "--out", s(&table)]);
    let o = run(&["check-leibniz", "--table", s(&table)]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "OK"));
    let o = run(&["grade", "--table", s(&table)]);
    assert_eq!(stdout(&o).trim(), "NGF1");

    let params2 = write(dir.path(), "p2.json", FAM2);
    let table2 = dir.path().join("t2.json");
    run(&["build", "--params", s(&params2), "--out", s(&table2)]);
    assert_eq!(stdout(&run(&["grade", "--table", s(&table2)])).trim(), "NGF2");

    let zero = write(dir.path(), "zero.json", r#"{"n": 4, "constants": []}"#);
    assert_eq!(stdout(&run(&["check-leibniz", "--table", s(&zero)])).trim(), "OK");
    assert_eq!(stdout(&run(&["grade", "--table", s(&zero)])).trim(), "NotFiliform");

    // [e_0, e_0] = e_1 and [e_1, e_0] = e_2 break the identity on (e_0, e_0, e_0)
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"n": 2, "constants": [{"i":0,"j":0,"k":1,"c":"1"},{"i":1,"j":0,"k":2,"c":"1"},{"i":0,"j":1,"k":2,"c":"1"}]}"#,
    );
    let o = run(&["check-leibniz", "--table", s(&broken)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("defect at"));
}

#[test]
fn transform_paths_agree() {
    let dir = TempDir::new().unwrap();
    let params = write(dir.path(), "p.json", FAM1);
    let witness = write(dir.path(), "w.json", r#"{"A": "2", "B": "-1/2"}"#);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |out: &Path, via: &str| {
        run(&["transform", "--params", s(&params), "--witness", s(&witness), "--out", s(out), "--via", via])
    };
    assert_eq!(args(&a, "theorem").status.code(), Some(0));
    assert_eq!(args(&b, "oracle").status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let identity = write(dir.path(), "id.json", r#"{"A": "1", "B": "0"}"#);
    let c = dir.path().join("c.json");
    run(&["transform", "--params", s(&params), "--witness", s(&identity), "--out", s(&c)]);
    let original: serde_json::Value = serde_json::from_str(FAM1).unwrap();
    let copied: serde_json::Value = serde_json::from_str(&fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(original, copied);

    let zero = write(dir.path(), "zero.json", r#"{"A": "0", "B": "1"}"#);
    let o = run(&["transform", "--params", s(&params), "--witness", s(&zero), "--out", s(&c)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn iso_exit_codes_and_json() {
    let dir = TempDir::new().unwrap();
    let left = write(dir.path(), "l.json", FAM1);
    let witness = write(dir.path(), "w.json", r#"{"A": "2", "B": "1"}"#);
    let right = dir.path().join("r.json");
    run(&["transform", "--params", s(&left), "--witness", s(&witness), "--out", s(&right)]);
    let o = run(&["iso", "--left", s(&left), "--right", s(&right), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "isomorphic");
    assert_eq!(v["residual"], "0");

    let o = run(&["iso", "--left", s(&left), "--right", s(&left), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], serde_json::json!({"A": "1", "B": "0"}));

    let separated = write(dir.path(), "s.json", r#"{"family": 1, "n": 5, "alpha": ["0", "1", "0"], "theta": "0"}"#);
    let o = run(&["iso", "--left", s(&left), "--right", s(&separated), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), r#"{"certificate":"alpha3-vanishing","verdict":"not_isomorphic"}"#);

    let o = run(&["iso", "--left", s(&left), "--right", s(&right), "--tol", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_flag_and_environment_give_identical_output() {
    let dir = TempDir::new().unwrap();
    let left = write(dir.path(), "l.json", r#"{"family": 2, "n": 4, "beta": ["0", "1"], "gamma": "1"}"#);
    let witness = write(dir.path(), "w.json", r#"{"A": "1/2", "B": "3", "D": "-1"}"#);
    let right = dir.path().join("r.json");
    run(&["transform", "--params", s(&left), "--witness", s(&witness), "--out", s(&right)]);
    let by_flag = run(&["iso", "--left", s(&left), "--right", s(&right), "--seed", "9", "--json"]);
    let by_env = bin()
        .args(["iso", "--left", s(&left), "--right", s(&right), "--json"])
        .env("FILIFORM_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(by_flag.status.code(), Some(0));
    assert_eq!(by_flag.stdout, by_env.stdout);
}

#[test]
fn dedup_classes() {
    let dir = TempDir::new().unwrap();
    let list = write(dir.path(), "list.json", &format!("[{FAM1}]"));
    let out = dir.path().join("classes.json");
    let o = run(&["dedup", "--list", s(&list), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 classes, 0 unresolved pairs");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["classes"], serde_json::json!([[0]]));

    let twice = write(dir.path(), "twice.json", &format!("[{FAM1}, {FAM1}]"));
    let o = run(&["dedup", "--list", s(&twice), "--out", s(&out), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"], serde_json::json!([[0, 1]]));

    let mixed = write(dir.path(), "mixed.json", &format!("[{FAM1}, {FAM2}]"));
    assert_eq!(run(&["dedup", "--list", s(&mixed), "--out", s(&out)]).status.code(), Some(2));
}

#[test]
fn oracle_check_reports_agreement() {
    let o = run(&["oracle-check", "--family", "1", "--n", "6", "--trials", "100", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "100/100 exact agreement");
    let o = run(&["oracle-check", "--family", "2", "--n", "5", "--trials", "20"]);
    assert_eq!(stdout(&o).trim(), "20/20 exact agreement");
    assert_eq!(run(&["oracle-check", "--family", "3", "--n", "5"]).status.code(), Some(2));
}
