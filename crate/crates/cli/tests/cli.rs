use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn sumhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumhull")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = r#"{"dim":2,"points":[[0,0],[1,0],[0,1]]}"#;

#[test]
fn sumset_of_point_and_triangle() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"dim":2,"points":[[5,5]]}"#);
    let b = write(&dir, "b.json", TRIANGLE);
    let out = dir.path().join("sum.json");
    let o = sumhull(&["sumset", "--a", s(&a), "--b", s(&b), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "3");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["points"], serde_json::json!([[5, 5], [5, 6], [6, 5]]));
}

#[test]
fn sumset_k_fold() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", TRIANGLE);
    let o = sumhull(&["sumset", "--a", s(&b), "--b", s(&b), "-k", "2"]);
    assert_eq!(code(&o), 0);
    // A + 2B with A = B is 3B for a simplex
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn missing_file_and_zero_k_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", TRIANGLE);
    let o = sumhull(&["sumset", "--a", s(&b), "--b", "/nonexistent/b.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("file not found"));
    let o = sumhull(&["sumset", "--a", s(&b), "--b", s(&b), "-k", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("k must be ≥ 1"));
}

#[test]
fn malformed_point_files_are_rejected() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("dup.json", r#"{"dim":2,"points":[[0,0],[0,0]]}"#),
        ("frac.json", r#"{"dim":1,"points":[[0.5]]}"#),
        ("short.json", r#"{"dim":2,"points":[[0]]}"#),
    ] {
        let p = write(&dir, name, body);
        let o = sumhull(&["decompose", "--b", s(&p)]);
        assert_eq!(code(&o), 2, "{name}");
        assert!(stderr(&o).starts_with("error: "), "{name}");
    }
}

#[test]
fn decompose_and_check() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", TRIANGLE);
    let o = sumhull(&["decompose", "--b", s(&b), "--check"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simplices: 1"));

    let sq = write(&dir, "sq.json", r#"{"dim":2,"points":[[0,0],[2,0],[0,2],[2,2],[1,1]]}"#);
    let out = dir.path().join("d.json");
    let o = sumhull(&["decompose", "--b", s(&sq), "--out", s(&out), "--check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("simplices: 4"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["simplices"].as_array().unwrap().len(), 4);
    let again = dir.path().join("d2.json");
    sumhull(&["decompose", "--b", s(&sq), "--out", s(&again)]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn verify_simplex_exact() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", TRIANGLE);
    let o = sumhull(&["verify", "--theorem", "simplex_exact", "--a", s(&b), "--b", s(&b), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["actual"], 6);
    assert_eq!(v["bound"], 6);
    assert_eq!(v["satisfied"], true);
}

#[test]
fn verify_names_failed_hypotheses() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"dim":2,"points":[[3,3]]}"#);
    let b = write(&dir, "b.json", TRIANGLE);
    let o = sumhull(&["verify", "--theorem", "two_sets", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("A ⊄ conv B"));
    let o = sumhull(&["verify", "--theorem", "pythagoras", "--a", s(&a)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_subsum() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "ok.json", r#"{"sets":[[0,1,2],[0,1,2]]}"#);
    let o = sumhull(&["verify", "--theorem", "subsum", "--a", s(&ok), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["s"], 5);
    assert_eq!(v["bound"], "5");
    let empty = write(&dir, "empty.json", r#"{"sets":[[0,1],[]]}"#);
    let o = sumhull(&["verify", "--theorem", "subsum", "--a", s(&empty)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("set A_2 is empty"));
}

#[test]
fn verify_nested_chain() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"dim":1,"points":[[1],[2]]}"#);
    let b1 = write(&dir, "b1.json", r#"{"dim":1,"points":[[0],[3]]}"#);
    let b2 = write(&dir, "b2.json", r#"{"dim":1,"points":[[-1],[3],[5]]}"#);
    let o = sumhull(&["verify", "--theorem", "nested_chain", "--a", s(&a), "--chain", s(&b1), "--chain", s(&b2)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("satisfied"));
    let o = sumhull(&["verify", "--theorem", "nested_chain", "--a", s(&a), "--chain", s(&b2), "--chain", s(&b1)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn explore_k_fold_is_clean_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let csv = dir.path().join("r.csv");
    let args = |r: &Path| {
        vec!["explore", "--theorem", "k_fold", "--dim", "2", "-k", "2", "--instances", "200", "--seed", "42", "--report", s(r)]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let mut first = args(&r1);
    first.extend(["--csv".to_string(), s(&csv).to_string()]);
    let o = sumhull(&first.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("0 violations"));
    let o = sumhull(&args(&r2).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 201);
}

#[test]
fn explore_questions() {
    let o = sumhull(&["explore", "--question", "2", "--dim", "1", "--instances", "50", "-k", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exploratory"], false);
    assert_eq!(v["summary"]["violations"], 0);

    let o = sumhull(&["explore", "--question", "1", "--dim", "2", "--instances", "10", "--a-max", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("exploratory"));
    assert!(stderr(&o).contains("conjectured constant 2"));
}

#[test]
fn explore_usage_errors() {
    assert_eq!(code(&sumhull(&["explore", "--dim", "2"])), 2);
    assert_eq!(code(&sumhull(&["explore", "--question", "3"])), 2);
    let o = sumhull(&["explore", "--theorem", "k_fold", "--dim", "3", "--b-max", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("B needs at least 4 points"));
}
