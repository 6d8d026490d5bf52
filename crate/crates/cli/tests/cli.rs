use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn coxinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn invariants_of_triangle_group() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 2\nb c 3\na c 7\n");
    let out = coxinv(&["invariants", &f, "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["invariants"]["chi"], "-1/84");
    assert_eq!(json["invariants"]["hyperbolic"], true);
    assert_eq!(json["profinite_status"]["chi"], "general");
}

#[test]
fn invariants_of_affine_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 3\nb c 3\na c 3\n");
    let out = coxinv(&["invariants", &f, "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["invariants"]["ends"], "one");
    assert_eq!(json["invariants"]["virtually_abelian"], true);
}

#[test]
fn empty_graph_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "# nothing here\n");
    let out = coxinv(&["invariants", &f]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 3\na b 4\n");
    let out = coxinv(&["invariants", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn compare_distinguishes_by_fa() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write(dir.path(), "a.graph", "a b 4\nb c 4\na c 6\n");
    let f2 = write(
        dir.path(),
        "b.graph",
        "d e 4\nd f 4\ne f 2\ne g 2\nf g 3\n",
    );
    let out = coxinv(&["compare", &f1, &f2]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("fa"));
}

#[test]
fn compare_graph_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 5\nb c 3\n");
    let out = coxinv(&["compare", &f, &f]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn compare_known_isomorphic_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write(dir.path(), "path.graph", "a b 3\nb c 3\nc d 3\n");
    let f2 = write(dir.path(), "star.graph", "c a 3\nc b 3\nc d 3\n");
    let out = coxinv(&["compare", &f1, &f2]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("same known-isomorphism class"));
}

#[test]
fn genus_of_odd_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 3\nb c 3\nc d 3\n");
    let out = coxinv(&[
        "genus", &f, "--max-vertices", "4", "--max-label", "3", "--no-cache",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["candidates"], 2);
    assert_eq!(json["verdict"], "singleton_class");
    assert_eq!(json["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn genus_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let f = write(dir.path(), "g.graph", "a b 3\nb c 3\nc d 3\n");
    let cache_arg = cache.to_str().unwrap();
    let out = coxinv(&[
        "genus", &f, "--max-vertices", "4", "--max-label", "3", "--cache-dir",
        cache_arg,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(cache.exists());
    let again = coxinv(&[
        "genus", &f, "--max-vertices", "4", "--max-label", "3", "--cache-dir",
        cache_arg,
    ]);
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn genus_bounds_must_cover_target() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 7\n");
    let out = coxinv(&["genus", &f, "--max-vertices", "2", "--max-label", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables_verify_and_alias() {
    for name in ["simplex4", "lanner4"] {
        let out = coxinv(&["tables", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(stdout(&out).lines().count(), 9, "{name}");
        assert!(!stdout(&out).contains("MISMATCH"));
    }
    let out = coxinv(&["tables", "simplex5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 5);
    let out = coxinv(&["tables", "finite", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["type"] == "E8" && r["order"] == "696729600"));
}

#[test]
fn classify_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "g.graph",
        "a b 4\nb c 4\nc d 4\nd e 4\ne a 4\n",
    );
    let out = coxinv(&["classify", &f]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("regular_polygon_reflection"));
    assert!(text.contains("Rigid"));
}

#[test]
fn enumerate_small() {
    let out = coxinv(&[
        "enumerate", "--max-vertices", "3", "--max-label", "2",
        "--connected-only",
    ]);
    assert!(out.status.success());
    // one graph on 1 vertex, one on 2, two on 3
    assert!(stdout(&out).contains("4 classes"));
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 3\nb c 4\n");
    let out = coxinv(&["invariants", &f, "--format", "dot"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("graph"));
}

#[test]
fn text_and_json_agree_on_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.graph", "a b 3\nb c 5\nc d 2\n");
    let text = stdout(&coxinv(&["invariants", &f]));
    let json_out = coxinv(&["invariants", &f, "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    for field in ["vertices", "edges", "vcd", "abelianization_rank"] {
        let value = json["invariants"][field].to_string();
        assert!(
            text.contains(&format!("{field}: {value}")),
            "{field}={value} missing from text output"
        );
    }
}
