use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn nearring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn construct(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let out = path(dir, name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &out]);
    let o = nearring(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

fn z9(dir: &TempDir) -> String {
    construct(dir, "z9.nr", &["--group", "C9", "--phi", "neg", "--reps", "2,3,5,8", "--zero", "3"])
}

#[test]
fn construct_z9_reports_summary_and_writes_document() {
    let dir = TempDir::new().unwrap();
    let o = nearring(&[
        "construct", "--group", "C9", "--phi", "neg", "--reps", "2,3,5,8", "--zero", "3", "-o", &path(&dir, "z9.nr"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("D(N) = {0, 3, 6}"), "{}", stdout(&o));
    assert!(stdout(&o).contains("(case 1)"));
    let text = std::fs::read_to_string(dir.path().join("z9.nr")).unwrap();
    assert!(text.starts_with("nearring 1\norder 9\nname C9\n"));
    assert!(text.contains("\nreps 2 3 5 8\nzero 3\nend\n"));
}

#[test]
fn construct_to_stdout_emits_document() {
    let o = nearring(&["construct", "--group", "C3", "--phi", "neg", "--reps", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("nearring 1\norder 3\n"));
    assert!(stderr(&o).contains("order 3"));
}

#[test]
fn construct_zp2_and_fields() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "z25.nr", &["--zp2", "5"]);
    assert!(std::fs::read_to_string(f).unwrap().contains("order 25"));
    construct(&dir, "f8.nr", &["--field", "8"]);
    construct(&dir, "d9.nr", &["--field", "dickson9"]);
}

#[test]
fn construct_rejects_invalid_choices() {
    let o = nearring(&["construct", "--group", "C9", "--phi", "neg", "--reps", "1,2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = nearring(&["construct", "--group", "C9", "--phi", "neg", "--reps", "1", "--zero", ""]);
    assert_eq!(o.status.code(), Some(1));
    let o = nearring(&["construct", "--group", "C9", "--phi", "mul:3", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nearring(&["construct", "--group", "Nope", "--phi", "neg", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nearring(&["construct", "--field", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nearring(&["construct", "--zp2", "13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_text_and_json() {
    let dir = TempDir::new().unwrap();
    let f = z9(&dir);
    let o = nearring(&["analyze", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("zero multipliers: two-sided ideal"));
    assert!(text.contains("GC(N) = {0, 3, 6} (case 1)"));
    assert!(!text.contains("FAIL"));

    let o = nearring(&["analyze", &f, "--report", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["distributive"], serde_json::json!([0, 3, 6]));
    assert_eq!(v["zero_multiplier_ideal"]["status"], "two-sided");
    assert_eq!(v["lemmas"]["items"].as_array().unwrap().len(), 9);
}

#[test]
fn analyze_order_fifteen_splits() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "o15.nr", &["--group", "C3xC5", "--phi", "neg", "--reps", "1,2,5,6,7,8,9", "--zero", "1,2"]);
    let o = nearring(&["analyze", &f, "--report", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["semidirect"]["status"], "split");
    assert_eq!(v["semidirect"]["kernel"].as_array().unwrap().len(), 5);
    assert_eq!(v["semidirect"]["subnearfield"].as_array().unwrap().len(), 3);
    assert_eq!(v["generalized_centre"]["gc"], serde_json::json!([0, 5, 10]));
}

#[test]
fn analyze_field_is_all_distributive() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "f7.nr", &["--field", "7"]);
    let o = nearring(&["analyze", &f]);
    assert!(stdout(&o).contains("D(N) = {0, 1, 2, 3, 4, 5, 6}"));
}

#[test]
fn tables_without_provenance_are_accepted() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(z9(&dir)).unwrap();
    let stripped: String = text.split("phi ").next().unwrap().to_string() + "end\n";
    let f = path(&dir, "plain.nr");
    std::fs::write(&f, stripped).unwrap();
    let o = nearring(&["analyze", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("D(N) = {0, 3, 6}"));
}

#[test]
fn non_planar_tables_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "zero.nr");
    std::fs::write(&f, "nearring 1\norder 2\nname C2\nadd\n0 1\n1 0\nmul\n0 0\n0 0\nend\n").unwrap();
    let o = nearring(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn enumerate_small_orders() {
    let o = nearring(&["enumerate", "--max-order", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 classes\n");
    let o = nearring(&["enumerate", "--max-order", "3"]);
    assert!(stdout(&o).ends_with("1 classes\n"));
    let o = nearring(&["enumerate", "--max-order", "4"]);
    let out = stdout(&o);
    assert!(out.ends_with("2 classes\n"), "{out}");
    assert!(out.contains("C3 ") && out.contains("C2xC2"));
}

#[test]
fn enumerate_nontrivial_to_fifteen_with_manifest() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "m.json");
    let o = nearring(&["--jobs", "2", "enumerate", "--max-order", "15", "--filter", "nontrivial-distributive", "--manifest", &m]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("12 classes\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(v["class_count"], 12);
    assert_eq!(v["filter"], "nontrivial-distributive");
}

#[test]
fn enumerate_rejects_tiny_bound() {
    assert_eq!(nearring(&["enumerate", "--max-order", "1"]).status.code(), Some(2));
}

#[test]
fn nearvector_examples() {
    let o = nearring(&["nearvector", "--field", "5", "--twists", "id,id"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("Q(V) (25)"));
    assert!(stdout(&o).contains("regular blocks: {1, 2}"));

    let dir = TempDir::new().unwrap();
    let out = path(&dir, "nv.nr");
    let o = nearring(&["nearvector", "--field", "5", "--twists", "id,map:0,1,3,2,4", "--report", "json", "-o", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regular_blocks"], serde_json::json!([[1], [2]]));
    assert_eq!(v["distributive"].as_array().unwrap().len(), 5);
    assert!(Path::new(&out).exists());
    assert!(nearring(&["verify", &out]).status.success());
}

#[test]
fn nearvector_rejects_bad_input() {
    let o = nearring(&["nearvector", "--field", "5", "--twists", "id,map:0,2,1,3,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nearring(&["nearvector", "--field", "5", "--twists", "id,id", "--coordinate", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bibd_export_format() {
    let dir = TempDir::new().unwrap();
    let f = z9(&dir);
    let out = path(&dir, "z9.bibd");
    let o = nearring(&["bibd", &f, "-o", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    let header: Vec<usize> = lines.next().unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
    assert_eq!(header[0], 9);
    assert!(lines.next().unwrap().starts_with("unbalanced "));
    let blocks: Vec<&str> = lines.collect();
    assert_eq!(blocks.len(), header[1]);
    assert!(blocks.iter().all(|b| b.split(' ').count() == header[2]));

    let f7 = construct(&dir, "f7.nr", &["--field", "7"]);
    let o = nearring(&["bibd", &f7]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("lambda "));
}

#[test]
fn verify_passes_on_examples() {
    let dir = TempDir::new().unwrap();
    let o = nearring(&["verify", &z9(&dir)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(nearring(&["--help"]).status.code(), Some(0));
    assert_eq!(nearring(&["--version"]).status.code(), Some(0));
    assert_eq!(nearring(&["bogus"]).status.code(), Some(1));
    assert_eq!(nearring(&["construct"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "bad.nr");
    std::fs::write(&f, "junk\n").unwrap();
    let o = nearring(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    assert_eq!(nearring(&["analyze", &path(&dir, "missing.nr")]).status.code(), Some(2));
}
