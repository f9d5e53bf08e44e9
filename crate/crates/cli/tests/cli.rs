use std::process::{Command, Output};

use lattice_census::oracle::{FormulaSource, PrintedFormulas};
use lattice_census::{Count, FbbClass};
use lattice_census_cli::{exit, verify, LatticeDocument};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-census"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_prints_exact_integers() {
    let o = cli(&["count", "--reducible", "3", "--n", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "600");
    for form in ["parts-first", "block-first", "thakare", "block_first"] {
        let o = cli(&["count", "--reducible", "2", "--n", "8", "--form", form]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "47");
    }
}

#[test]
fn usage_errors_exit_two() {
    let form_on_three = cli(&["count", "--reducible", "3", "--n", "8", "--form", "parts-first"]);
    assert_eq!(form_on_three.status.code(), Some(i32::from(exit::USAGE)));
    let bad_r = cli(&["count", "--reducible", "4", "--n", "8"]);
    assert_eq!(bad_r.status.code(), Some(i32::from(exit::USAGE)));
    let empty = cli(&["table", "--reducible", "2", "--n-from", "6", "--n-to", "5"]);
    assert_eq!(empty.status.code(), Some(i32::from(exit::USAGE)));
}

#[test]
fn table_rows_sum_to_total() {
    let o = cli(&["table", "--reducible", "3", "--n-from", "6", "--n-to", "12"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,l1,l2,l3,l4,total"));
    for line in lines {
        let v: Vec<u64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(v[1], v[2]);
        assert_eq!(v[1] + v[2] + v[3] + v[4], v[5], "row {line}");
    }
}

#[test]
fn table_json_keeps_column_order() {
    let o = cli(&["table", "--reducible", "2", "--n-from", "4", "--n-to", "5", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"[{"n":4,"total":1},{"n":5,"total":4}]"#);
}

#[test]
fn m2_exports_as_its_canonical_edges() {
    let o = cli(&["enumerate", "--n", "4", "--reducible", "2", "--format", "edges"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "0 1\n0 2\n1 3\n2 3");
}

#[test]
fn enumerate_json_round_trips() {
    let o = cli(&["enumerate", "--n", "8", "--reducible", "3"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("65 lattices"));
    for line in lines {
        let doc = LatticeDocument::from_json(line).unwrap();
        assert_eq!(doc.red.len(), 3);
        let again = LatticeDocument::from_lattice(&doc.to_lattice().unwrap());
        assert_eq!(again.to_json(), line);
    }
}

#[test]
fn enumerate_writes_dot_to_a_file() {
    let path = std::env::temp_dir().join(format!("lattice-census-{}.dot", std::process::id()));
    let o = cli(&[
        "enumerate", "--n", "6", "--reducible", "3", "--format", "dot",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(dot.matches("digraph").count(), 2);
    assert!(dot.contains("rankdir=BT;"));
}

#[test]
fn oversized_enumeration_exits_three() {
    let o = cli(&["enumerate", "--n", "13", "--reducible", "2"]);
    assert_eq!(o.status.code(), Some(i32::from(exit::SCALE)));
    let o = cli(&["verify", "--n-max", "13"]);
    assert_eq!(o.status.code(), Some(i32::from(exit::SCALE)));
}

#[test]
fn verify_reports_agreement() {
    let o = cli(&["verify", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 8);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n= 8"));
}

/// Off by one on a single class count.
struct Perturbed;

impl FormulaSource for Perturbed {
    fn class_lattices(&self, class: FbbClass, n: usize) -> Count {
        let base = PrintedFormulas.class_lattices(class, n);
        if class == FbbClass::F3 && n == 8 {
            base + 1u32
        } else {
            base
        }
    }
}

#[test]
fn perturbed_formula_fails_with_a_witness() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = verify(8, &Perturbed, &mut out, &mut err).unwrap();
    assert_eq!(code, exit::MISMATCH);
    let summary = String::from_utf8(err).unwrap();
    assert!(summary.contains("n= 8"));
    assert!(summary.contains("MISMATCH"));
    assert!(summary.contains("witness"));
    let json = String::from_utf8(out).unwrap();
    assert!(json.contains(r#""agrees":false"#));
}

#[test]
fn small_counts() {
    for (r, n, want) in [("2", "5", "4"), ("3", "7", "15"), ("3", "4", "0")] {
        let o = cli(&["count", "--reducible", r, "--n", n]);
        assert_eq!(stdout(&o).trim(), want, "r={r} n={n}");
    }
    let o = cli(&["table", "--reducible", "2", "--n-from", "4", "--n-to", "6"]);
    assert_eq!(stdout(&o), "n,total\n4,1\n5,4\n6,11\n");
    let o = cli(&["table", "--reducible", "3", "--n-from", "6", "--n-to", "7"]);
    assert_eq!(stdout(&o), "n,l1,l2,l3,l4,total\n6,1,1,0,0,2\n7,7,7,1,0,15\n");
}

#[test]
fn empty_classes_enumerate_nothing() {
    let o = cli(&["enumerate", "--n", "5", "--reducible", "3"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&o.stderr).trim(), "0 lattices");
}

#[test]
fn six_element_three_reducible_lattices_are_f1_and_f2() {
    let o = cli(&["enumerate", "--n", "6", "--reducible", "3"]);
    let mut classes: Vec<String> = stdout(&o)
        .lines()
        .map(|l| LatticeDocument::from_json(l).unwrap().fbb.unwrap())
        .collect();
    classes.sort();
    assert_eq!(classes, ["F1", "F2"]);
}

#[test]
fn enumeration_is_deterministic() {
    let args = ["enumerate", "--n", "9", "--reducible", "3", "--format", "edges"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}
