use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::sync::Arc;

use exterior_graph::graph::named;
use exterior_graph::io::triplets_from_text;
use exterior_graph::rational::int;
use exterior_graph::uniqueness::{mutants, ExteriorDerivative, TableOperator};
use exterior_graph::{CliqueComplex, Graph};
use tempfile::TempDir;

fn xgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xgraph")).args(args).output().unwrap()
}

fn xgraph_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_xgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> serde_json::Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap_or_else(|_| panic!("stderr is not JSON: {text}"));
    for key in ["code", "message", "context"] {
        assert!(v.get(key).is_some(), "missing `{key}` in {v}");
    }
    v
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const C4: &str = "a b\nb c\nc d\nd a\n";
const K3: &str = "a b\nb c\nc a\n";

#[test]
fn betti_of_four_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.edges", C4);
    let o = xgraph(&["betti", "--graph", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1\n");
    let o = xgraph(&["betti", "--graph", &g, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
}

#[test]
fn betti_reads_json_graph_and_stdin() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "oct.json", &named::octahedron().to_json());
    assert_eq!(stdout(&xgraph(&["betti", "--graph", &g])), "1 0 1\n");
    let o = xgraph_stdin(&["betti", "--graph", "-"], C4);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1\n");
    let o = xgraph_stdin(&["betti", "--graph", "-", "--format", "json"], &named::complete(5).to_json());
    assert_eq!(stdout(&o), "1 0 0 0 0\n");
}

#[test]
fn emitted_matrices_compose_to_zero() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", &named::complete(4).to_json());
    let out = dir.path().join("mats");
    let o = xgraph(&["betti", "--graph", &g, "--emit-matrices", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let load = |k: usize| triplets_from_text(&fs::read_to_string(out.join(format!("D{k}.txt"))).unwrap()).unwrap();
    let dense = |(r, c, e): (usize, usize, Vec<(usize, usize, i64)>)| {
        let mut m = vec![vec![0i64; c]; r];
        for (i, j, v) in e {
            m[i][j] = v;
        }
        m
    };
    let d0 = dense(load(0));
    let d1 = dense(load(1));
    assert_eq!((d0.len(), d0[0].len()), (6, 4));
    assert_eq!((d1.len(), d1[0].len()), (4, 6));
    for row in &d1 {
        for col in 0..4 {
            assert_eq!((0..6).map(|k| row[k] * d0[k][col]).sum::<i64>(), 0);
        }
    }
    let header = fs::read_to_string(out.join("D0.txt")).unwrap();
    assert!(header.starts_with("6 4 12\n"), "{header}");
}

#[test]
fn derivative_of_triangle_edge_form() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.edges", K3);
    let f = write(&dir, "a.json", r#"{"degree":1,"entries":[{"clique":["c","a"],"value":"1"}]}"#);
    let o = xgraph(&["d", "--graph", &g, "--form", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "{\"degree\":2,\"entries\":[{\"clique\":[\"a\",\"b\",\"c\"],\"value\":\"1\"}]}\n");
}

#[test]
fn wedge_and_expand_write_files() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.edges", K3);
    let f = write(&dir, "f.json", r#"{"degree":0,"entries":[{"clique":["a"],"value":"3"}]}"#);
    let a = write(&dir, "a.json", r#"{"degree":1,"entries":[{"clique":["a","b"],"value":"2"}]}"#);
    let out = dir.path().join("w.json");
    let o = xgraph(&["wedge", "--graph", &g, "--left", &f, "--right", &a, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "{\"degree\":1,\"entries\":[{\"clique\":[\"a\",\"b\"],\"value\":\"3\"}]}\n"
    );
    let o = xgraph(&["expand", "--graph", &g, "--form", &a]);
    assert_eq!(stdout(&o), "{\"degree\":1,\"entries\":[{\"clique\":[\"a\",\"b\"],\"value\":\"2\"}]}\n");
}

#[test]
fn cliques_listing() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.edges", K3);
    let o = xgraph(&["cliques", "--graph", &g, "--tuples"]);
    assert_eq!(stdout(&o), "level 1: 3\na\nb\nc\nlevel 2: 3\na b\na c\nb c\nlevel 3: 1\na b c\n");
    let o = xgraph(&["cliques", "--graph", &g, "--max-card", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["levels"][1]["count"], 3);
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_two_with_json() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.edges", K3);
    let looped = write(&dir, "loop.edges", "a a\n");
    let o = xgraph(&["betti", "--graph", &looped]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["code"], "self_loop");

    let bad = write(&dir, "bad.json", r#"{"degree":1,"entries":[{"clique":["a","z"],"value":"1"}]}"#);
    let o = xgraph(&["d", "--graph", &g, "--form", &bad]);
    assert_eq!(o.status.code(), Some(2));
    error_json(&o);

    let o = xgraph(&["betti", "--graph", dir.path().join("missing.edges").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    error_json(&o);

    let o = xgraph(&["betti", "--grph", &g]);
    assert_eq!(o.status.code(), Some(2));
    error_json(&o);

    assert_eq!(xgraph(&["--help"]).status.code(), Some(0));
    assert_eq!(xgraph(&["--version"]).status.code(), Some(0));
}

fn table_for(g: &Graph, op: &dyn exterior_graph::uniqueness::Operator) -> String {
    let cx = CliqueComplex::build_at_least(Arc::new(g.clone()), 3).unwrap();
    TableOperator::tabulate(op, &cx).unwrap().to_json()
}

#[test]
fn verify_operator_accepts_d_and_rejects_mutant() {
    let dir = TempDir::new().unwrap();
    let g = named::complete(4);
    let gpath = write(&dir, "k4.json", &g.to_json());
    let good = write(&dir, "d.json", &table_for(&g, &ExteriorDerivative));
    let bad = write(&dir, "twice.json", &table_for(&g, &mutants::Scaled(int(2))));
    let report = dir.path().join("report.json");
    let r = report.to_str().unwrap();

    let o = xgraph(&["verify-operator", "--graph", &gpath, "--operator", &good, "--trials", "5", "--report", r]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);

    let o = xgraph(&["verify-operator", "--graph", &gpath, "--operator", &bad, "--trials", "5", "--report", r, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(error_json(&o)["code"], "check_failed");
}

#[test]
fn verify_operator_default_report_path() {
    let dir = TempDir::new().unwrap();
    let g = named::complete(3);
    let gpath = write(&dir, "k3.json", &g.to_json());
    let good = write(&dir, "d.json", &table_for(&g, &ExteriorDerivative));
    let o = Command::new(env!("CARGO_BIN_EXE_xgraph"))
        .args(["verify-operator", "--graph", &gpath, "--operator", &good, "--trials", "3"])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(Path::new(&dir.path().join("verify-operator-report.json")).exists());
}

#[test]
fn selftest_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = xgraph(&["selftest", "--trials", "2", "--seed", "5", "--report", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
