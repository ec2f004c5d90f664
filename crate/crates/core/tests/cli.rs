use std::io::Write;
use std::process::{Command, Output};

use distpareto::graph::{make_family, parse_edge_list, to_edge_list, to_graph6};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distpareto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    (
        out.status.code().unwrap(),
        serde_json::from_str(&text).unwrap_or(Value::Null),
    )
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn spectrum_of_p3() {
    let (code, doc) = json(&["spectrum", "--family", "path", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "spectrum");
    let values = floats(&doc["payload"]["values"]);
    assert_eq!(values.len(), 4);
    assert_eq!(&values[..3], &[0.0, 1.0, 2.0]);
    assert!((values[3] - (1.0 + 3f64.sqrt())).abs() < 1e-11);
    assert_eq!(doc["payload"]["count"], 4);
    assert_eq!(doc["payload"]["integer_ladder"]["all_present"], true);
    assert_eq!(doc["graph_summary"]["diameter"], 2);
    assert!(doc["tool_version"].is_string());
}

#[test]
fn spectrum_of_k4_is_integral() {
    let out = run(&["spectrum", "--family", "complete", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["payload"]["values"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn csv_and_table_formats() {
    let f = temp_file(&to_edge_list(&make_family("star", &[4]).unwrap()));
    let path = f.path().to_str().unwrap();
    let out = run(&["spectrum", "--edges", path, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value,witness"));
    assert_eq!(lines.count(), 6);

    let out = run(&["rho2", "--family", "star", "4", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}

#[test]
fn graph6_input() {
    let g = make_family("cycle", &[5]).unwrap();
    let f = temp_file(&format!("{}\n", to_graph6(&g)));
    let (code, doc) = json(&["spectrum", "--graph6", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, direct) = json(&["spectrum", "--family", "cycle", "5"]);
    assert_eq!(doc["payload"], direct["payload"]);
}

#[test]
fn rho2_examples() {
    let (code, doc) = json(&["rho2", "--family", "star", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["value"], 4);
    assert_eq!(doc["payload"]["witness"], 0);

    let (_, doc) = json(&["rho2", "--family", "wheel", "6"]);
    assert_eq!(doc["payload"]["value"], 6);

    let (_, doc) = json(&["rho2", "--family", "complete_minus_edge", "5", "--bounds"]);
    let v = doc["payload"]["value"].as_f64().unwrap();
    assert!((v - (3.0 + 17f64.sqrt()) / 2.0).abs() < 1e-11);
    let bound = doc["payload"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["bound_id"] == "rho2_noncomplete_lower")
        .unwrap();
    assert_eq!(bound["tight"], true);
}

#[test]
fn formulas_examples() {
    let (code, doc) = json(&["formulas", "rho2_kab", "2", "3"]);
    assert_eq!(code, 0);
    let p = &doc["payload"];
    assert_eq!(p["formula_values"], serde_json::json!([4.64575131106]));
    assert_eq!(p["brute_force"], p["formula_values"]);
    assert!(p["abs_diff"].as_f64().unwrap() < 1e-9);
    assert_eq!(p["agree"], true);

    let (_, doc) = json(&["formulas", "star_radius", "6"]);
    assert_eq!(doc["payload"]["exact"], serde_json::json!(["4+sqrt(21)"]));
    let (_, doc) = json(&["formulas", "kn_minus_e_radius", "4"]);
    assert_eq!(
        doc["payload"]["exact"],
        serde_json::json!(["(3+sqrt(17))/2"])
    );
}

#[test]
fn verify_exit_codes() {
    let (code, doc) = json(&["verify", "extremal", "--order", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["data"]["max_count"], 13);
    assert_eq!(doc["payload"]["data"]["witness_count"], 3);

    let (code, doc) = json(&["verify", "monotonicity", "--order", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["violations"], 0);

    // C₄ violates the two-non-incident-edges bound at order 4.
    let (code, doc) = json(&["verify", "bounds-sweep", "--order", "4"]);
    assert_eq!(code, 1);
    assert!(doc["payload"]["violations"].as_u64().unwrap() > 0);

    assert_eq!(
        run(&["verify", "extremal", "--order", "8"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["spectrum"]).status.code(), Some(2));
    assert_eq!(
        run(&["spectrum", "--family", "petersen"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["spectrum", "--family", "path", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["formulas", "rho2_kab", "3", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["spectrum", "--family", "path", "21"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["spectrum", "--family", "path", "6", "--max-order", "5"])
            .status
            .code(),
        Some(3)
    );

    let f = temp_file("4\n0 1\n2 3\n");
    let out = run(&["spectrum", "--edges", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());

    let f = temp_file("3\n0 7\n");
    assert_eq!(
        run(&["spectrum", "--edges", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["spectrum", "--edges", "/nonexistent/graph.txt"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn edge_list_echo_round_trips() {
    let (_, doc) = json(&["spectrum", "--family", "clique_plus_pendant_p", "4", "2"]);
    let echoed = parse_edge_list(doc["graph_summary"]["edge_list"].as_str().unwrap()).unwrap();
    let g = make_family("clique_plus_pendant_p", &[4, 2]).unwrap();
    assert_eq!((echoed.order(), echoed.edges()), (g.order(), g.edges()));
}

#[test]
fn output_is_identical_across_worker_counts() {
    let base = run(&["spectrum", "--family", "wheel", "9", "--jobs", "1"]).stdout;
    for jobs in ["2", "3", "4"] {
        assert_eq!(
            run(&["spectrum", "--family", "wheel", "9", "--jobs", jobs]).stdout,
            base
        );
    }
    let a = run(&[
        "verify",
        "bounds-sweep",
        "--order",
        "4",
        "--random",
        "20",
        "--seed",
        "3",
    ])
    .stdout;
    let b = run(&[
        "verify",
        "bounds-sweep",
        "--order",
        "4",
        "--random",
        "20",
        "--seed",
        "3",
        "--jobs",
        "2",
    ])
    .stdout;
    assert_eq!(a, b);
}

#[test]
fn json_keys_are_sorted() {
    let out = run(&["rho2", "--family", "path", "4", "--bounds"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert!(text.ends_with('\n'));
}
