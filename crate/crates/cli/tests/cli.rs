use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use vwtower::io::GraphFile;
use vwtower::matrix_tree::{kappa_all_det, kappa_det};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str], input: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vwtower"))
        .arg(args[0])
        .arg(input)
        .args(&args[1..])
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

const TRIANGLE: &str = r#"{"prime": 2, "root_index": 1,
  "vertices": [{"id": "a", "weight": ["1"], "sqrt": ["1"]},
               {"id": "b", "weight": ["1"], "sqrt": ["1"]},
               {"id": "c", "weight": ["1"], "sqrt": ["1"]}],
  "edges": [{"id": "e1", "from": "a", "to": "b", "voltage": [0]},
            {"id": "e2", "from": "b", "to": "c", "voltage": [0]},
            {"id": "e3", "from": "c", "to": "a", "voltage": [0]}]}"#;

#[test]
fn kappa_table_and_json_agree() {
    let input = data("z2_tower.json");
    let table = run(&["kappa"], &input);
    assert_eq!(table.status.code(), Some(0));
    let text = stdout(&table);
    assert!(text.contains("κ = 6+4√2  (val 1)"), "{text}");

    let out = json(&run(&["kappa", "--format", "json"], &input));
    assert_eq!(out["kappa"]["text"], "6+4√2");
    assert_eq!(out["kappa"]["valuation"], "1");
    let file = GraphFile::load(&input).unwrap();
    let parsed = file.field.parse_json(&out["kappa"]["value"]).unwrap();
    assert_eq!(parsed, kappa_det(&file.graph).unwrap());
    let kv = kappa_all_det(&file.graph).unwrap();
    for (i, entry) in out["kappa_v"].as_array().unwrap().iter().enumerate() {
        let e = &entry["kappa_v"];
        assert_eq!(file.field.parse_json(&e["value"]).unwrap(), kv[i]);
        let row = format!("{}  {}  {}", entry["vertex"].as_str().unwrap(), e["text"].as_str().unwrap(), e["valuation"].as_str().unwrap());
        let squeezed: Vec<String> = text.lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join("  ")).collect();
        assert!(squeezed.contains(&row), "{row} not in table");
    }
}

#[test]
fn kappa_oracle_and_small_cases() {
    let o = run(&["kappa", "--oracle"], &data("z2_tower.json"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle agrees: yes"));

    let tri = scratch("triangle.json", TRIANGLE);
    assert!(stdout(&run(&["kappa"], &tri)).contains("κ = 9  (val 0)"));
    assert!(stdout(&run(&["kappa", "--root", "b"], &tri)).lines().count() == 3);
    assert_eq!(run(&["kappa", "--root", "zz"], &tri).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let split = scratch(
        "two_components.json",
        &TRIANGLE.replace(r#"{"id": "e2", "from": "b", "to": "c", "voltage": [0]}"#, r#"{"id": "e2", "from": "b", "to": "b", "voltage": [0]}"#)
            .replace(r#"{"id": "e3", "from": "c", "to": "a", "voltage": [0]}"#, r#"{"id": "e3", "from": "c", "to": "c", "voltage": [0]}"#),
    );
    assert_eq!(run(&["kappa"], &split).status.code(), Some(3));
    let tri = scratch("triangle_tower.json", TRIANGLE);
    // zero voltage: X(α_1) already falls apart
    assert_eq!(run(&["tower", "--levels", "1"], &tri).status.code(), Some(3));
    let broken = scratch("broken.json", "{\"prime\": 2");
    assert_eq!(run(&["kappa"], &broken).status.code(), Some(2));
    assert_eq!(run(&["tower", "--levels", "5"], &data("z2_tower.json")).status.code(), Some(2));
    // 3·2^{2·4} derived vertices exceeds the cap
    assert_eq!(run(&["derive", "--levels", "4"], &data("z2_squared.json")).status.code(), Some(2));
}

#[test]
fn spanning_tree_oracle() {
    let o = run(&["oracle"], &data("four_vertex.json"));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("5 spanning trees"));
    for t in ["{e1,e3,e5}", "{e1,e2,e5}", "{e3,e4,e5}", "{e2,e4,e5}", "{e1,e4,e5}"] {
        assert!(text.contains(t), "{t}");
    }
    assert_eq!(run(&["mtt-check"], &data("four_vertex.json")).status.code(), Some(0));
}

#[test]
fn tower_reports_invariants() {
    let input = data("z2_tower.json");
    let out = json(&run(&["tower", "--levels", "2", "--format", "json"], &input));
    assert_eq!((out["mu"].as_str(), out["lambda"].as_u64(), out["nu"].as_str()), (Some("1/2"), Some(2), Some("1/2")));
    let vals: Vec<&str> = out["levels"].as_array().unwrap().iter().map(|r| r["kappa"]["valuation"].as_str().unwrap()).collect();
    assert_eq!(vals, ["1", "7/2", "13/2"]);
    assert!(out["levels"].as_array().unwrap().iter().all(|r| r["matches"] == true));

    let text = stdout(&run(&["tower", "--levels", "2"], &input));
    assert!(text.contains("μ = 1/2, λ = 2, ν = 1/2"));
    assert!(text.contains("13/2"));
    let inv = stdout(&run(&["invariants", "--levels", "2"], &input));
    assert!(inv.contains("μ = 1/2, λ = 2, ν = 1/2"));
}

#[test]
fn kida_positive_case() {
    let o = run(&["kida"], &data("z2_tower_beta.json"));
    let text = stdout(&o);
    assert!(text.contains("Kida holds: μ 1/2→1, λ 2→4"), "{text}");
    // the weight bound is not met literally, so the run reports a failed hypothesis
    assert_eq!(o.status.code(), Some(5));
    let out = json(&run(&["kida", "--format", "json"], &data("z2_tower_beta.json")));
    assert_eq!(out["kida_holds"], true);
    assert_eq!(out["factorization"], true);
}

#[test]
fn kida_negative_case() {
    let o = run(&["kida", "--beta", "beta"], &data("half_weight_tower.json"));
    assert_eq!(o.status.code(), Some(5));
    let text = stdout(&o);
    assert!(text.contains("(c) violated at v2: val=-1 < 0"), "{text}");
    assert!(text.contains("Kida fails: μ 0→1, λ 2→2"));
    assert_eq!(run(&["kida", "--beta", "gamma"], &data("half_weight_tower.json")).status.code(), Some(2));
}

#[test]
fn derived_graph_round_trips() {
    let out = run(&["derive", "--levels", "1", "--format", "json"], &data("z2_tower.json"));
    let file = GraphFile::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(file.graph.vertex_count(), 6);
    assert_eq!(kappa_det(&file.graph).unwrap().to_string(), "192+136√2");
    assert!(file.voltage.is_some());
}

#[test]
fn hfun_and_qpoly() {
    let out = json(&run(&["hfun", "--levels", "1", "--format", "json"], &data("z2_tower.json")));
    assert_eq!(out["decomposition_holds"], true);
    assert_eq!(out["derived_kappa"]["text"], "192+136√2");
    let q = json(&run(&["qpoly", "--format", "json"], &data("z2_squared.json")));
    assert_eq!(q["mu"], "1/2");
    assert!(q["lambda"].is_null());
    let q1 = stdout(&run(&["qpoly"], &data("z2_tower.json")));
    assert!(q1.contains("λ = 2"));
}
