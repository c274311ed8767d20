use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_poset-greedy"))
        .args(args)
        .output()
        .unwrap();
    let r = Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    };
    match r.code {
        2 => assert!(!r.stderr.is_empty()),
        _ => assert!(r.stderr.is_empty(), "{}", r.stderr),
    }
    r
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const NON_MATROID: &str = r#"{"poset":{"elements":["a","b","c"],"covers":[]},
    "independent":[["a"],["b"],["c"],["a","b"]]}"#;
const ADVERSARIAL: &str = r#"{"weights":{"a":"1","b":"1","c":"3/2"}}"#;
const CHAIN_FREE: &str = r#"{"poset":{"elements":["a","b"],"covers":[["a","b"]]},
    "independent":[["b"],["a","b"]]}"#;
const TRIANGLE: &str = r#"{"vertices":["1","2","3"],"facets":[["1","2"],["1","3"],["2","3"]]}"#;
const TRIANGLE_W: &str = r#"{"weights":{"1":"10","2":"10","3":"10","1,2":"3","1,3":"2","2,3":"1"}}"#;

#[test]
fn check_matroid_exit_codes() {
    let d = TempDir::new().unwrap();
    let free = write(&d, "free.json", CHAIN_FREE);
    let r = run(&["check-matroid", s(&free)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), serde_json::json!({"is_poset_matroid": true, "violation": null}));

    let bad = write(&d, "bad.json", NON_MATROID);
    let r = run(&["check-matroid", s(&bad)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["violation"], serde_json::json!({"A": ["c"], "B": ["a", "b"]}));

    let not_up = write(&d, "notup.json", r#"{"poset":{"elements":["a","b"],"covers":[["a","b"]]},"independent":[["a"]]}"#);
    assert_eq!(run(&["check-matroid", s(&not_up)]).code, 2);
    let garbage = write(&d, "garbage.json", "{not json");
    assert_eq!(run(&["check-matroid", s(&garbage)]).code, 2);
    let unknown = write(&d, "unknown.json", r#"{"poset":{"elements":["a"]},"independent":[["z"]]}"#);
    assert_eq!(run(&["check-matroid", s(&unknown)]).code, 2);
    assert_eq!(run(&["check-matroid", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn pgreedy_outputs() {
    let d = TempDir::new().unwrap();
    let chain = write(&d, "chain.json", CHAIN_FREE);
    let w = write(&d, "w.json", r#"{"weights":{"a":"1","b":"2"}}"#);
    let r = run(&["pgreedy", s(&chain), s(&w)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), serde_json::json!({"result": ["a", "b"], "total": "3"}));

    let sys = write(&d, "sys.json", NON_MATROID);
    let adv = write(&d, "adv.json", ADVERSARIAL);
    let r = run(&["pgreedy", s(&sys), s(&adv), "--trace"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["total"], "3/2");
    assert_eq!(
        v["trace"]["steps"],
        serde_json::json!([
            {"element": "c", "weight": "3/2", "accepted": true},
            {"element": "a", "weight": "1", "accepted": false},
            {"element": "b", "weight": "1", "accepted": false},
        ])
    );

    let wrong = write(&d, "wrong.json", r#"{"weights":{"a":"2","b":"1"}}"#);
    assert_eq!(run(&["pgreedy", s(&chain), s(&wrong)]).code, 2);
    let r = run(&["pgreedy", s(&chain), s(&wrong), "--unchecked-weights"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["unchecked_weights"], true);
    let short = write(&d, "short.json", r#"{"weights":{"a":"2"}}"#);
    assert_eq!(run(&["pgreedy", s(&chain), s(&short)]).code, 2);
}

#[test]
fn span_complex_outputs() {
    let d = TempDir::new().unwrap();
    let c = write(&d, "c.json", TRIANGLE);
    let w = write(&d, "w.json", TRIANGLE_W);
    let r = run(&["span-complex", s(&c), s(&w), "--h", "2"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["total"], "35");
    assert_eq!(v["spanning"], true);
    assert_eq!(v["faces"]["1"], serde_json::json!([["1"], ["2"], ["3"]]));
    assert_eq!(v["faces"]["2"], serde_json::json!([["1", "2"], ["1", "3"]]));

    let r = run(&["span-complex", s(&c), s(&w), "--h", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["faces"]["2"].as_array().unwrap().len(), 3);

    assert_eq!(run(&["span-complex", s(&c), s(&w), "--h", "1"]).code, 2);
    let up = write(&d, "up.json", r#"{"weights":{"1":"1","2":"1","3":"1","1,2":"3","1,3":"0","2,3":"0"}}"#);
    assert_eq!(run(&["span-complex", s(&c), s(&up), "--h", "2"]).code, 2);
}

#[test]
fn oracle_outputs() {
    let d = TempDir::new().unwrap();
    let sys = write(&d, "sys.json", NON_MATROID);
    let adv = write(&d, "adv.json", ADVERSARIAL);
    let r = run(&["oracle", s(&sys), s(&adv)]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.json(),
        serde_json::json!({"optimum": "2", "witnesses": [["a", "b"]], "family_size": 5})
    );
    let r = run(&["oracle", s(&sys), s(&adv), "--cap", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cap"), "{}", r.stderr);
}

#[test]
fn edmonds_rado_corpora() {
    let r = run(&["edmonds-rado", "--exhaustive-3", "--trials", "20", "--seed", "9"]);
    assert_eq!(r.code, 0);
    let lines: Vec<Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["violations"], 0);
    assert_eq!(summary["seed"], 9);
    assert_eq!(summary["systems"], lines.len() - 1);
    assert!(lines[..lines.len() - 1].iter().all(|l| l["outcome"] == "consistent"));

    let d = TempDir::new().unwrap();
    let corpus = write(&d, "corpus.json", &format!("[{NON_MATROID},{CHAIN_FREE}]"));
    let r = run(&["edmonds-rado", s(&corpus), "--random", "5", "--seed", "4"]);
    assert_eq!(r.code, 0);
    let lines: Vec<Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0]["adversarial_gap"], "1/2");
    assert_eq!(lines[0]["is_poset_matroid"], false);
    assert_eq!(lines[1]["is_poset_matroid"], true);

    assert_eq!(run(&["edmonds-rado"]).code, 2);
    let r = run(&["edmonds-rado", s(&corpus), "--cap", "2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn emitted_documents_round_trip() {
    use poset_greedy::io::{parse, WeightDoc};
    let d = TempDir::new().unwrap();
    let sys = write(&d, "sys.json", NON_MATROID);
    let corpus = write(&d, "c.json", &format!("[{NON_MATROID}]"));
    let r = run(&["edmonds-rado", s(&corpus)]);
    let report: Value = serde_json::from_str(r.stdout.lines().next().unwrap()).unwrap();
    // The adversarial weight feeds straight back into pgreedy and oracle.
    let w = serde_json::json!({"weights": report["adversarial_weight"]}).to_string();
    let doc: WeightDoc = parse(&w).unwrap();
    assert_eq!(doc.weights["c"], "3/2");
    let wp = write(&d, "w.json", &w);
    assert_eq!(run(&["pgreedy", s(&sys), s(&wp)]).json()["total"], "3/2");
    assert_eq!(run(&["oracle", s(&sys), s(&wp)]).json()["optimum"], "2");

    let trace = run(&["pgreedy", s(&sys), s(&wp), "--trace"]).json();
    let text = trace["trace"].to_string();
    let back: poset_greedy::io::TraceDoc = parse(&text).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), trace["trace"]);
}

#[test]
fn help_and_usage_errors() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("check-matroid"));
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["span-complex", "a.json", "b.json"]).code, 2);
}
