use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rlwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlwb")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rlwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_vs_c() {
    let o = rlwb(&["verify", "--builtin", "VS.C", "--flags", "chain,commutative,integral"]);
    assert_eq!(code(&o), 0);
    let o = rlwb(&["verify", "--builtin", "VS.C", "--flags", "zero-bounded"]);
    assert_eq!(code(&o), 1);
    let o = rlwb(&["verify", "--builtin", "VS.K_triple", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], Value::Bool(true));
}

#[test]
fn identity_verdicts() {
    let o = rlwb(&["identity", "--builtin", "VS.C", "--id", "div", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert_eq!(j["verdict"], "FAILS");
    assert_eq!(j["assignment"]["x"], "v");
    assert_eq!(j["assignment"]["y"], "c");
    let o = rlwb(&["identity", "--builtin", "VS.B", "--id", "div"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("HOLDS"));
    let o = rlwb(&["identity", "--builtin", "VS.B", "--id", "x * 1 = x"]);
    assert_eq!(code(&o), 0);
    let o = rlwb(&["identity", "--builtin", "VS.B", "--id", "x * = x"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn amalgam_vs_is_unsat() {
    let o = rlwb(&["amalgam", "--vf", "VS", "--max-size", "9", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert_eq!(j["verdict"]["result"], "UNSAT");
    assert_eq!(j["verdict"]["bound"], 9);
    let o = rlwb(&["one-amalgam", "--vf", "VS.pointed", "--max-size", "7"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("UNSAT"));
}

#[test]
fn amalgam_found_from_document() {
    let path = scratch("doubled.json");
    std::fs::write(&path, r#"{"A": "VS.A", "B": "VS.B", "C": "VS.B", "i": [0, 2, 3], "j": [0, 2, 3]}"#).unwrap();
    let p = path.to_str().unwrap();
    let o = rlwb(&["amalgam", "--vf", p, "--max-size", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["verdict"]["result"], "FOUND");
    assert_eq!(j["verdict"]["h"]["map"], serde_json::json!([0, 1, 2, 3]));
    let o = rlwb(&["one-amalgam", "--vf", p, "--max-size", "4"]);
    assert_eq!(code(&o), 0);
    // a zero budget cannot even open the root of the first completion
    let o = rlwb(&["amalgam", "--vf", p, "--max-size", "4", "--budget", "0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn obstruct_certifies_and_rejects() {
    let o = rlwb(&["obstruct", "--vf", "VS", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["verdict"], "CERTIFIED");
    for (k, v) in [("a", "v"), ("b", "b"), ("c", "c"), ("u1", "u"), ("u2", "u")] {
        assert_eq!(j["labels"][k], v);
    }
    let o = rlwb(&["obstruct", "--vf", "VS", "--witness", "v,b,c,v,u"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("REJECT(W2): b\\v = 1 ≰ b"));
    let o = rlwb(&["obstruct", "--vf", "VS", "--witness", "v,v,c,u,u"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("W1 domain"));
    let o = rlwb(&["obstruct", "--vf", "VS^const-1:2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn enumerate_counts() {
    let o = rlwb(&["enumerate", "--size", "3", "--integral", "--commutative", "--count"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2");
    let o = rlwb(&["enumerate", "--size", "2", "--integral", "--format", "json"]);
    assert_eq!(json(&o)["count"], 1);
}

#[test]
fn construct_round_trips_through_documents() {
    let path = scratch("sum.json");
    let p = path.to_str().unwrap();
    let o = rlwb(&["construct", "ordinal-sum", "--lower", "lukasiewicz(3)", "--upper", "two", "--format", "json", "--output", p]);
    assert_eq!(code(&o), 0);
    let o = rlwb(&["verify", "--input", p, "--flags", "lattice,monoid,residuation,chain,integral,commutative"]);
    assert_eq!(code(&o), 0);
    let o = rlwb(&["embed", "--from", "VS.A", "--to", p, "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["morphisms"][0]["map"], serde_json::json!([0, 2, 3]));
    let o = rlwb(&["construct", "gluing", "--triple", "VS.K_triple", "--upper", "two", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let c = serde_json::json!([[0, 0, 0, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 1, 2], [0, 1, 1, 3, 3], [0, 1, 2, 3, 4]]);
    assert_eq!(json(&o)["product"], c);
    let o = rlwb(&["construct", "rotation", "--algebra", "VS.A", "--delta", "identity", "--n", "2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn filters_and_quotients() {
    let o = rlwb(&["filters", "--builtin", "VS.B", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let members: Vec<Value> = json(&o)["filters"].as_array().unwrap().iter().map(|f| f["members"].clone()).collect();
    assert_eq!(members, vec![serde_json::json!(["1"]), serde_json::json!(["v", "1"]), serde_json::json!(["u", "b", "v", "1"])]);
    let o = rlwb(&["quotient", "--builtin", "VS.B", "--filter", "v,1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["map"], serde_json::json!([0, 1, 2, 2]));
    let o = rlwb(&["quotient", "--builtin", "VS.B", "--filter", "b,1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&rlwb(&["verify", "--builtin", "VS.Q"])), 2);
    assert_eq!(code(&rlwb(&["verify"])), 2);
    assert_eq!(code(&rlwb(&["frobnicate"])), 2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"name\": 3}").unwrap();
    assert_eq!(code(&rlwb(&["verify", "--input", bad.to_str().unwrap()])), 2);
}

#[test]
fn paper_pipeline() {
    let o = rlwb(&["paper", "--max-size", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["passed"], Value::Bool(true));
    assert_eq!(j["rotations"], serde_json::json!([["identity", 2], ["const-1", 2]]));
    let o = rlwb(&["paper", "--max-size", "5", "--rotation", "identity:2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("all checks passed"));
}
