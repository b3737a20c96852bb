use std::process::{Command, Output};

use serde_json::Value;

fn gaudin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaudin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn verify_identity_small_cases() {
    let out = gaudin(&["verify-identity", "--z", "1,2", "--z", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["passed"], true);
    let tuples = d["result"]["tuples"].as_array().unwrap();
    assert_eq!(tuples.len(), 2);
    assert!(tuples[0].get("millis").is_none());
}

#[test]
fn verify_identity_rejects_bad_input() {
    assert_eq!(gaudin(&["verify-identity", "--z", "1,2.5"]).status.code(), Some(2));
    assert_eq!(gaudin(&["verify-identity", "--z", "1.0,2.5"]).status.code(), Some(2));
    assert_eq!(gaudin(&["verify-identity", "--random", "1", "--n", "5"]).status.code(), Some(2));
    assert_eq!(gaudin(&["verify-identity"]).status.code(), Some(2));
}

#[test]
fn random_tuples_are_seeded() {
    let a = gaudin(&["verify-identity", "--random", "3", "--n", "2", "--seed", "7"]);
    let b = gaudin(&["verify-identity", "--random", "3", "--n", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let d = doc(&a);
    let third = d["result"]["tuples"][2]["z"].as_array().unwrap();
    assert_eq!(third[0], third[1]);
}

#[test]
fn checks_pass() {
    for args in [
        ["check", "--commute", "3"],
        ["check", "--centre", "6"],
        ["check", "--f-vanishing", "3"],
        ["check", "--bijection", "3"],
    ] {
        let out = gaudin(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(doc(&out)["passed"], true);
    }
    assert_eq!(gaudin(&["check", "--commute", "6"]).status.code(), Some(2));
}

#[test]
fn solve_then_dualize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let p = path.to_str().unwrap();
    let out = gaudin(&["solve", "--z", "sqrt(3),-sqrt(3),0.0", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    let d: Value = serde_json::from_slice(&first).unwrap();
    let counts: Vec<u64> = d["result"]["report"]["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["solutions"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 2, 1]);

    gaudin(&["solve", "--z", "sqrt(3),-sqrt(3),0.0", "--out", p]);
    assert_eq!(std::fs::read(&path).unwrap(), first);

    let dual = gaudin(&["dualize", "--input", p]);
    assert_eq!(dual.status.code(), Some(0));
    let dd = doc(&dual);
    assert_eq!(dd["result"]["involution"], true);
    assert_eq!(dd["result"]["pairing"].as_array().unwrap().len(), 4);
}

#[test]
fn dualize_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"not\": \"a report\"}").unwrap();
    let out = gaudin(&["dualize", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_point_solution() {
    let out = gaudin(&["solve", "--z", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    let basis = &d["result"]["report"]["records"][0]["v_e"]["basis"];
    assert_eq!(basis.as_array().unwrap().len(), 1);
}

#[test]
fn schubert_type_of_partition() {
    let out = gaudin(&["schubert-type", "--partition", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["result"]["exponents"], serde_json::json!([4, 2, 0]));
    assert_eq!(d["result"]["c_lambda"], serde_json::json!(["0", "1", "1", "1/3"]));
}
