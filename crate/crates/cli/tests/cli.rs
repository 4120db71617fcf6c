use std::process::{Command, Output};

use serde_json::Value;

fn tonalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tonalg")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = tonalg(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn module_dimension() {
    let v = json(&["module", "--l", "2", "--n", "4", "--mu", "(2)|-"]);
    assert_eq!(v["dim"], 10);
    assert_eq!(v["profiles"].as_array().unwrap().len(), 10);
    let v = json(&["module", "--l", "2", "--n", "5", "--mu", "2,1|1"]);
    assert_eq!(v["dim"], 20);
}

#[test]
fn module_matrices() {
    let v = json(&["module", "--l", "2", "--n", "3", "--mu", "1|-", "--matrices"]);
    let mats = v["matrices"].as_object().unwrap();
    assert!(mats.contains_key("s1") && mats.contains_key("merge12") && mats.contains_key("loop"));
    assert_eq!(mats["s1"].as_array().unwrap().len(), 4);
}

#[test]
fn gamma_levels() {
    let v = json(&["gamma", "--l", "3", "--n", "8", "--format", "json"]);
    let eta = v["eta"].as_array().unwrap();
    let level = |t: u64| -> Vec<String> {
        let e = eta.iter().find(|e| e["t"] == t).unwrap();
        e["vectors"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
    };
    assert_eq!(level(8), vec!["(8,0,0)"]);
    assert_eq!(level(6), vec!["(4,2,0)", "(5,0,1)"]);
    assert_eq!(level(4), vec!["(0,4,0)", "(1,2,1)", "(2,0,2)"]);
    assert_eq!(level(3), vec!["(0,1,2)"]);
    let out = tonalg(&["gamma", "--l", "2", "--n", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 2);
}

#[test]
fn compose_and_basis() {
    let v = json(&["compose", "2,2|T1,T2;B1,B2", "2,2|T1,T2;B1,B2"]);
    assert_eq!(v["delta_power"], 1);
    let v = json(&["basis", "--l", "2", "--n", "2", "--count-only"]);
    assert_eq!(v["dim"], 4);
    assert!(v.get("diagrams").is_none());
}

#[test]
fn gram_ranks() {
    let v = json(&["gram", "--l", "2", "--n", "3", "--mu", "1|-", "--at", "1", "--det"]);
    assert_eq!(v["rank_at"], 1);
    assert_eq!(v["generic_rank"], 4);
    let v = json(&["gram", "--l", "2", "--n", "3", "--mu", "1|1", "--at", "1/1"]);
    assert_eq!(v["rank_at"], 3);
}

#[test]
fn bratteli_exports() {
    let dir = std::env::temp_dir().join(format!("tonalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g.dot");
    let csv = dir.join("g.csv");
    let v =
        json(&["bratteli", "--l", "2", "--n-max", "4", "--dot", dot.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(v["consistent"], true);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("2|- (10)"));
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("n,label,dim\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn structure_report() {
    let v = json(&["structure", "--l", "2", "--n", "4"]);
    assert_eq!(v["quasi_hereditary"], true);
    assert_eq!(v["p_chain"].as_array().unwrap().len(), 3);
    let v = json(&["structure", "--l", "2", "--n", "4", "--at", "0"]);
    assert_eq!(v["quasi_hereditary"], false);
}

#[test]
fn verify_passes() {
    let out = tonalg(&["verify", "--l", "2", "--n-max", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|line| line.starts_with("PASS ")));
    assert!(text.contains("fusion-corner l=2 n=4"));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["gram", "--l", "2", "--n", "3", "--mu", "1|-", "--at", "0.5"],
        vec!["module", "--l", "2", "--n", "4", "--mu", "1|-"],
        vec!["module", "--l", "0", "--n", "4", "--mu", "1"],
        vec!["compose", "2,2|T1", "1,1|T1,B1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(tonalg(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let args = ["module", "--l", "2", "--n", "4", "--mu", "1|1", "--matrices"];
    assert_eq!(tonalg(&args).stdout, tonalg(&args).stdout);
}

#[test]
fn thread_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_tonalg"))
        .env("TONALG_THREADS", "1")
        .args(["verify", "--l", "1", "--n-max", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_tonalg"))
        .env("TONALG_THREADS", "many")
        .args(["basis", "--l", "1", "--n", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
