use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turanlab"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn construct_prints_graph6() {
    let o = run(&["construct", "hstar:8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "G`~~fc");
    let v = json(&run(&["construct", "--format", "json", "h:10,2,2"]));
    assert_eq!(v["edges"], 29);
    assert_eq!(v["n"], 10);
}

#[test]
fn bad_specs_exit_with_two() {
    let o = run(&["construct", "nope:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
    assert_eq!(run(&["classify-tree", "cycle:5"]).status.code(), Some(2));
}

#[test]
fn split_and_decomposition() {
    let o = run(&["split", "star:3"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    let v = json(&run(&[
        "decomp",
        "--forbid",
        "blowup:star:3,3",
        "--format",
        "json",
    ]));
    assert_eq!(v["p"], 2);
    assert_eq!(v["authoritative"], true);
    assert_eq!(v["family"].as_array().unwrap().len(), 2);
    assert_eq!(
        run(&["decomp", "--fast-blowup", "path:4,3", "--cross-check"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn containment_witness() {
    let o = run(&[
        "contains",
        "--host",
        "cycle:6",
        "--pattern",
        "path:4",
        "--witness",
    ]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("true"));
    let map: Vec<usize> = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(map.len(), 4);
    let v = json(&run(&[
        "contains",
        "--host",
        "cycle:5",
        "--pattern",
        "complete:3",
        "--format",
        "json",
    ]));
    assert_eq!(v["contains"], false);
}

#[test]
fn extremal_modes_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("ex.jsonl");
    let cache = cache.to_str().unwrap();
    let args = [
        "ex",
        "--n",
        "7",
        "--forbid",
        "complete:3",
        "--mode",
        "both",
        "--all-extremal",
        "--cache",
        cache,
    ];
    let v = json(&run(&args));
    assert_eq!(v["agree"], true);
    assert_eq!(v["results"][0]["max_edges"], 12);
    let lines = std::fs::read_to_string(cache).unwrap().lines().count();
    assert_eq!(lines, 2);
    let again = json(&run(&args));
    assert_eq!(again["results"], v["results"]);
    assert_eq!(std::fs::read_to_string(cache).unwrap().lines().count(), 2);
    let o = run(&["ex", "--n", "6", "--forbid", "cycle:4", "--format", "human"]);
    assert!(stdout(&o).starts_with("ex(6, F) = 7"));
}

#[test]
fn budget_exhaustion_fails_the_run() {
    let o = run(&[
        "ex",
        "--n",
        "8",
        "--forbid",
        "complete:4",
        "--budget-nodes",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["complete"], false);
}

#[test]
fn tree_and_prediction() {
    let v = json(&run(&["classify-tree", "path:6", "--format", "json"]));
    assert_eq!(v["verdict"], "case_i");
    let o = run(&[
        "predict", "--family", "star", "--k", "2", "--p", "2", "--n", "10",
    ]);
    assert!(stdout(&o).starts_with("26 "));
    assert!(stdout(&o).contains("threshold not met"));
    let o = run(&[
        "predict", "--family", "tree", "--tree", "star:3", "--p", "3", "--n", "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let v = json(&run(&["verify", "figures", "--k", "4", "--format", "json"]));
    assert_eq!(v["aggregate"], "pass");
    assert_eq!(v["schema_version"], 1);
    let o = run(&[
        "verify",
        "theorem1",
        "--k",
        "2",
        "--m-range",
        "4..6",
        "--format",
        "tsv",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = run(&["verify", "lemma2", "--bases", "cycle:3", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "verify",
        "freeness",
        "--construction",
        "hstar:n",
        "--forbid",
        "blowup:cycle:3,3",
        "--n-range",
        "6..12",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("aggregate: pass"));
    let o = run(&["verify", "tfree", "--tree", "path:4", "--m", "8"]);
    assert!(o.status.success());
}
