use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_annular-skein"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_input(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("annular-skein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn matchings_listing_and_graph() {
    let o = run(&["matchings", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["matchings"].as_array().unwrap().len(), 2);
    assert_eq!(v[0]["arrows"].as_array().unwrap().len(), 1);

    let o = run(&["matchings", "--n", "3", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches("->").count(), 6);

    assert_eq!(run(&["matchings", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["matchings", "--n", "6"]).status.code(), Some(2));
    assert_eq!(run(&["matchings", "--n", "6", "--limit-override"]).status.code(), Some(0));
    assert_eq!(run(&["matchings", "--n", "2", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn export_graph_matches_dot_listing() {
    let a = stdout(&run(&["export-graph", "--n", "3"]));
    let b = stdout(&run(&["matchings", "--n", "3", "--format", "dot"]));
    assert_eq!(a, b);
}

#[test]
fn ranks_commands() {
    let o = run(&["ranks", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("skein [2, 3, 1]") && text.contains("ring [1, 3, 2]") && text.contains("PASS"));

    let o = run(&["ranks", "--n", "1"]);
    assert!(stdout(&o).contains("skein [1, 1], ring [1, 1]"));

    let o = run(&["ranks", "--n", "1..4", "--format", "csv"]);
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,degree,skein_rank,ring_rank_reversed,match");
    assert_eq!(lines.len(), 1 + 2 + 3 + 4 + 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));

    let o = run(&["ranks", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["matches"], Value::Bool(true));
}

#[test]
fn reduce_type_ii_vector_is_zero() {
    let path = write_input(
        "type2.json",
        r#"{"n":2,"terms":[
            {"config":{"n":2,"arcs":[[1,2],[3,4]],"dots":[[1,2],[3,4]]},"coeff":1},
            {"config":{"n":2,"arcs":[[1,4],[2,3]],"dots":[[1,4],[2,3]]},"coeff":-1}]}"#,
    );
    let o = run(&["reduce", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coords = v["coordinates"].as_array().unwrap();
    assert_eq!(coords.len(), 6);
    assert!(coords.iter().all(|x| x == 0));
    assert!(v["class"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn rewrite_nested_takes_one_move() {
    let path = write_input("nested.json", r#"{"n":2,"arcs":[[1,4],[2,3]],"dots":[[1,4],[2,3]]}"#);
    let o = run(&["rewrite", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["moves"].as_array().unwrap().len(), 1);
    assert_eq!(v["replay_verified"], Value::Bool(true));

    let bare = write_input("bare.json", r#"{"n":3,"arcs":[[1,6],[2,5],[3,4]]}"#);
    let o = run(&["rewrite", bare.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("replay verified: true"));

    let partial = write_input("partial.json", r#"{"n":2,"arcs":[[1,4],[2,3]],"dots":[[2,3]]}"#);
    assert_eq!(run(&["rewrite", partial.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn comult_of_undotted_pair() {
    let path = write_input(
        "undotted.json",
        r#"{"n":2,"terms":[{"config":{"n":2,"arcs":[[1,2],[3,4]],"dots":[]},"coeff":1}]}"#,
    );
    let o = run(&["comult", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_inputs_exit_with_usage_code() {
    let broken = write_input("broken.json", "{\"n\": 2,\n \"terms\": [");
    let o = run(&["reduce", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let crossing = write_input(
        "crossing.json",
        r#"{"n":2,"terms":[{"config":{"n":2,"arcs":[[1,3],[2,4]],"dots":[]},"coeff":1}]}"#,
    );
    assert_eq!(run(&["comult", crossing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "2", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--n", "2", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.starts_with("PASS")));

    let o = run(&["verify", "--n", "3", "--suite", "comult", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "PASS");
    assert_eq!(v[0]["certificates"].as_array().unwrap().len(), 24);

    assert_eq!(run(&["verify", "--n", "4", "--suite", "kernel"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "4", "--suite", "kernel", "--limit-override"]).status.code(), Some(0));
}

#[test]
fn frobenius_verdicts() {
    let o = run(&["verify", "--n", "2", "--suite", "frobenius"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS frobenius n=2"));

    let o = run(&["frobenius", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP"));

    // the top piece at n = 3 has rank 5, so the literal claim fails
    let o = run(&["frobenius", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["top_rank"], 5);
    assert_eq!(v[0]["annihilation"], Value::Bool(true));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = run(&["verify", "--n", "1..3", "--suite", "frobenius", "--seed", "7"]);
    let b = run(&["verify", "--n", "1..3", "--suite", "frobenius", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);

    let out = std::env::temp_dir().join(format!("annular-skein-out-{}.json", std::process::id()));
    let o = run(&["matchings", "--n", "3", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["count"], 5);
}
