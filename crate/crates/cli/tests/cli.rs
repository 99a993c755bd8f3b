use std::process::{Command, Output};

use serde_json::Value;

fn convring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn kernel_of_the_homology_slice() {
    let o = convring(&["compute", "kernel", "--model", "S-prime"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "xi^2 - delta*eta^2 - 1");
}

#[test]
fn multiply_in_the_abstract_presentation() {
    let o = convring(&["compute", "multiply", "--presentation", "abstract", "c", "a*b-c"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(squash(&stdout(&o)), "b^2+1");
}

#[test]
fn tri_table_entry_in_text_and_csv() {
    let o = convring(&["compute", "table", "--kind", "tri", "--a", "1", "--b", "1", "--l", "2"]);
    assert_eq!(stdout(&o).trim(), "q^-2 * v(5)_2");
    let o = convring(&["compute", "table", "--kind", "tri", "--a", "1", "--b", "1", "--l", "2", "--output", "csv"]);
    assert_eq!(stdout(&o), "kind,params,term:coeff_q_power,n,m\ntri,a=1;b=1;l=2,1:-2,5,2\n");
}

#[test]
fn ambiguous_table_entries_are_marked() {
    let o = convring(&["compute", "table", "--kind", "odin", "--l", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[ambiguous tail]"));
}

#[test]
fn table_sweep_emits_csv() {
    let o = convring(&["compute", "table", "--sweep", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("kind,params,"));
    assert!(text.lines().any(|l| l.starts_with("dva,l=4;n=6,")));
}

#[test]
fn membership_and_bracket() {
    let o = convring(&["compute", "membership", "--flavor", "GG", "(y^2-1)/(z^2-1)"]);
    assert_eq!(stdout(&o).trim(), "member: T");
    let o = convring(&["compute", "membership", "--flavor", "GG", "1/(z^2-1)"]);
    assert_eq!(stdout(&o).trim(), "not a member");
    let o = convring(&["compute", "bracket", "--flavor", "GG", "y+y^-1", "z+z^-1", "--output", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["member"], true);
}

#[test]
fn invariants_and_conversion() {
    let o = convring(&["compute", "invariants", "--model", "S", "--involutions", "jmath"]);
    assert_eq!(stdout(&o), "a*c\na^2\nb\nc^2\n");
    let o = convring(&["compute", "convert", "--from", "abstract", "--to", "localized", "a"]);
    assert_eq!(stdout(&o).trim(), "z + z^-1");
}

#[test]
fn verify_report_shape_and_determinism() {
    let a = convring(&["verify", "heisenberg", "--output", "json", "--seed", "3"]);
    let b = convring(&["verify", "heisenberg", "--output", "json", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "heisenberg");
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert_eq!(c["ms"], 0);
    }
    let csv = convring(&["verify", "steinberg", "--output", "csv"]);
    assert!(stdout(&csv).starts_with("suite,name,status,witness,ms\n"));
}

#[test]
fn corrupted_relation_fails_with_exit_one() {
    let o = convring(&["verify", "homology", "--config", &fixture("corrupt-BM.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[fail]"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(convring(&["verify"]).status.code(), Some(2));
    assert_eq!(convring(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(convring(&["verify", "kring", "--degree-bound", "0"]).status.code(), Some(2));
    assert_eq!(convring(&["verify", "kring", "--config", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(convring(&["compute", "kernel", "--model", "S-prime", "--output", "xml"]).status.code(), Some(2));
    assert_eq!(convring(&["compute", "multiply", "c", "a*"]).status.code(), Some(2));
}

#[test]
fn semantic_errors_exit_one() {
    let o = convring(&["compute", "membership", "--flavor", "GG", "1/(z-2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = convring(&["compute", "table", "--kind", "tri", "--a", "-1", "--b", "0", "--l", "0"]);
    assert_eq!(o.status.code(), Some(1));
}
