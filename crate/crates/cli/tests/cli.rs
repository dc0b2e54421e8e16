use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn aldlf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aldlf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

const DEFS: &str = r#"
[automata.A]
states = ["s0", "s1"]
start = "s0"
accepting = ["s1"]
transitions = [
  { from = "s0", kind = "future", formula = "q", to = "s1" },
  { from = "s1", kind = "past", formula = "true", to = "s0" },
]
"#;

#[test]
fn eval_atom_on_single_instant() {
    let f = Files::new();
    let t = f.put("t", "p\n");
    let o = aldlf(&["eval", "-f", "p", "--trace", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn eval_star_path() {
    let f = Files::new();
    let t = f.put("t", "p\np\nq\n");
    let o = aldlf(&["eval", "-f", "<p*> q", "--trace", &t]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".into()));
    let o = aldlf(&["eval", "-f", "<p*> q", "--trace", &t, "--pos", "2", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"{"holds":true,"position":2}"#);
    let o = aldlf(&["eval", "-f", "q", "--trace", &t]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "false\n".into()));
}

#[test]
fn usage_errors_exit_two() {
    let f = Files::new();
    let t = f.put("t", "p\n");
    let o = aldlf(&["eval", "-f", "p", "--trace", &f.path("missing")]);
    assert_eq!(o.status.code(), Some(2));
    let o = aldlf(&["eval", "-f", "p &\n (q", "--trace", &t]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:4"), "{}", stderr(&o));
    let o = aldlf(&["eval", "-f", "<@B> p", "--trace", &t]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("@B"));
    let empty = f.put("empty", "# nothing\n");
    assert_eq!(aldlf(&["eval", "-f", "p", "--trace", &empty]).status.code(), Some(2));
    assert_eq!(aldlf(&["eval", "-f", "p", "--trace", &t, "--pos", "1"]).status.code(), Some(2));
    assert_eq!(aldlf(&["sat"]).status.code(), Some(2));
    assert_eq!(aldlf(&["sat", "-f", "p", "--max-states", "0"]).status.code(), Some(2));
}

#[test]
fn formula_file_and_defs() {
    let f = Files::new();
    let defs = f.put("defs.toml", DEFS);
    let formula = f.put("f", "[@A] (p | q)\n");
    let t = f.put("t", "p\nq\n");
    let o = aldlf(&["eval", "--formula-file", &formula, "--defs", &defs, "--trace", &t]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".into()));
    let t = f.put("t2", "p\n-\n");
    let o = aldlf(&["eval", "--formula-file", &formula, "--defs", &defs, "--trace", &t]);
    assert_eq!(o.status.code(), Some(0));
    let o = aldlf(&["eval", "-f", "<@A> !p", "--defs", &defs, "--trace", &t]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compile_single_atom() {
    let o = aldlf(&["compile", "-f", "p", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 1);
    let delta = v["delta"].as_array().unwrap();
    assert_eq!(delta.len(), 2);
    assert_eq!(delta[0]["delta"], "false");
    assert_eq!(delta[1]["delta"], "true");
}

#[test]
fn compile_box_marks_box_states_accepting() {
    let f = Files::new();
    let defs = f.put("defs.toml", DEFS);
    let o = aldlf(&["compile", "-f", "[@A] p", "--defs", &defs, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for s in v["states"].as_array().unwrap() {
        let formula = s["formula"].as_str().unwrap();
        assert_eq!(s["accepting"].as_bool().unwrap(), formula.starts_with('['), "{formula}");
    }
    let accepting = v["accepting"].as_array().unwrap();
    assert_eq!(accepting.len(), 2);
}

#[test]
fn compile_dot_is_well_formed() {
    let o = aldlf(&["compile", "-f", "<p ; back(q)> (p | [q*] r)", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("digraph afw {"));
    assert!(out.trim_end().ends_with('}'));
    assert_eq!(out.matches('{').count(), out.matches('}').count());
    assert_eq!(out.matches('"').count() % 2, 0);
    for line in out.lines().skip(1).filter(|l| l.trim() != "}") {
        assert!(line.trim_end().ends_with(';'), "{line}");
    }
}

#[test]
fn compile_refuses_large_alphabets() {
    let o = aldlf(&["compile", "-f", "a & b & c & d & e & f & g"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("refusing"));
}

#[test]
fn sat_verdicts() {
    let o = aldlf(&["sat", "-f", "p & !p"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "UNSAT\n".into()));
    let o = aldlf(&["sat", "-f", "<{p}? ; true> q"]);
    assert_eq!(o.status.code(), Some(0));
    let f = Files::new();
    let t = f.put("w", &stdout(&o));
    let replay = aldlf(&["eval", "-f", "<{p}? ; true> q", "--trace", &t]);
    assert_eq!(replay.status.code(), Some(0));
    let o = aldlf(&["sat", "-f", "<p ; p ; p> true", "--max-states", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn equivalence_verdicts() {
    let f = Files::new();
    let defs = f.put("defs.toml", DEFS);
    let o = aldlf(&["equiv", "-f", "<@A> p", "--other", "!([@A] !p)", "--defs", &defs]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "equivalent\n".into()));
    let o = aldlf(&["equiv", "-f", "p", "--other", "q", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counterexample"], serde_json::json!([["p"]]));
    let o = aldlf(&["equiv", "--ltlf", "-f", "X p", "--other", "<true> p"]);
    assert_eq!(o.status.code(), Some(0));
    let o = aldlf(&["equiv", "--ltlf", "-f", "p U q", "--other", "q | p & X (p U q)", "--other-ltlf"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn nnf_output_parses_back() {
    let f = Files::new();
    let o = aldlf(&["nnf", "-f", "!<p*> (q & !r)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let defs = f.put("defs.toml", v["definitions"].as_str().unwrap());
    let text = v["formula"].as_str().unwrap();
    assert!(text.starts_with("[@A0]"));
    let o = aldlf(&["equiv", "-f", text, "--defs", &defs, "--other", "!<p*> (q & !r)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn closure_lists_formula_first() {
    let o = aldlf(&["closure", "-f", "<p> q"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with('<'));
    assert!(lines.contains(&"q"));
}

#[test]
fn certificates_round_trip_through_files() {
    let f = Files::new();
    let t = f.put("t", "p\nq\n");
    let cert = f.path("cert.json");
    let o = aldlf(&["eval", "-f", "<p> q", "--trace", &t, "--certificate-out", &cert]);
    assert_eq!(o.status.code(), Some(0));
    let o = aldlf(&["verify", "-f", "<p> q", "--trace", &t, "--certificate", &cert]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "valid\n".into()));
    let other = f.put("t2", "p\n-\n");
    let o = aldlf(&["verify", "-f", "<p> q", "--trace", &other, "--certificate", &cert]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid (condition"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["compile", "-f", "<(p ; q)* + back(r)> [{p}?] q", "--format", "json"];
    assert_eq!(stdout(&aldlf(&args)), stdout(&aldlf(&args)));
    let args = ["sat", "-f", "<true ; true> (p & <back(q)> true)"];
    assert_eq!(stdout(&aldlf(&args)), stdout(&aldlf(&args)));
}
