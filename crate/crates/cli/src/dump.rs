use std::collections::BTreeSet;
use std::fmt::Write;

use aldlf::afw::{Afw, Boundary, PosBool};
use aldlf::syntax::Interpretation;
use serde_json::{json, Value};

pub const MAX_ATOMS: usize = 6;

const PLACES: [(&str, Boundary); 4] = [
    ("interior", Boundary::INTERIOR),
    ("first", Boundary { first: true, last: false }),
    ("last", Boundary { first: false, last: true }),
    ("only", Boundary { first: true, last: true }),
];

struct Entry {
    state: usize,
    letter: Interpretation,
    place: &'static str,
    delta: PosBool,
}

fn ids(a: &Afw) -> Vec<String> {
    (0..a.state_count()).map(|q| format!("q{q}")).collect()
}

/// Interior entries for every state and letter, plus boundary entries where
/// they differ from the interior one.
fn entries(a: &Afw) -> Vec<Entry> {
    let mut out = Vec::new();
    for q in 0..a.state_count() {
        for letter in a.letters() {
            let interior = a.delta(q, &letter, Boundary::INTERIOR);
            for (place, at) in PLACES {
                let delta = a.delta(q, &letter, at);
                if place == "interior" || delta != interior {
                    out.push(Entry {
                        state: q,
                        letter: letter.clone(),
                        place,
                        delta,
                    });
                }
            }
        }
    }
    out
}

fn letter_text(l: &Interpretation) -> String {
    if l.is_empty() {
        "-".into()
    } else {
        l.iter().cloned().collect::<Vec<_>>().join(" ")
    }
}

fn describe(a: &Afw, q: usize) -> String {
    match a.formulas() {
        Some(fs) => fs[q].to_string(),
        None => a.state_name(q).to_string(),
    }
}

pub fn text(a: &Afw) -> String {
    let names = ids(a);
    let mut s = String::new();
    let atoms: Vec<&str> = a.atoms().iter().map(String::as_str).collect();
    writeln!(s, "atoms: {}", atoms.join(" ")).unwrap();
    writeln!(s, "start: q{}", a.start()).unwrap();
    let acc: Vec<&str> = a.accepting().iter().map(|&q| names[q].as_str()).collect();
    writeln!(s, "accepting: {}", acc.join(" ")).unwrap();
    writeln!(s, "states:").unwrap();
    for q in 0..a.state_count() {
        writeln!(s, "  q{q} = {}", describe(a, q)).unwrap();
    }
    writeln!(s, "delta:").unwrap();
    for e in entries(a) {
        let place = if e.place == "interior" { String::new() } else { format!(" @{}", e.place) };
        writeln!(s, "  q{} [{}]{place} -> {}", e.state, letter_text(&e.letter), e.delta.render(&names)).unwrap();
    }
    s
}

pub fn json(a: &Afw) -> Value {
    let names = ids(a);
    let states: Vec<Value> = (0..a.state_count())
        .map(|q| json!({ "id": names[q], "formula": describe(a, q), "accepting": a.is_accepting(q) }))
        .collect();
    let delta: Vec<Value> = entries(a)
        .into_iter()
        .map(|e| {
            json!({
                "state": names[e.state],
                "letter": e.letter,
                "position": e.place,
                "delta": e.delta.render(&names),
            })
        })
        .collect();
    json!({
        "atoms": a.atoms(),
        "start": names[a.start()],
        "accepting": a.accepting().iter().map(|&q| &names[q]).collect::<Vec<_>>(),
        "states": states,
        "delta": delta,
    })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per state; each interior `δ(q, letter)` becomes an edge to every
/// state it mentions, labelled with the letter and the formula. `True`
/// entries point at a shared `accept` node.
pub fn dot(a: &Afw) -> String {
    let names = ids(a);
    let mut s = String::from("digraph afw {\n  rankdir=LR;\n  node [shape=circle];\n");
    writeln!(s, "  init [shape=point];\n  init -> q{};", a.start()).unwrap();
    for q in 0..a.state_count() {
        let shape = if a.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(s, "  q{q} [shape={shape}, tooltip=\"{}\"];", escape(&describe(a, q))).unwrap();
    }
    let mut accept_used = false;
    for e in entries(a).into_iter().filter(|e| e.place == "interior") {
        let label = escape(&format!("{}: {}", letter_text(&e.letter), e.delta.render(&names)));
        if e.delta == PosBool::True {
            accept_used = true;
            writeln!(s, "  q{} -> accept [label=\"{label}\"];", e.state).unwrap();
        }
        let targets: BTreeSet<usize> = e.delta.moves().iter().map(|m| m.state).collect();
        for t in targets {
            writeln!(s, "  q{} -> q{t} [label=\"{label}\"];", e.state).unwrap();
        }
    }
    if accept_used {
        s.push_str("  accept [shape=box, label=\"true\"];\n");
    }
    s.push_str("}\n");
    s
}
