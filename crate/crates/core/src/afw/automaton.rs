use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::posbool::PosBool;
use crate::syntax::{fischer_ladner_closure, negated_nnf, Formula, Interpretation, PropFormula, TransitionLabel};

/// Where a position sits within the word being read.
///
/// Compiled automata drop moves that would leave the word: a future step is
/// unavailable at the last position and a past step at the first, exactly as
/// in the path-automaton semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boundary {
    pub first: bool,
    pub last: bool,
}

impl Boundary {
    pub const INTERIOR: Boundary = Boundary {
        first: false,
        last: false,
    };

    pub fn at(position: usize, len: usize) -> Self {
        Boundary {
            first: position == 0,
            last: position + 1 == len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("formula is not in negation normal form: {0}")]
    NotNnf(String),
}

#[derive(Clone, Debug)]
enum Edge {
    Future(PropFormula, usize),
    Past(PropFormula, usize),
    /// Diamond: `(test, 0) & (next, 0)`; box: `(negated test, 0) | (next, 0)`.
    Test(usize, usize),
}

#[derive(Clone, Debug)]
enum Step {
    Leaf(PropFormula),
    NegAtom(String),
    And(usize, usize),
    Or(usize, usize),
    Diamond { body: Option<usize>, edges: Vec<Edge> },
    Box { body: Option<usize>, edges: Vec<Edge> },
}

#[derive(Clone, Debug)]
enum Rules {
    Compiled { formulas: Vec<Formula>, steps: Vec<Step> },
    /// Explicit table; missing entries are `False`.
    Table(BTreeMap<(usize, Interpretation), PosBool>),
}

/// A two-way alternating automaton on finite words over `2^atoms`.
#[derive(Clone, Debug)]
pub struct Afw {
    names: Vec<String>,
    atoms: BTreeSet<String>,
    start: usize,
    accepting: BTreeSet<usize>,
    rules: Rules,
}

impl Afw {
    /// An automaton given by an explicit transition table. Letters are
    /// restricted to `atoms` before lookup.
    pub fn from_table(
        names: Vec<String>,
        atoms: BTreeSet<String>,
        start: usize,
        accepting: BTreeSet<usize>,
        table: impl IntoIterator<Item = ((usize, Interpretation), PosBool)>,
    ) -> Self {
        let table = table
            .into_iter()
            .map(|((q, letter), b)| ((q, letter.intersection(&atoms).cloned().collect()), b))
            .collect();
        Afw {
            names,
            atoms,
            start,
            accepting,
            rules: Rules::Table(table),
        }
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    /// The formulas labelling the states of a compiled automaton.
    pub fn formulas(&self) -> Option<&[Formula]> {
        match &self.rules {
            Rules::Compiled { formulas, .. } => Some(formulas),
            Rules::Table(_) => None,
        }
    }

    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.atoms
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn final_flag(&self, q: usize) -> u8 {
        u8::from(self.is_accepting(q))
    }

    /// Every letter of `2^atoms`, in subset order of the sorted atom list.
    pub fn letters(&self) -> Vec<Interpretation> {
        let atoms: Vec<&String> = self.atoms.iter().collect();
        (0u64..1 << atoms.len())
            .map(|mask| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, a)| (*a).clone())
                    .collect()
            })
            .collect()
    }

    /// States that some transition may enter by moving left.
    pub fn backward_targets(&self) -> BTreeSet<usize> {
        match &self.rules {
            Rules::Compiled { steps, .. } => steps
                .iter()
                .flat_map(|s| match s {
                    Step::Diamond { edges, .. } | Step::Box { edges, .. } => edges.as_slice(),
                    _ => &[],
                })
                .filter_map(|e| match e {
                    Edge::Past(_, to) => Some(*to),
                    _ => None,
                })
                .collect(),
            Rules::Table(table) => table
                .values()
                .flat_map(|b| b.moves())
                .filter(|m| m.dir == -1)
                .map(|m| m.state)
                .collect(),
        }
    }

    /// `δ(q, letter)` at a position with the given boundary.
    pub fn delta(&self, q: usize, letter: &Interpretation, at: Boundary) -> PosBool {
        match &self.rules {
            Rules::Table(table) => {
                let key: Interpretation = letter.intersection(&self.atoms).cloned().collect();
                table.get(&(q, key)).cloned().unwrap_or(PosBool::False)
            }
            Rules::Compiled { steps, .. } => match &steps[q] {
                Step::Leaf(z) => constant(z.eval(letter)),
                Step::NegAtom(p) => constant(!letter.contains(p)),
                Step::And(l, r) => PosBool::and(PosBool::atom(*l, 0), PosBool::atom(*r, 0)),
                Step::Or(l, r) => PosBool::or(PosBool::atom(*l, 0), PosBool::atom(*r, 0)),
                Step::Diamond { body, edges } => PosBool::any(
                    body.map(|b| PosBool::atom(b, 0))
                        .into_iter()
                        .chain(edges.iter().filter_map(|e| edge_atom(e, letter, at, PosBool::and))),
                ),
                Step::Box { body, edges } => PosBool::all(
                    body.map(|b| PosBool::atom(b, 0))
                        .into_iter()
                        .chain(edges.iter().filter_map(|e| edge_atom(e, letter, at, PosBool::or))),
                ),
            },
        }
    }
}

fn constant(value: bool) -> PosBool {
    if value {
        PosBool::True
    } else {
        PosBool::False
    }
}

fn edge_atom(
    e: &Edge,
    letter: &Interpretation,
    at: Boundary,
    combine_test: fn(PosBool, PosBool) -> PosBool,
) -> Option<PosBool> {
    match e {
        Edge::Future(z, to) => (!at.last && z.eval(letter)).then(|| PosBool::atom(*to, 1)),
        Edge::Past(z, to) => (!at.first && z.eval(letter)).then(|| PosBool::atom(*to, -1)),
        Edge::Test(t, to) => Some(combine_test(PosBool::atom(*t, 0), PosBool::atom(*to, 0))),
    }
}

/// Compiles an NNF formula into a 2AFW whose states are its closure, with
/// the formula itself as the initial state and the box formulas accepting.
pub fn compile_formula(f: &Formula) -> Result<Afw, CompileError> {
    if !f.is_nnf() {
        return Err(CompileError::NotNnf(f.to_string()));
    }
    let formulas = fischer_ladner_closure(f);
    let index: HashMap<&Formula, usize> = formulas.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let id = |g: &Formula| -> usize {
        *index
            .get(g)
            .unwrap_or_else(|| panic!("closure is missing {g}"))
    };
    let mut steps = Vec::with_capacity(formulas.len());
    let mut accepting = BTreeSet::new();
    for (q, g) in formulas.iter().enumerate() {
        let step = match g {
            Formula::Prop(z) => Step::Leaf(z.clone()),
            Formula::Not(inner) => match &**inner {
                Formula::Prop(PropFormula::Atom(p)) => Step::NegAtom(p.clone()),
                _ => unreachable!("checked by is_nnf"),
            },
            Formula::And(l, r) => Step::And(id(l), id(r)),
            Formula::Or(l, r) => Step::Or(id(l), id(r)),
            Formula::Diamond(a, body) | Formula::Box(a, body) => {
                let is_box = matches!(g, Formula::Box(..));
                if is_box {
                    accepting.insert(q);
                }
                let rewrap = |start: usize| {
                    let rerooted = a.with_start(start);
                    if is_box {
                        Formula::Box(rerooted, body.clone())
                    } else {
                        Formula::Diamond(rerooted, body.clone())
                    }
                };
                let edges = a
                    .transitions_from(a.start())
                    .map(|t| {
                        let to = id(&rewrap(t.to));
                        match &t.label {
                            TransitionLabel::Future(z) => Edge::Future(z.clone(), to),
                            TransitionLabel::Past(z) => Edge::Past(z.clone(), to),
                            TransitionLabel::Test(psi) if is_box => Edge::Test(id(&negated_nnf(psi)), to),
                            TransitionLabel::Test(psi) => Edge::Test(id(psi), to),
                        }
                    })
                    .collect();
                let body = a.is_accepting(a.start()).then(|| id(body));
                if is_box {
                    Step::Box { body, edges }
                } else {
                    Step::Diamond { body, edges }
                }
            }
        };
        steps.push(step);
    }
    Ok(Afw {
        names: formulas.iter().map(|g| g.to_string()).collect(),
        atoms: f.atoms(),
        start: 0,
        accepting,
        rules: Rules::Compiled { formulas, steps },
    })
}
