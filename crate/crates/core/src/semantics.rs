//! Direct satisfaction relations over finite traces.
//!
//! This is the reference semantics every automaton construction in the crate
//! is checked against. Formulas are evaluated by structural recursion;
//! path automata by breadth-first reachability over (state, position) pairs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::syntax::{Formula, Interpretation, PathAutomaton, PropFormula, TransitionLabel};

/// A nonempty finite sequence of interpretations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trace {
    instants: Vec<Interpretation>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("traces must contain at least one instant")]
    EmptyTrace,
    #[error("position {position} is out of range for a trace of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}

impl Trace {
    pub fn new(instants: Vec<Interpretation>) -> Result<Self, SemanticsError> {
        if instants.is_empty() {
            return Err(SemanticsError::EmptyTrace);
        }
        Ok(Trace { instants })
    }

    /// Convenience constructor from atom-name slices.
    pub fn from_atoms(instants: &[&[&str]]) -> Result<Self, SemanticsError> {
        Trace::new(
            instants
                .iter()
                .map(|atoms| atoms.iter().map(|a| a.to_string()).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.instants.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.instants.is_empty()
    }

    pub fn instants(&self) -> &[Interpretation] {
        &self.instants
    }

    pub fn at(&self, position: usize) -> &Interpretation {
        &self.instants[position]
    }

    fn check(&self, position: usize) -> Result<(), SemanticsError> {
        if position < self.len() {
            Ok(())
        } else {
            Err(SemanticsError::PositionOutOfRange {
                position,
                len: self.len(),
            })
        }
    }
}

/// One instant per line, atoms separated by spaces, `-` for the empty set.
impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for instant in &self.instants {
            if instant.is_empty() {
                writeln!(f, "-")?;
            } else {
                let atoms: Vec<&str> = instant.iter().map(String::as_str).collect();
                writeln!(f, "{}", atoms.join(" "))?;
            }
        }
        Ok(())
    }
}

pub fn eval_prop(z: &PropFormula, interp: &Interpretation) -> bool {
    z.eval(interp)
}

/// `t, i ⊨ f`.
pub fn eval(f: &Formula, t: &Trace, i: usize) -> Result<bool, SemanticsError> {
    t.check(i)?;
    Ok(holds(f, t, i))
}

/// `t ⊨ f`, i.e. evaluation at position 0.
pub fn eval_trace(f: &Formula, t: &Trace) -> bool {
    holds(f, t, 0)
}

fn holds(f: &Formula, t: &Trace, i: usize) -> bool {
    match f {
        Formula::Prop(z) => z.eval(t.at(i)),
        Formula::Not(inner) => !holds(inner, t, i),
        Formula::And(lhs, rhs) => holds(lhs, t, i) && holds(rhs, t, i),
        Formula::Or(lhs, rhs) => holds(lhs, t, i) || holds(rhs, t, i),
        Formula::Diamond(a, body) => accepted_ends(a, t, i).into_iter().any(|j| holds(body, t, j)),
        Formula::Box(a, body) => accepted_ends(a, t, i).into_iter().all(|j| holds(body, t, j)),
    }
}

/// `t, i, j ⊨ a`: some walk of `a` from position `i` ends at `j` in an
/// accepting state.
pub fn sat_automaton(a: &PathAutomaton, t: &Trace, i: usize, j: usize) -> Result<bool, SemanticsError> {
    t.check(i)?;
    t.check(j)?;
    Ok(accepted_ends(a, t, i).contains(&j))
}

/// Successor of `(position)` along a label, if the label can fire there.
fn step(label: &TransitionLabel, t: &Trace, position: usize) -> Option<usize> {
    match label {
        TransitionLabel::Future(z) => (position + 1 < t.len() && z.eval(t.at(position))).then_some(position + 1),
        TransitionLabel::Past(z) => (position > 0 && z.eval(t.at(position))).then(|| position - 1),
        TransitionLabel::Test(psi) => holds(psi, t, position).then_some(position),
    }
}

/// Breadth-first search over (state, position); returns for each visited
/// pair the pair it was reached from and the label used.
fn explore(a: &PathAutomaton, t: &Trace, i: usize) -> Vec<Vec<Option<Parent>>> {
    let mut parent: Vec<Vec<Option<Parent>>> = vec![vec![None; t.len()]; a.state_count()];
    let mut queue = VecDeque::new();
    parent[a.start()][i] = Some(Parent::Root);
    queue.push_back((a.start(), i));
    while let Some((state, pos)) = queue.pop_front() {
        for (index, tr) in a.transitions().iter().enumerate() {
            if tr.from != state {
                continue;
            }
            if let Some(next) = step(&tr.label, t, pos) {
                if parent[tr.to][next].is_none() {
                    parent[tr.to][next] = Some(Parent::Via {
                        state,
                        position: pos,
                        transition: index,
                    });
                    queue.push_back((tr.to, next));
                }
            }
        }
    }
    parent
}

#[derive(Clone, Copy, Debug)]
enum Parent {
    Root,
    Via {
        state: usize,
        position: usize,
        transition: usize,
    },
}

fn accepted_ends(a: &PathAutomaton, t: &Trace, i: usize) -> BTreeSet<usize> {
    let visited = explore(a, t, i);
    let visited = &visited;
    a.accepting()
        .iter()
        .flat_map(|&g| (0..t.len()).filter(move |&j| visited[g][j].is_some()))
        .collect()
}

/// A witness for `t, i, j ⊨ a`: the labels taken and where each was read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, TransitionLabel)>,
    pub end: usize,
}

impl Walk {
    /// Replays the walk against the automaton and trace.
    pub fn is_valid_for(&self, a: &PathAutomaton, t: &Trace) -> bool {
        if self.start >= t.len() || self.end >= t.len() {
            return false;
        }
        let mut states: BTreeSet<usize> = BTreeSet::from([a.start()]);
        let mut position = self.start;
        for (at, label) in &self.steps {
            if *at != position {
                return false;
            }
            let Some(next) = step(label, t, position) else {
                return false;
            };
            states = a
                .transitions()
                .iter()
                .filter(|tr| states.contains(&tr.from) && &tr.label == label)
                .map(|tr| tr.to)
                .collect();
            position = next;
        }
        position == self.end && states.iter().any(|&s| a.is_accepting(s))
    }
}

/// A shortest walk from `i` to `j`, if one exists.
pub fn find_walk(a: &PathAutomaton, t: &Trace, i: usize, j: usize) -> Result<Option<Walk>, SemanticsError> {
    t.check(i)?;
    t.check(j)?;
    let visited = explore(a, t, i);
    // Among accepting states, pick the one whose pair was discovered first by
    // recounting the path length.
    let mut best: Option<Vec<(usize, TransitionLabel)>> = None;
    for &g in a.accepting() {
        if visited[g][j].is_none() {
            continue;
        }
        let mut steps = Vec::new();
        let (mut state, mut pos) = (g, j);
        while let Some(Parent::Via {
            state: from,
            position,
            transition,
        }) = visited[state][pos]
        {
            steps.push((position, a.transitions()[transition].label.clone()));
            state = from;
            pos = position;
        }
        steps.reverse();
        if best.as_ref().is_none_or(|b| steps.len() < b.len()) {
            best = Some(steps);
        }
    }
    Ok(best.map(|steps| Walk { start: i, steps, end: j }))
}
