use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::formula::Formula;
use super::prop::PropFormula;

/// Label of a path-automaton transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionLabel {
    /// Read the current instant with a propositional guard, then move right.
    Future(PropFormula),
    /// Read the current instant with a propositional guard, then move left.
    Past(PropFormula),
    /// Stay in place if the formula holds at the current instant.
    Test(Formula),
}

impl fmt::Display for TransitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionLabel::Future(z) => write!(f, "{z}"),
            TransitionLabel::Past(z) => write!(f, "back({z})"),
            TransitionLabel::Test(psi) => write!(f, "{{{psi}}}?"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub label: TransitionLabel,
    pub to: usize,
}

impl Transition {
    pub fn new(from: usize, label: TransitionLabel, to: usize) -> Self {
        Transition { from, label, to }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct AutomatonBody {
    states: Vec<String>,
    transitions: Vec<Transition>,
    accepting: BTreeSet<usize>,
}

/// A nondeterministic automaton over future, past and test labels.
///
/// The state set, transitions and accepting set are shared between all
/// re-rootings of the same automaton; only the start state differs. State
/// ids are positions in the ordered state list, so two automata are equal
/// exactly when their ordered state lists, transition sets, accepting sets
/// and start states coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathAutomaton {
    body: Arc<AutomatonBody>,
    start: usize,
}

/// A structural problem found by [`validate_automaton`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("isolated state {0}")]
    IsolatedState(String),
    #[error("start state {0} is not a declared state")]
    UnknownStart(String),
    #[error("accepting state {0} is not a declared state")]
    UnknownAccepting(String),
    #[error("transition references unknown state {0}")]
    UnknownTransitionState(String),
    #[error("state {0} declared more than once")]
    DuplicateState(String),
    #[error("automaton has no states")]
    NoStates,
}

impl PathAutomaton {
    /// Builds an automaton from index-based parts. Transitions are stored as a
    /// sorted set.
    pub fn new(
        states: Vec<String>,
        transitions: impl IntoIterator<Item = Transition>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self, Vec<Violation>> {
        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        transitions.sort();
        transitions.dedup();
        let draft = AutomatonDraft {
            start: states.get(start).cloned().unwrap_or_else(|| format!("#{start}")),
            accepting: accepting
                .into_iter()
                .map(|s| states.get(s).cloned().unwrap_or_else(|| format!("#{s}")))
                .collect(),
            transitions: transitions
                .iter()
                .map(|t| {
                    let name = |s: usize| states.get(s).cloned().unwrap_or_else(|| format!("#{s}"));
                    (name(t.from), t.label.clone(), name(t.to))
                })
                .collect(),
            states,
        };
        draft.build()
    }

    pub fn states(&self) -> &[String] {
        &self.body.states
    }

    pub fn state_count(&self) -> usize {
        self.body.states.len()
    }

    pub fn state_name(&self, id: usize) -> &str {
        &self.body.states[id]
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.body.states.iter().position(|s| s == name)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.body.transitions
    }

    pub fn transitions_from(&self, state: usize) -> impl Iterator<Item = &Transition> {
        self.body.transitions.iter().filter(move |t| t.from == state)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.body.accepting
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.body.accepting.contains(&state)
    }

    /// The same automaton with `start` as its start state.
    pub fn with_start(&self, start: usize) -> PathAutomaton {
        assert!(start < self.state_count(), "start state out of range");
        PathAutomaton {
            body: Arc::clone(&self.body),
            start,
        }
    }

    /// Every re-rooting of this automaton, in state order.
    pub fn rerootings(&self) -> impl Iterator<Item = PathAutomaton> + '_ {
        (0..self.state_count()).map(|s| self.with_start(s))
    }

    /// Test formulas occurring on transitions, in transition order.
    pub fn tests(&self) -> impl Iterator<Item = &Formula> {
        self.body.transitions.iter().filter_map(|t| match &t.label {
            TransitionLabel::Test(psi) => Some(psi),
            _ => None,
        })
    }

    /// Rewrites every label, keeping states, start and accepting set.
    pub fn map_labels(&self, mut f: impl FnMut(&TransitionLabel) -> TransitionLabel) -> PathAutomaton {
        let mut transitions: Vec<Transition> = self
            .body
            .transitions
            .iter()
            .map(|t| Transition::new(t.from, f(&t.label), t.to))
            .collect();
        transitions.sort();
        transitions.dedup();
        PathAutomaton {
            body: Arc::new(AutomatonBody {
                states: self.body.states.clone(),
                transitions,
                accepting: self.body.accepting.clone(),
            }),
            start: self.start,
        }
    }

    pub fn to_draft(&self) -> AutomatonDraft {
        AutomatonDraft {
            states: self.body.states.clone(),
            start: self.state_name(self.start).to_string(),
            accepting: self.body.accepting.iter().map(|&s| self.state_name(s).to_string()).collect(),
            transitions: self
                .body
                .transitions
                .iter()
                .map(|t| (self.state_name(t.from).to_string(), t.label.clone(), self.state_name(t.to).to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for PathAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.transitions().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -{}-> {}", self.state_name(t.from), t.label, self.state_name(t.to))?;
        }
        write!(f, "; start {}; accept", self.state_name(self.start))?;
        for &s in self.accepting() {
            write!(f, " {}", self.state_name(s))?;
        }
        write!(f, "}}")
    }
}

/// Name-based description of a path automaton, as read from a definitions file.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomatonDraft {
    pub states: Vec<String>,
    pub start: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<(String, TransitionLabel, String)>,
}

impl AutomatonDraft {
    pub fn build(&self) -> Result<PathAutomaton, Vec<Violation>> {
        validate_automaton(self)?;
        let id = |name: &str| self.states.iter().position(|s| s == name).unwrap();
        let mut transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|(from, label, to)| Transition::new(id(from), label.clone(), id(to)))
            .collect();
        transitions.sort();
        transitions.dedup();
        Ok(PathAutomaton {
            body: Arc::new(AutomatonBody {
                states: self.states.clone(),
                transitions,
                accepting: self.accepting.iter().map(|s| id(s)).collect(),
            }),
            start: id(&self.start),
        })
    }
}

/// Checks that every referenced state is declared and that no state is
/// isolated (each state must occur in some transition).
pub fn validate_automaton(draft: &AutomatonDraft) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if draft.states.is_empty() {
        violations.push(Violation::NoStates);
    }
    let mut seen = BTreeSet::new();
    for s in &draft.states {
        if !seen.insert(s.as_str()) {
            violations.push(Violation::DuplicateState(s.clone()));
        }
    }
    if !seen.contains(draft.start.as_str()) {
        violations.push(Violation::UnknownStart(draft.start.clone()));
    }
    for s in &draft.accepting {
        if !seen.contains(s.as_str()) {
            violations.push(Violation::UnknownAccepting(s.clone()));
        }
    }
    let mut touched = BTreeSet::new();
    for (from, _, to) in &draft.transitions {
        for s in [from, to] {
            if seen.contains(s.as_str()) {
                touched.insert(s.as_str());
            } else {
                violations.push(Violation::UnknownTransitionState(s.clone()));
            }
        }
    }
    for s in &draft.states {
        if !touched.contains(s.as_str()) {
            violations.push(Violation::IsolatedState(s.clone()));
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        violations.dedup();
        Err(violations)
    }
}
