use std::fmt;

use crate::semantics::{SemanticsError, Trace};
use crate::syntax::{Formula, PathAutomaton, PropFormula, Transition, TransitionLabel};

/// Linear temporal logic on finite traces with strong next and until.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LtlfFormula {
    Atom(String),
    True,
    False,
    Not(Box<LtlfFormula>),
    And(Box<LtlfFormula>, Box<LtlfFormula>),
    Or(Box<LtlfFormula>, Box<LtlfFormula>),
    Next(Box<LtlfFormula>),
    Until(Box<LtlfFormula>, Box<LtlfFormula>),
}

impl LtlfFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        LtlfFormula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: LtlfFormula) -> Self {
        LtlfFormula::Not(Box::new(f))
    }

    pub fn and(a: LtlfFormula, b: LtlfFormula) -> Self {
        LtlfFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: LtlfFormula, b: LtlfFormula) -> Self {
        LtlfFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn next(f: LtlfFormula) -> Self {
        LtlfFormula::Next(Box::new(f))
    }

    pub fn until(a: LtlfFormula, b: LtlfFormula) -> Self {
        LtlfFormula::Until(Box::new(a), Box::new(b))
    }

    /// Number of operators and leaves.
    pub fn size(&self) -> usize {
        match self {
            LtlfFormula::Atom(_) | LtlfFormula::True | LtlfFormula::False => 1,
            LtlfFormula::Not(f) | LtlfFormula::Next(f) => 1 + f.size(),
            LtlfFormula::And(a, b) | LtlfFormula::Or(a, b) | LtlfFormula::Until(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for LtlfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtlfFormula::Atom(a) => write!(f, "{a}"),
            LtlfFormula::True => write!(f, "true"),
            LtlfFormula::False => write!(f, "false"),
            LtlfFormula::Not(g) => write!(f, "!({g})"),
            LtlfFormula::And(a, b) => write!(f, "({a}) & ({b})"),
            LtlfFormula::Or(a, b) => write!(f, "({a}) | ({b})"),
            LtlfFormula::Next(g) => write!(f, "X ({g})"),
            LtlfFormula::Until(a, b) => write!(f, "({a}) U ({b})"),
        }
    }
}

pub fn eval_ltlf(f: &LtlfFormula, t: &Trace, i: usize) -> Result<bool, SemanticsError> {
    if i >= t.len() {
        return Err(SemanticsError::PositionOutOfRange {
            position: i,
            len: t.len(),
        });
    }
    Ok(holds(f, t, i))
}

fn holds(f: &LtlfFormula, t: &Trace, i: usize) -> bool {
    match f {
        LtlfFormula::Atom(a) => t.at(i).contains(a),
        LtlfFormula::True => true,
        LtlfFormula::False => false,
        LtlfFormula::Not(g) => !holds(g, t, i),
        LtlfFormula::And(a, b) => holds(a, t, i) && holds(b, t, i),
        LtlfFormula::Or(a, b) => holds(a, t, i) || holds(b, t, i),
        LtlfFormula::Next(g) => i + 1 < t.len() && holds(g, t, i + 1),
        LtlfFormula::Until(a, b) => (i..t.len())
            .find(|&j| holds(b, t, j))
            .is_some_and(|j| (i..j).all(|k| holds(a, t, k))),
    }
}

fn two_states() -> Vec<String> {
    vec!["r0".into(), "r1".into()]
}

/// `r0 --true--> r1`, accepting `r1`.
pub fn next_automaton() -> PathAutomaton {
    PathAutomaton::new(
        two_states(),
        [Transition::new(0, TransitionLabel::Future(PropFormula::True), 1)],
        0,
        [1],
    )
    .expect("valid")
}

/// `r0 --{hold}?--> r1 --true--> r0`, accepting `r0`.
pub fn until_automaton(hold: Formula) -> PathAutomaton {
    PathAutomaton::new(
        two_states(),
        [
            Transition::new(0, TransitionLabel::Test(hold), 1),
            Transition::new(1, TransitionLabel::Future(PropFormula::True), 0),
        ],
        0,
        [0],
    )
    .expect("valid")
}

pub fn ltlf_to_aldlf(f: &LtlfFormula) -> Formula {
    match f {
        LtlfFormula::Atom(a) => Formula::atom(a.clone()),
        LtlfFormula::True => Formula::tt(),
        LtlfFormula::False => Formula::ff(),
        LtlfFormula::Not(g) => Formula::not(ltlf_to_aldlf(g)),
        LtlfFormula::And(a, b) => Formula::and(ltlf_to_aldlf(a), ltlf_to_aldlf(b)),
        LtlfFormula::Or(a, b) => Formula::or(ltlf_to_aldlf(a), ltlf_to_aldlf(b)),
        LtlfFormula::Next(g) => Formula::diamond(next_automaton(), ltlf_to_aldlf(g)),
        LtlfFormula::Until(a, b) => Formula::diamond(until_automaton(ltlf_to_aldlf(a)), ltlf_to_aldlf(b)),
    }
}
