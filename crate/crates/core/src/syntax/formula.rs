use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::automaton::{PathAutomaton, TransitionLabel};
use super::prop::PropFormula;

/// An automata linear dynamic logic formula.
///
/// Subterms are reference counted so that closure computations and
/// re-rootings can share structure freely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(PropFormula),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    /// `<U> φ`: some accepted walk of `U` ends where `φ` holds.
    Diamond(PathAutomaton, Arc<Formula>),
    /// `[U] φ`: every accepted walk of `U` ends where `φ` holds.
    Box(PathAutomaton, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Prop(PropFormula::atom(name))
    }

    pub fn tt() -> Self {
        Formula::Prop(PropFormula::True)
    }

    pub fn ff() -> Self {
        Formula::Prop(PropFormula::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Self {
        Formula::Not(Arc::new(inner))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn diamond(automaton: PathAutomaton, body: Formula) -> Self {
        Formula::Diamond(automaton, Arc::new(body))
    }

    pub fn boxed(automaton: PathAutomaton, body: Formula) -> Self {
        Formula::Box(automaton, Arc::new(body))
    }

    /// Atoms occurring anywhere in the formula, including labels and tests.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(z) => z.collect_atoms(out),
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::And(lhs, rhs) | Formula::Or(lhs, rhs) => {
                lhs.collect_atoms(out);
                rhs.collect_atoms(out);
            }
            Formula::Diamond(a, body) | Formula::Box(a, body) => {
                for t in a.transitions() {
                    match &t.label {
                        TransitionLabel::Future(z) | TransitionLabel::Past(z) => z.collect_atoms(out),
                        TransitionLabel::Test(psi) => psi.collect_atoms(out),
                    }
                }
                body.collect_atoms(out);
            }
        }
    }

    /// True when every negation, including those inside tests and labels,
    /// is applied directly to an atom.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Prop(z) => z.is_nnf(),
            Formula::Not(inner) => matches!(&**inner, Formula::Prop(PropFormula::Atom(_))),
            Formula::And(lhs, rhs) | Formula::Or(lhs, rhs) => lhs.is_nnf() && rhs.is_nnf(),
            Formula::Diamond(a, body) | Formula::Box(a, body) => {
                body.is_nnf()
                    && a.transitions().iter().all(|t| match &t.label {
                        TransitionLabel::Future(z) | TransitionLabel::Past(z) => z.is_nnf(),
                        TransitionLabel::Test(psi) => psi.is_nnf(),
                    })
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Prop(z @ (PropFormula::And(..) | PropFormula::Or(..))) => {
                if matches!(z, PropFormula::Or(..)) {
                    1
                } else {
                    2
                }
            }
            _ => 3,
        }
    }
}

/// Human-readable rendering; automata are shown inline and are not
/// re-parseable (use the front-end printer for that).
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, inner: &Formula, min: u8| {
            if inner.precedence() < min {
                write!(f, "({inner})")
            } else {
                write!(f, "{inner}")
            }
        };
        match self {
            Formula::Prop(z) => write!(f, "{z}"),
            Formula::Not(inner) => {
                write!(f, "!")?;
                child(f, inner, 3)
            }
            Formula::And(lhs, rhs) => {
                child(f, lhs, 2)?;
                write!(f, " & ")?;
                child(f, rhs, 3)
            }
            Formula::Or(lhs, rhs) => {
                child(f, lhs, 1)?;
                write!(f, " | ")?;
                child(f, rhs, 2)
            }
            Formula::Diamond(a, body) => {
                write!(f, "<{a}> ")?;
                child(f, body, 3)
            }
            Formula::Box(a, body) => {
                write!(f, "[{a}] ")?;
                child(f, body, 3)
            }
        }
    }
}
