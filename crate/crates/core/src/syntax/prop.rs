use std::collections::BTreeSet;
use std::fmt;

/// A propositional interpretation: the set of atoms that hold at one instant.
pub type Interpretation = BTreeSet<String>;

/// Propositional formulas over named atoms.
///
/// Used for future/past labels of path automata and, after normalization,
/// as the leaves of full formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropFormula {
    True,
    False,
    Atom(String),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        PropFormula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: PropFormula) -> Self {
        PropFormula::Not(Box::new(inner))
    }

    pub fn and(lhs: PropFormula, rhs: PropFormula) -> Self {
        PropFormula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: PropFormula, rhs: PropFormula) -> Self {
        PropFormula::Or(Box::new(lhs), Box::new(rhs))
    }

    /// `interp ⊨ self` under the usual propositional semantics.
    pub fn eval(&self, interp: &Interpretation) -> bool {
        match self {
            PropFormula::True => true,
            PropFormula::False => false,
            PropFormula::Atom(name) => interp.contains(name),
            PropFormula::Not(inner) => !inner.eval(interp),
            PropFormula::And(lhs, rhs) => lhs.eval(interp) && rhs.eval(interp),
            PropFormula::Or(lhs, rhs) => lhs.eval(interp) || rhs.eval(interp),
        }
    }

    /// Atoms count 1 (as do `true`/`false`), connectives 3 plus their operands.
    pub fn size(&self) -> usize {
        match self {
            PropFormula::True | PropFormula::False | PropFormula::Atom(_) => 1,
            PropFormula::Not(inner) => 3 + inner.size(),
            PropFormula::And(lhs, rhs) | PropFormula::Or(lhs, rhs) => 3 + lhs.size() + rhs.size(),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            PropFormula::True | PropFormula::False => {}
            PropFormula::Atom(name) => {
                out.insert(name.clone());
            }
            PropFormula::Not(inner) => inner.collect_atoms(out),
            PropFormula::And(lhs, rhs) | PropFormula::Or(lhs, rhs) => {
                lhs.collect_atoms(out);
                rhs.collect_atoms(out);
            }
        }
    }

    /// Negation normal form: negations only in front of atoms, no negated constants.
    pub fn nnf(&self) -> PropFormula {
        match self {
            PropFormula::True | PropFormula::False | PropFormula::Atom(_) => self.clone(),
            PropFormula::Not(inner) => inner.negated_nnf(),
            PropFormula::And(lhs, rhs) => PropFormula::and(lhs.nnf(), rhs.nnf()),
            PropFormula::Or(lhs, rhs) => PropFormula::or(lhs.nnf(), rhs.nnf()),
        }
    }

    /// NNF of `¬self`.
    pub fn negated_nnf(&self) -> PropFormula {
        match self {
            PropFormula::True => PropFormula::False,
            PropFormula::False => PropFormula::True,
            PropFormula::Atom(_) => PropFormula::not(self.clone()),
            PropFormula::Not(inner) => inner.nnf(),
            PropFormula::And(lhs, rhs) => PropFormula::or(lhs.negated_nnf(), rhs.negated_nnf()),
            PropFormula::Or(lhs, rhs) => PropFormula::and(lhs.negated_nnf(), rhs.negated_nnf()),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            PropFormula::True | PropFormula::False | PropFormula::Atom(_) => true,
            PropFormula::Not(inner) => matches!(**inner, PropFormula::Atom(_)),
            PropFormula::And(lhs, rhs) | PropFormula::Or(lhs, rhs) => lhs.is_nnf() && rhs.is_nnf(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropFormula::Or(..) => 1,
            PropFormula::And(..) => 2,
            _ => 3,
        }
    }
}

/// Prints in the concrete syntax accepted by the parser (`!`, `&`, `|`).
impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, inner: &PropFormula, min: u8| {
            if inner.precedence() < min {
                write!(f, "({inner})")
            } else {
                write!(f, "{inner}")
            }
        };
        match self {
            PropFormula::True => write!(f, "true"),
            PropFormula::False => write!(f, "false"),
            PropFormula::Atom(name) => write!(f, "{name}"),
            PropFormula::Not(inner) => {
                write!(f, "!")?;
                child(f, inner, 3)
            }
            PropFormula::And(lhs, rhs) => {
                child(f, lhs, 2)?;
                write!(f, " & ")?;
                child(f, rhs, 3)
            }
            PropFormula::Or(lhs, rhs) => {
                child(f, lhs, 1)?;
                write!(f, " | ")?;
                child(f, rhs, 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interp(atoms: &[&str]) -> Interpretation {
        atoms.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn evaluation() {
        let p = PropFormula::atom("p");
        let q = PropFormula::atom("q");
        assert!(p.eval(&interp(&["p"])));
        assert!(PropFormula::not(p.clone()).eval(&interp(&[])));
        assert!(!PropFormula::and(p, q).eval(&interp(&["p"])));
    }

    #[test]
    fn nnf_pushes_negation_to_atoms() {
        let p = PropFormula::atom("p");
        let q = PropFormula::atom("q");
        let f = PropFormula::not(PropFormula::or(p.clone(), PropFormula::not(q.clone())));
        let n = f.nnf();
        assert!(n.is_nnf());
        assert_eq!(n, PropFormula::and(PropFormula::not(p), q));
        assert_eq!(PropFormula::not(PropFormula::True).nnf(), PropFormula::False);
    }

    #[test]
    fn display_keeps_grouping() {
        let p = PropFormula::atom("p");
        let q = PropFormula::atom("q");
        let f = PropFormula::and(PropFormula::or(p.clone(), q.clone()), PropFormula::not(p));
        assert_eq!(f.to_string(), "(p | q) & !p");
    }
}
