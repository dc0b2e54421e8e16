//! Sizes, negation normal form and the Fischer-Ladner closure.

use std::collections::HashSet;
use std::sync::Arc;

use super::automaton::{PathAutomaton, TransitionLabel};
use super::formula::Formula;
use super::prop::PropFormula;

/// Formula size: atoms count 1, negation and binary connectives add 3,
/// modalities add 4 plus the number of automaton states. Test formulas
/// inside an automaton are not counted.
pub fn formula_size(f: &Formula) -> usize {
    match f {
        Formula::Prop(z) => z.size(),
        Formula::Not(inner) => 3 + formula_size(inner),
        Formula::And(lhs, rhs) | Formula::Or(lhs, rhs) => 3 + formula_size(lhs) + formula_size(rhs),
        Formula::Diamond(a, body) | Formula::Box(a, body) => 4 + a.state_count() + formula_size(body),
    }
}

/// Number of transitions.
pub fn automaton_size(a: &PathAutomaton) -> usize {
    a.transitions().len()
}

/// Negation normal form.
///
/// Propositional payloads are lifted to formula-level connectives, so the
/// result only contains `Prop` leaves that are atoms or constants, and `Not`
/// only in front of an atom. Tests and labels are normalized recursively.
pub fn to_nnf(f: &Formula) -> Formula {
    match f {
        Formula::Prop(z) => lift(z),
        Formula::Not(inner) => negated_nnf(inner),
        Formula::And(lhs, rhs) => Formula::and(to_nnf(lhs), to_nnf(rhs)),
        Formula::Or(lhs, rhs) => Formula::or(to_nnf(lhs), to_nnf(rhs)),
        Formula::Diamond(a, body) => Formula::diamond(nnf_automaton(a), to_nnf(body)),
        Formula::Box(a, body) => Formula::boxed(nnf_automaton(a), to_nnf(body)),
    }
}

/// NNF of `¬f`.
pub fn negated_nnf(f: &Formula) -> Formula {
    match f {
        Formula::Prop(z) => lift_negated(z),
        Formula::Not(inner) => to_nnf(inner),
        Formula::And(lhs, rhs) => Formula::or(negated_nnf(lhs), negated_nnf(rhs)),
        Formula::Or(lhs, rhs) => Formula::and(negated_nnf(lhs), negated_nnf(rhs)),
        Formula::Diamond(a, body) => Formula::boxed(nnf_automaton(a), negated_nnf(body)),
        Formula::Box(a, body) => Formula::diamond(nnf_automaton(a), negated_nnf(body)),
    }
}

fn lift(z: &PropFormula) -> Formula {
    match z {
        PropFormula::True | PropFormula::False | PropFormula::Atom(_) => Formula::Prop(z.clone()),
        PropFormula::Not(inner) => lift_negated(inner),
        PropFormula::And(lhs, rhs) => Formula::and(lift(lhs), lift(rhs)),
        PropFormula::Or(lhs, rhs) => Formula::or(lift(lhs), lift(rhs)),
    }
}

fn lift_negated(z: &PropFormula) -> Formula {
    match z {
        PropFormula::True => Formula::ff(),
        PropFormula::False => Formula::tt(),
        PropFormula::Atom(_) => Formula::not(Formula::Prop(z.clone())),
        PropFormula::Not(inner) => lift(inner),
        PropFormula::And(lhs, rhs) => Formula::or(lift_negated(lhs), lift_negated(rhs)),
        PropFormula::Or(lhs, rhs) => Formula::and(lift_negated(lhs), lift_negated(rhs)),
    }
}

fn nnf_automaton(a: &PathAutomaton) -> PathAutomaton {
    a.map_labels(|label| match label {
        TransitionLabel::Future(z) => TransitionLabel::Future(z.nnf()),
        TransitionLabel::Past(z) => TransitionLabel::Past(z.nnf()),
        TransitionLabel::Test(psi) => TransitionLabel::Test(to_nnf(psi)),
    })
}

/// Fischer-Ladner closure, in discovery order with `f` first.
///
/// Besides the usual rules (subformulas, all re-rootings of a modality and
/// the tests of its automaton), every test `ψ?` of a box modality also
/// contributes `nnf(¬ψ)`, which the box transition refers to.
pub fn fischer_ladner_closure(f: &Formula) -> Vec<Formula> {
    let mut seen: HashSet<Formula> = HashSet::new();
    let mut order = Vec::new();
    let mut work = vec![f.clone()];
    while let Some(g) = work.pop() {
        if !seen.insert(g.clone()) {
            continue;
        }
        order.push(g.clone());
        let mut next: Vec<Formula> = Vec::new();
        match &g {
            Formula::Prop(_) => {}
            Formula::Not(inner) => {
                if !matches!(&**inner, Formula::Not(_)) {
                    next.push((**inner).clone());
                }
            }
            Formula::And(lhs, rhs) | Formula::Or(lhs, rhs) => {
                next.push((**lhs).clone());
                next.push((**rhs).clone());
            }
            Formula::Diamond(a, body) => {
                next.push((**body).clone());
                for rerooted in a.rerootings() {
                    next.push(Formula::Diamond(rerooted, Arc::clone(body)));
                }
                next.extend(a.tests().cloned());
            }
            Formula::Box(a, body) => {
                next.push((**body).clone());
                for rerooted in a.rerootings() {
                    next.push(Formula::Box(rerooted, Arc::clone(body)));
                }
                for psi in a.tests() {
                    next.push(psi.clone());
                    next.push(negated_nnf(psi));
                }
            }
        }
        // Reverse so that the first pushed successor is explored first.
        work.extend(next.into_iter().rev());
    }
    order
}
