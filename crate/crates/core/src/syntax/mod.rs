//! Abstract syntax: propositional formulas, path automata and formulas,
//! together with normalization, size measures and the closure.

mod automaton;
mod formula;
mod normal;
mod prop;

pub use automaton::{validate_automaton, AutomatonDraft, PathAutomaton, Transition, TransitionLabel, Violation};
pub use formula::Formula;
pub use normal::{automaton_size, fischer_ladner_closure, formula_size, negated_nnf, to_nnf};
pub use prop::{Interpretation, PropFormula};
