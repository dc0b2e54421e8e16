//! Concrete syntax: formulas, path expressions, LTLf, automaton
//! definitions and traces.

mod defs;
mod lexer;
mod ltlf;
mod parser;
mod printer;
mod regex;
mod trace;

pub use defs::{parse_formula, Definitions};
pub use lexer::{is_ident, SyntaxError};
pub use ltlf::{eval_ltlf, ltlf_to_aldlf, next_automaton, until_automaton, LtlfFormula};
pub use parser::{parse_formula_with, parse_ltlf, parse_path_expression, parse_prop};
pub use printer::{print_formula, print_prop, Printed};
pub use regex::{regex_to_automaton, PathExpression};
pub use trace::parse_trace;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FrontendError {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("unknown automaton @{0}")]
    UnknownAutomaton(String),
    #[error("{line}:{column}: unknown automaton @{name}")]
    UnresolvedAutomaton { name: String, line: usize, column: usize },
    #[error("definitions: {0}")]
    Definitions(String),
    #[error("trace line {line}: {message}")]
    Trace { line: usize, message: String },
    #[error("empty trace")]
    EmptyTrace,
}

impl From<SyntaxError> for FrontendError {
    fn from(e: SyntaxError) -> Self {
        FrontendError::Syntax(e)
    }
}
