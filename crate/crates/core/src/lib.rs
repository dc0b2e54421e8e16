//! Automata linear dynamic logic on finite traces.

pub mod afw;
pub mod frontend;
pub mod nfw;
pub mod semantics;
pub mod syntax;
