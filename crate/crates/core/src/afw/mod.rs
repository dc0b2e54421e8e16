//! Two-way alternating automata on finite words: positive Boolean
//! transitions, compilation from formulas, and acceptance via a Büchi game.

mod automaton;
mod game;
mod posbool;

pub use automaton::{compile_formula, Afw, Boundary, CompileError};
pub use game::{accepts_game, build_game, solve_buchi_game, GameGraph, GameNode, Player};
pub use posbool::{minimal_models, Model, Move, PosBool};
