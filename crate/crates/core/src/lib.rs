//! Automaton groups and semigroups generated by finite Mealy machines:
//! graph automata, exact word problems, nuclei, fragile groups, trace
//! monoids and automata generated from Schreier graphs.

pub mod action;
pub mod caps;
pub mod error;
pub mod fixtures;
pub mod graphgroup;
pub mod mealy;
pub mod schreier;
pub mod symbol;
pub mod tracemonoid;
pub mod wordproblem;

pub use action::{GroupWord, Letter};
pub use caps::Caps;
pub use error::{Error, Result};
pub use graphgroup::{build_graph_automaton, OrientedGraph};
pub use mealy::{MealyAutomaton, Transition};
pub use symbol::Symbol;
