//! Typed-graph rewriting in the double-pushout approach, extended with
//! effect-oriented rules: rules whose potential deletions and creations are
//! performed only where needed to reach the state described by their
//! right-hand side.

pub mod effect;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod matching;
pub mod rules;
pub mod semantics;

pub use error::{Error, Result};
