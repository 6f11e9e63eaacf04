use thiserror::Error;

use crate::graph::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A node scheduled for deletion still has an incident host edge outside the match.
    #[error("dangling condition violated at host node `{node}`")]
    DanglingViolation { node: String },

    #[error("square does not commute")]
    NonCommuting,

    #[error("match violates a negative application condition")]
    NacViolated,

    #[error("morphism is not an injective total morphism: {0}")]
    NotInjective(String),

    #[error("invalid induced selection: {}", join(.0))]
    InvalidSelection(Vec<Diagnostic>),

    #[error("invalid base pre-match: {0}")]
    InvalidPreMatch(String),

    #[error("strategy argument mismatch: {0}")]
    StrategyArgumentMismatch(String),

    #[error("audit failure at `{element}`: {detail}")]
    AuditFailure { element: String, detail: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation failed: {}", join(.0))]
    Validation(Vec<Diagnostic>),
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
