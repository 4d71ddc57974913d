//! Command line, file formats and verification suites on top of
//! `mtlfin-core`.

pub mod cli;
pub mod corpus;
pub mod formats;
pub mod generator;
pub mod parallel;
pub mod resolve;
pub mod suites;

use thiserror::Error;

use mtlfin_core::algebra::ChainError;
use mtlfin_core::grounding::GroundingError;
use mtlfin_core::reductions::ReductionError;
use mtlfin_core::search::SearchError;
use mtlfin_core::semantics::EvalError;
use mtlfin_core::syntax::SyntaxError;

pub use cli::run;

/// Anything that makes a command fail (exit code 2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Format(#[from] formats::FormatError),
    #[error("formula: {0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Grounding(#[from] GroundingError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}
