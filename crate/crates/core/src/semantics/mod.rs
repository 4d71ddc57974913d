//! Evaluation over chains and finite models.
//!
//! Domains are `{1, …, n}`. Tables are stored tuple-major in lexicographic
//! order (first argument most significant). When models are enumerated the
//! cells of all tables are laid out one after another, predicates sorted by
//! name, and the cell vector runs through `values` like an odometer whose
//! last cell moves fastest. That order is what "first model" means
//! everywhere in the crate.

mod eval;
mod model;

use alloc::collections::BTreeMap;
use alloc::string::String;

use thiserror::Error;

use crate::syntax::SyntaxError;

pub use eval::{eval_fo, eval_prop, is_taut_prop, FoProgram, PropProgram, TautCheck};
pub use model::{enumerate_models, tuples, CellLayout, Model, ModelIter, Odometer, Table};

/// Individual variable ↦ domain element (`1..=n`).
pub type Valuation = BTreeMap<String, usize>;

/// Propositional variable ↦ chain value.
pub type Assignment<E> = BTreeMap<String, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for propositional variable {0}")]
    MissingVariable(String),
    #[error("formula uses Δ but the chain has no δ")]
    NoDelta,
    #[error("model does not match the formula's signature: {0}")]
    SignatureMismatch(String),
    #[error("free variable {0} is not bound by the valuation")]
    UnboundVariable(String),
    #[error("variable {var} is mapped to {value}, outside the domain 1..{size}")]
    OutOfDomain { var: String, value: usize, size: usize },
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("table for {predicate} has {found} cells, expected {expected}")]
    BadTable { predicate: String, expected: usize, found: usize },
    #[error("value set is empty")]
    NoValues,
    #[error("enumeration of {count} cases exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("operation needs a finite carrier")]
    Unsupported,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn count_cases(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn check_cap(base: usize, exp: usize, cap: u128) -> Result<u128, EvalError> {
    let count = count_cases(base, exp);
    if count > cap {
        return Err(EvalError::CapExceeded { count, cap });
    }
    Ok(count)
}
