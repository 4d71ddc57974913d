//! Formulas over `{∧, &, →, ⊥}` with derived `¬, ∨, ↔`, quantifiers and Δ.
//!
//! ASCII grammar, loosest binding last:
//!
//! ```text
//! ~ !          negation, delta (prefix)
//! &            strong conjunction
//! /\           lattice conjunction
//! \/           disjunction
//! ->           implication (right-associative)
//! <->          biconditional
//! forall v. φ  exists v. φ   (body extends as far right as possible)
//! bot          falsum
//! ```
//!
//! The printer emits a fully parenthesized form that parses back to the
//! same tree. Unicode connectives (`¬ Δ ∧ ∨ → ↔ ⊥ ∀ ∃`) are accepted too.

mod formula;
mod parser;
mod print;

use alloc::string::String;

use thiserror::Error;

pub use formula::{Atom, BinOp, FoFormula, PropFormula, Quantifier, Signature, UnOp};
pub use parser::{parse_fo, parse_prop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("predicate {predicate} used with arity {first} and {second}")]
    InconsistentArity { predicate: String, first: usize, second: usize },
    #[error("`{0}` is not allowed in a propositional formula")]
    NotPropositional(String),
}
