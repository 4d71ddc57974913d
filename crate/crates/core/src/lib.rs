//! Finite-model reasoning for first-order logics over MTL-chains.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains the pure
//! algorithmic part of the workbench:
//!
//! - [`algebra`]: finite residuated chains, named families, ordinal sums,
//!   Δ-expansions, negation profiles and subalgebras.
//! - [`syntax`]: propositional and first-order formulas, parser and printer.
//! - [`semantics`]: evaluation over chains and finite models, model
//!   enumeration, propositional tautology checking.
//! - [`grounding`]: coding first-order formulas over size-`n` domains as
//!   propositional formulas, and the bounded tautology check built on it.
//! - [`reductions`]: formula and model translations between chains.
//! - [`search`]: bounded countermodel search with verifiable certificates.
//!
//! File formats, the command line and the verification suites live in the
//! `mtlfin` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod grounding;
pub mod rational;
pub mod reductions;
pub mod search;
pub mod semantics;
pub mod syntax;

pub use algebra::{Algebra, Chain, ChainTable, RationalChain};
pub use rational::Rational;
pub use semantics::{Assignment, Model, Valuation};
pub use syntax::{FoFormula, PropFormula, Signature};

/// Default upper bound on the number of models or assignments a single
/// enumeration may visit.
pub const DEFAULT_CAP: u128 = 200_000_000;
