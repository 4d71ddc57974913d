//! MTL-chains: finite tables, rational families and their constructions.

mod chain;
mod families;
pub mod identities;
mod profile;
mod rational_family;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use thiserror::Error;

use crate::rational::Rational;

pub use chain::{check_table, residuum_from_star, Chain, ChainReport, ChainTable, Law, Violation};
pub use families::{delta_expand, make_chain, make_wnm_chain, ordinal_sum, Family};
pub use identities::{named_identity, satisfies_identity, IDENTITY_NAMES};
pub use profile::{negation_profile, restrict, subchains, NegationProfile, MAX_SUBCHAIN_SIZE};
pub use rational_family::{RationalChain, RationalFamily};

/// A totally ordered residuated structure that formulas can be evaluated in.
///
/// Elements are ordered by `Ord`; lattice meet and join are `min`/`max`.
pub trait Algebra {
    type Elem: Clone + Ord + Debug;

    fn name(&self) -> &str;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn residuum(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn has_delta(&self) -> bool;

    /// `∼x = x ⇒ 0`.
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.residuum(x, &self.bottom())
    }

    /// Baaz delta: top on top, bottom everywhere else.
    fn delta(&self, x: &Self::Elem) -> Self::Elem {
        if *x == self.top() {
            self.top()
        } else {
            self.bottom()
        }
    }

    /// Rational label of an element.
    fn label(&self, x: &Self::Elem) -> Rational;

    /// Element carrying the given label, if it belongs to the carrier.
    fn element(&self, label: &Rational) -> Option<Self::Elem>;

    /// Whole carrier in ascending order, or `None` when it is infinite.
    fn carrier(&self) -> Option<Vec<Self::Elem>>;

    /// Hex digest identifying the algebra (table and Δ flag).
    fn fingerprint(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid negation: {0}")]
    InvalidNegation(String),
    #[error("star admits no residuum at x={x}, y={y}")]
    NoResiduum { x: usize, y: usize },
    #[error("chain violates {0}")]
    LawViolation(Violation),
    #[error("first summand is not an MV-chain (identity inv fails)")]
    NotAnMvChain,
    #[error("chain {0} does not satisfy the wnm identity")]
    NotWnm(String),
    #[error("operation needs a finite carrier")]
    Unsupported,
    #[error("chain has {0} elements, more than {1} supported by this operation")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Eval(#[from] crate::semantics::EvalError),
}
