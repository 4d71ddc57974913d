//! Bounded countermodel search, certificates, and lifting propositional
//! formulas to first-order ones.
//!
//! The search closes the formula, then walks domain sizes `1..=max` and,
//! within a size, models in canonical order. The first model whose value is
//! below top is returned, so the answer does not depend on how the index
//! range is split between workers (see [`SearchSpace::scan`]).

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::grounding::Verdict;
use crate::rational::Rational;
use crate::semantics::{check_cap, EvalError, FoProgram, Model, Odometer, Valuation};
use crate::syntax::{FoFormula, PropFormula, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("certificate is for chain {expected}, but the given chain hashes to {found}")]
    HashMismatch { expected: String, found: String },
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// A finite countermodel with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub chain_name: String,
    pub fingerprint: String,
    /// The closed formula that was refuted.
    pub formula: FoFormula,
    pub model: Model<Rational>,
    /// Empty for closed formulas.
    pub valuation: Valuation,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Full carrier searched up to the bound without a countermodel.
    TautUpTo(usize),
    /// A proper subset of the carrier (a grid) searched without result;
    /// says nothing about tautologyhood.
    Inconclusive(usize),
}

/// All models of one domain size with cells from a fixed value list.
#[derive(Debug, Clone)]
pub struct SearchSpace<E> {
    program: FoProgram,
    values: Vec<E>,
    count: u128,
}

impl<E: Clone + Ord> SearchSpace<E> {
    /// `formula` must be closed.
    pub fn new(formula: &FoFormula, n: usize, values: &[E], cap: u128) -> Result<SearchSpace<E>, EvalError> {
        if values.is_empty() {
            return Err(EvalError::NoValues);
        }
        let program = FoProgram::compile(formula, n)?;
        let count = check_cap(values.len(), program.layout().len(), cap)?;
        Ok(SearchSpace { program, values: values.to_vec(), count })
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn program(&self) -> &FoProgram {
        &self.program
    }

    pub fn model_at(&self, index: u128) -> Model<E> {
        let odo = Odometer::at(index, self.program.layout().len(), self.values.len());
        let cells: Vec<E> = odo.digits().iter().map(|&d| self.values[d].clone()).collect();
        self.program.layout().model_from_cells(&cells)
    }

    /// First index in `range` whose model evaluates below top, with the value.
    pub fn scan<A: Algebra<Elem = E>>(&self, alg: &A, range: Range<u128>) -> Option<(u128, E)> {
        let range = range.start..range.end.min(self.count);
        if range.is_empty() {
            return None;
        }
        let len = self.program.layout().len();
        let mut odo = Odometer::at(range.start, len, self.values.len());
        let mut cells: Vec<E> = odo.digits().iter().map(|&d| self.values[d].clone()).collect();
        let top = alg.top();
        let mut index = range.start;
        loop {
            let v = self.program.eval_closed(alg, &cells);
            if v != top {
                return Some((index, v));
            }
            index += 1;
            if index >= range.end {
                return None;
            }
            let from = odo.advance().expect("index below count");
            for (c, &d) in cells[from..].iter_mut().zip(&odo.digits()[from..]) {
                *c = self.values[d].clone();
            }
        }
    }
}

fn covers_carrier<A: Algebra>(alg: &A, values: &[A::Elem]) -> bool {
    match alg.carrier() {
        None => false,
        Some(carrier) => {
            let mut v = values.to_vec();
            v.sort();
            v.dedup();
            v == carrier
        }
    }
}

/// Checks the requirements shared by every search entry point and returns
/// the closed formula.
pub fn prepare_search<A: Algebra>(alg: &A, formula: &FoFormula, max_size: usize) -> Result<FoFormula, SearchError> {
    if max_size == 0 {
        return Err(SearchError::ZeroBound);
    }
    formula.signature()?;
    if formula.contains_delta() && !alg.has_delta() {
        return Err(EvalError::NoDelta.into());
    }
    Ok(formula.universal_closure())
}

/// Builds the certificate for a model found by a search.
pub fn certificate<A: Algebra>(alg: &A, closed: &FoFormula, model: &Model<A::Elem>, value: &A::Elem) -> Certificate {
    Certificate {
        chain_name: String::from(alg.name()),
        fingerprint: alg.fingerprint(),
        formula: closed.clone(),
        model: model.map(|x| alg.label(x)),
        valuation: Valuation::new(),
        value: alg.label(value),
    }
}

/// Outcome when nothing was found: complete only over the full carrier.
pub fn exhausted<A: Algebra>(alg: &A, values: &[A::Elem], max_size: usize) -> SearchOutcome {
    if covers_carrier(alg, values) {
        SearchOutcome::TautUpTo(max_size)
    } else {
        SearchOutcome::Inconclusive(max_size)
    }
}

/// First countermodel of the universal closure of `formula` with domain
/// size at most `max_size` and cells from `values`. `cap` bounds the
/// number of models of each size.
pub fn find_countermodel<A: Algebra>(
    alg: &A,
    formula: &FoFormula,
    max_size: usize,
    values: &[A::Elem],
    cap: u128,
) -> Result<SearchOutcome, SearchError> {
    let closed = prepare_search(alg, formula, max_size)?;
    for n in 1..=max_size {
        let space = SearchSpace::new(&closed, n, values, cap)?;
        if let Some((i, v)) = space.scan(alg, 0..space.count()) {
            return Ok(SearchOutcome::Found(certificate(alg, &closed, &space.model_at(i), &v)));
        }
    }
    Ok(exhausted(alg, values, max_size))
}

/// Re-evaluates the certificate on `alg`. A certificate for another chain
/// is an error; a wrong value, a value at top or a model value outside the
/// carrier gives `false`.
pub fn verify_certificate<A: Algebra>(alg: &A, cert: &Certificate) -> Result<bool, SearchError> {
    let found = alg.fingerprint();
    if found != cert.fingerprint {
        return Err(SearchError::HashMismatch { expected: cert.fingerprint.clone(), found });
    }
    let Some(model) = cert.model.try_map(|r| alg.element(r)) else {
        return Ok(false);
    };
    let program = FoProgram::compile(&cert.formula, model.domain_size())?;
    let v = program.eval_model(alg, &model, &cert.valuation)?;
    Ok(v != alg.top() && alg.label(&v) == cert.value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectReport<E> {
    pub closed: FoFormula,
    pub closed_vars: Vec<String>,
    pub verdict: Verdict<E>,
}

/// Bounded tautology check by evaluating the closure over every model of
/// size `1..=bound` with cells from the whole carrier.
pub fn taut_upto_direct<A: Algebra>(
    alg: &A,
    formula: &FoFormula,
    bound: usize,
    cap: u128,
) -> Result<DirectReport<A::Elem>, SearchError> {
    let carrier = alg.carrier().ok_or(EvalError::Unsupported)?;
    let closed = prepare_search(alg, formula, bound)?;
    for n in 1..=bound {
        let space = SearchSpace::new(&closed, n, &carrier, cap)?;
        if let Some((i, value)) = space.scan(alg, 0..space.count()) {
            return Ok(DirectReport {
                closed_vars: formula.free_vars(),
                closed,
                verdict: Verdict::Refuted { size: n, model: space.model_at(i), value },
            });
        }
    }
    Ok(DirectReport { closed_vars: formula.free_vars(), closed, verdict: Verdict::TautUpTo(bound) })
}

/// The `i`-th variable (first-occurrence order) becomes `Pi(xi)`; the
/// result is universally closed.
pub fn lift_prop(formula: &PropFormula) -> FoFormula {
    let vars = formula.vars();
    let lifted = formula.substitute(&mut |v| {
        let i = vars.iter().position(|w| w == v).expect("collected variable") + 1;
        PropFormula::var(alloc::format!("P{i}"))
    });
    let fo = lifted.to_fo().map_atoms(&mut |a| {
        let i = &a.predicate[1..];
        let x = alloc::format!("x{i}");
        FoFormula::atom(&a.predicate, &[x.as_str()])
    });
    fo.universal_closure()
}
