//! Formula and model translations between chains.
//!
//! The formula passes are pure rewrites. Model maps take a chain and a
//! model over it (cells are carrier indices).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{
    make_chain, named_identity, negation_profile, restrict, satisfies_identity, Algebra, Chain, ChainError, Family,
};
use crate::semantics::Model;
use crate::syntax::{Atom, BinOp, FoFormula, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula contains Δ")]
    ContainsDelta,
    #[error("formula is not classical (only atoms, ∧, ∨, ¬ and ∀ are allowed)")]
    NotClassical,
    #[error("chain {0} does not satisfy the wnm identity")]
    NotWnm(String),
    #[error("chain {0} is not an MV-chain (identity inv fails)")]
    NotMv(String),
    #[error("model value {value} is not an element of chain {chain}")]
    BadValue { value: usize, chain: String },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// `φ*`: atoms and implications squared with `&`, every other connective
/// and both quantifiers kept. Derived connectives are desugared first.
pub fn wnm_star(formula: &FoFormula) -> Result<FoFormula, ReductionError> {
    if formula.contains_delta() {
        return Err(ReductionError::ContainsDelta);
    }
    fn go(f: &FoFormula) -> FoFormula {
        match f {
            FoFormula::Atom(_) => f.clone().square(),
            FoFormula::Bot => FoFormula::Bot,
            FoFormula::Binary(BinOp::Implies, a, b) => go(a).implies(go(b)).square(),
            FoFormula::Binary(op, a, b) => FoFormula::bin(*op, go(a), go(b)),
            FoFormula::Unary(op, a) => FoFormula::Unary(*op, alloc::boxed::Box::new(go(a))),
            FoFormula::Quant(q, v, a) => FoFormula::Quant(*q, v.clone(), alloc::boxed::Box::new(go(a))),
        }
    }
    Ok(go(&formula.desugar()))
}

fn check_model(chain: &Chain, model: &Model<usize>) -> Result<(), ReductionError> {
    for (_, _, &v) in model.cells() {
        if v >= chain.size() {
            return Err(ReductionError::BadValue { value: v, chain: String::from(chain.name()) });
        }
    }
    Ok(())
}

fn require(chain: &Chain, identity: &str) -> Result<bool, ReductionError> {
    let id = named_identity(identity)?;
    Ok(satisfies_identity(chain, &id)?)
}

fn require_wnm(chain: &Chain) -> Result<(), ReductionError> {
    if require(chain, "wnm")? {
        Ok(())
    } else {
        Err(ReductionError::NotWnm(String::from(chain.name())))
    }
}

/// `M⁺`: cells outside `A⁺` become `0`.
pub fn model_plus(chain: &Chain, model: &Model<usize>) -> Result<Model<usize>, ReductionError> {
    require_wnm(chain)?;
    check_model(chain, model)?;
    let profile = negation_profile(chain);
    Ok(model.map(|&v| if profile.contains_positive(v) { v } else { 0 }))
}

/// The Gödel chain on `A⁺ ∪ {0}` of a WNM-chain, with original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GodelFragment {
    pub chain: Chain,
    /// Index in the fragment ↦ index in the original chain (increasing).
    pub embedding: Vec<usize>,
}

impl GodelFragment {
    /// `M′`: `M⁺` read through the inverse of the embedding.
    pub fn reinterpret(&self, model: &Model<usize>) -> Model<usize> {
        model.map(|v| self.embedding.iter().position(|e| e == v).unwrap_or(0))
    }
}

pub fn godel_fragment(chain: &Chain) -> Result<GodelFragment, ReductionError> {
    require_wnm(chain)?;
    let profile = negation_profile(chain);
    let mut embedding = Vec::with_capacity(profile.a_plus.len() + 1);
    embedding.push(0);
    embedding.extend(profile.a_plus.iter().copied().filter(|&x| x != 0));
    let sub = restrict(chain, &embedding)?;
    let name = format!("godel_fragment({})", chain.name());
    Ok(GodelFragment { chain: sub.with_name(name), embedding })
}

/// `PREDEF_P = ∀x₁…∀x_s ¬(P(x₁,…,x_s) ↔ ¬P(x₁,…,x_s))`.
pub fn predef_for(predicate: &str, arity: usize) -> FoFormula {
    let vars: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
    let args: Vec<&str> = vars.iter().map(String::as_str).collect();
    let p = FoFormula::atom(predicate, &args);
    let body = p.clone().iff(p.not()).not();
    vars.into_iter().rev().fold(body, |acc, v| FoFormula::forall(v, acc))
}

/// `PREDEF_φ`: the `∧` of `PREDEF_P` over the predicates of `φ` in
/// first-occurrence order (right-associated). A formula without atoms gets
/// `¬⊥`.
pub fn predef(formula: &FoFormula) -> Result<FoFormula, ReductionError> {
    if !formula.is_classical() {
        return Err(ReductionError::NotClassical);
    }
    let sig = formula.signature().map_err(|e| ChainError::InvalidParameter(format!("{e}")))?;
    let parts = formula.predicates().iter().map(|p| predef_for(p, sig[p])).collect();
    Ok(FoFormula::fold_right(BinOp::And, parts).unwrap_or_else(|| FoFormula::Bot.not()))
}

/// `¬PREDEF_φ ∨ (¬φ → φ)`.
pub fn luk_star(formula: &FoFormula) -> Result<FoFormula, ReductionError> {
    let pre = predef(formula)?;
    Ok(pre.not().or(formula.clone().not().implies(formula.clone())))
}

/// Two-valued model: `1` where the cell lies in `A⁺`, else `0`.
pub fn boolean_collapse(chain: &Chain, model: &Model<usize>) -> Result<Model<usize>, ReductionError> {
    if !require(chain, "inv")? {
        return Err(ReductionError::NotMv(String::from(chain.name())));
    }
    check_model(chain, model)?;
    let profile = negation_profile(chain);
    Ok(model.map(|&v| usize::from(profile.contains_positive(v))))
}

fn map_atoms_checked(formula: &FoFormula, f: impl Fn(FoFormula) -> FoFormula) -> FoFormula {
    formula.map_atoms(&mut |a: &Atom| f(FoFormula::Atom(a.clone())))
}

/// Every atom `α` becomes `¬¬α`.
pub fn double_neg(formula: &FoFormula) -> Result<FoFormula, ReductionError> {
    if formula.contains_delta() {
        return Err(ReductionError::ContainsDelta);
    }
    Ok(map_atoms_checked(formula, |a| a.not().not()))
}

/// Every atom `α` becomes `Δα`.
pub fn delta_guard(formula: &FoFormula) -> FoFormula {
    map_atoms_checked(formula, |a| FoFormula::Unary(UnOp::Delta, alloc::boxed::Box::new(a)))
}

/// The two-element chain, used as target of [`boolean_collapse`].
pub fn boolean() -> Chain {
    make_chain(Family::Boolean, 0).expect("boolean chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{delta_expand, make_wnm_chain, ordinal_sum};
    use crate::rational::ratio;
    use crate::semantics::{eval_fo, Valuation};
    use crate::syntax::parse_fo;
    use alloc::vec;

    fn fo(s: &str) -> FoFormula {
        parse_fo(s).unwrap()
    }

    fn unary(v: usize) -> Model<usize> {
        let mut m = Model::new(1).unwrap();
        m.insert("P", 1, vec![v]).unwrap();
        m
    }

    fn value(c: &Chain, m: &Model<usize>, f: &FoFormula) -> usize {
        eval_fo(c, m, &Valuation::new(), f).unwrap()
    }

    #[test]
    fn star_translation() {
        assert_eq!(wnm_star(&fo("P(x)")).unwrap(), fo("P(x) & P(x)"));
        assert_eq!(
            wnm_star(&fo("P(x) -> Q(x)")).unwrap(),
            fo("((P(x) & P(x)) -> (Q(x) & Q(x))) & ((P(x) & P(x)) -> (Q(x) & Q(x)))")
        );
        assert_eq!(wnm_star(&fo("forall x. P(x)")).unwrap(), fo("forall x. P(x) & P(x)"));
        assert_eq!(wnm_star(&fo("!P(x)")), Err(ReductionError::ContainsDelta));
        // negation is desugared, so its implication is squared too
        assert_eq!(wnm_star(&fo("~P")).unwrap(), fo("((P & P) -> bot) & ((P & P) -> bot)"));
    }

    #[test]
    fn plus_model() {
        let nm5 = make_chain(Family::Nm, 5).unwrap();
        assert_eq!(model_plus(&nm5, &unary(3)).unwrap(), unary(3));
        assert_eq!(model_plus(&nm5, &unary(2)).unwrap(), unary(0));
        assert_eq!(model_plus(&nm5, &unary(4)).unwrap(), unary(4));
        let l3 = make_chain(Family::Lukasiewicz, 3).unwrap();
        assert!(matches!(model_plus(&l3, &unary(1)), Err(ReductionError::NotWnm(_))));
    }

    #[test]
    fn fragments() {
        let nm5 = make_chain(Family::Nm, 5).unwrap();
        let g = godel_fragment(&nm5).unwrap();
        assert_eq!(g.embedding, vec![0, 3, 4]);
        assert_eq!(g.chain.labels(), &[ratio(0, 1), ratio(3, 4), ratio(1, 1)]);
        assert!(g.chain.is_isomorphic(&make_chain(Family::Godel, 3).unwrap()));
        let b = boolean();
        assert!(godel_fragment(&b).unwrap().chain.is_isomorphic(&b));
        let g4 = make_chain(Family::Godel, 4).unwrap();
        let f4 = godel_fragment(&g4).unwrap();
        assert_eq!(f4.embedding, vec![0, 1, 2, 3]);
        assert!(f4.chain.is_isomorphic(&g4));
        assert_eq!(g.reinterpret(&unary(3)), unary(1));
    }

    #[test]
    fn predef_shapes() {
        assert_eq!(predef(&fo("forall x. P(x)")).unwrap(), fo("forall x1. ~(P(x1) <-> ~P(x1))"));
        let two = predef(&fo("forall x. forall y. P(x) /\\ R(x,y)")).unwrap();
        assert_eq!(two, fo("(forall x1. ~(P(x1) <-> ~P(x1))) /\\ forall x1. forall x2. ~(R(x1,x2) <-> ~R(x1,x2))"));
        assert_eq!(predef(&fo("P(x) & Q(x)")), Err(ReductionError::NotClassical));
        let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
        assert_eq!(value(&l2, &unary(1), &predef(&fo("forall x. P(x)")).unwrap()), 0);
    }

    #[test]
    fn luk_star_values() {
        let f = fo("forall x. P(x) \\/ ~P(x)");
        let t = luk_star(&f).unwrap();
        let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
        assert_eq!(value(&l2, &unary(1), &t), 2);
        let b = boolean();
        let plain = f.clone().not().implies(f.clone());
        for v in 0..2 {
            assert_eq!(value(&b, &unary(v), &t), value(&b, &unary(v), &plain));
        }
    }

    #[test]
    fn collapse() {
        let l3 = make_chain(Family::Lukasiewicz, 3).unwrap();
        assert_eq!(boolean_collapse(&l3, &unary(2)).unwrap(), unary(1));
        let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
        assert_eq!(boolean_collapse(&l2, &unary(1)).unwrap(), unary(0));
        assert_eq!(boolean_collapse(&l2, &unary(2)).unwrap(), unary(1));
        let g3 = make_chain(Family::Godel, 3).unwrap();
        assert!(matches!(boolean_collapse(&g3, &unary(1)), Err(ReductionError::NotMv(_))));
    }

    #[test]
    fn double_negation() {
        assert_eq!(double_neg(&fo("P(x)")).unwrap(), fo("~~P(x)"));
        let g4 = make_chain(Family::Godel, 4).unwrap();
        assert_eq!(value(&g4, &unary(1), &double_neg(&fo("forall x. P(x)")).unwrap()), 3);
        let s =
            ordinal_sum(&make_chain(Family::Lukasiewicz, 2).unwrap(), &make_chain(Family::Godel, 2).unwrap()).unwrap();
        assert_eq!(value(&s, &unary(1), &double_neg(&fo("forall x. P(x)")).unwrap()), 1);
    }

    #[test]
    fn guard() {
        assert_eq!(delta_guard(&fo("P(x)")), fo("!P(x)"));
        let d = delta_expand(&make_chain(Family::Lukasiewicz, 2).unwrap());
        assert_eq!(value(&d, &unary(1), &delta_guard(&fo("forall x. P(x)"))), 0);
    }

    #[test]
    fn custom_wnm_fragment() {
        let c = make_wnm_chain(&[5, 3, 3, 2, 0, 0]).unwrap();
        let g = godel_fragment(&c).unwrap();
        assert_eq!(g.embedding, vec![0, 3, 4, 5]);
        assert!(g.chain.is_isomorphic(&make_chain(Family::Godel, 4).unwrap()));
    }
}
