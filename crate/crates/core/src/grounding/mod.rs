//! Grounding first-order formulas over `{1..n}` into propositional ones.
//!
//! `P(j₁,…,j_s)` becomes the variable `p_P_j₁_…_j_s` (just `p_P` for a
//! nullary `P`), `∀` an `n`-fold `∧` and `∃` an `n`-fold `∨`, both folded
//! to the right with `i = 1..n`. Under the induced assignment
//! `p_P_j… ↦ r_P(j…)` the grounded formula has the same value as the
//! original over the model.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::semantics::{is_taut_prop, Assignment, EvalError, Model, TautCheck};
use crate::syntax::{BinOp, FoFormula, PropFormula, Quantifier, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundingError {
    #[error("formula has free variables: {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("variable name {name} stands for two different cells")]
    NameClash { name: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A model cell: predicate and 1-based tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub predicate: String,
    pub tuple: Vec<usize>,
}

/// Propositional variable naming the cell `predicate(tuple)`.
pub fn cell_name(predicate: &str, tuple: &[usize]) -> String {
    let mut s = format!("p_{predicate}");
    for j in tuple {
        s.push_str(&format!("_{j}"));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedFormula {
    pub formula: PropFormula,
    /// Variable name ↦ cell, for the variables that occur.
    pub legend: BTreeMap<String, Cell>,
    pub size: usize,
}

impl GroundedFormula {
    /// Writes the assignment's values back into `model`.
    pub fn apply<E: Clone>(&self, assignment: &Assignment<E>, model: &mut Model<E>) -> Result<(), EvalError> {
        for (name, cell) in &self.legend {
            if let Some(v) = assignment.get(name) {
                model.set(&cell.predicate, &cell.tuple, v.clone())?;
            }
        }
        Ok(())
    }
}

/// Grounds a closed formula over a domain of size `n`.
pub fn ground(formula: &FoFormula, n: usize) -> Result<GroundedFormula, GroundingError> {
    if n == 0 {
        return Err(GroundingError::EmptyDomain);
    }
    let free = formula.free_vars();
    if !free.is_empty() {
        return Err(GroundingError::NotClosed(free));
    }
    formula.signature()?;
    let mut legend = BTreeMap::new();
    let mut env = Vec::new();
    let out = go(formula, n, &mut env, &mut legend)?;
    Ok(GroundedFormula { formula: out, legend, size: n })
}

fn go(
    f: &FoFormula,
    n: usize,
    env: &mut Vec<(String, usize)>,
    legend: &mut BTreeMap<String, Cell>,
) -> Result<PropFormula, GroundingError> {
    Ok(match f {
        FoFormula::Atom(a) => {
            let tuple: Vec<usize> = a
                .args
                .iter()
                .map(|v| env.iter().rev().find(|(w, _)| w == v).map(|(_, j)| *j).expect("closed"))
                .collect();
            let name = cell_name(&a.predicate, &tuple);
            let cell = Cell { predicate: a.predicate.clone(), tuple };
            match legend.get(&name) {
                Some(existing) if *existing != cell => return Err(GroundingError::NameClash { name }),
                Some(_) => {}
                None => {
                    legend.insert(name.clone(), cell);
                }
            }
            PropFormula::Var(name)
        }
        FoFormula::Bot => PropFormula::Bot,
        FoFormula::Unary(op, a) => PropFormula::Unary(*op, alloc::boxed::Box::new(go(a, n, env, legend)?)),
        FoFormula::Binary(op, a, b) => {
            let l = go(a, n, env, legend)?;
            PropFormula::bin(*op, l, go(b, n, env, legend)?)
        }
        FoFormula::Quant(q, v, body) => {
            let mut parts = Vec::with_capacity(n);
            for i in 1..=n {
                env.push((v.clone(), i));
                parts.push(go(body, n, env, legend)?);
                env.pop();
            }
            let op = match q {
                Quantifier::Forall => BinOp::And,
                Quantifier::Exists => BinOp::Or,
            };
            PropFormula::fold_right(op, parts).expect("n >= 1")
        }
    })
}

/// `e_M`: every cell of the model under its grounding name.
pub fn induced_assignment<E: Clone>(model: &Model<E>) -> Assignment<E> {
    model.cells().map(|(p, t, v)| (cell_name(p, &t), v.clone())).collect()
}

/// Outcome of a bounded tautology check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<E> {
    /// Value top in every model of every size up to the bound.
    TautUpTo(usize),
    /// A model of the smallest failing size and the value there.
    Refuted { size: usize, model: Model<E>, value: E },
}

impl<E> Verdict<E> {
    pub fn is_taut(&self) -> bool {
        matches!(self, Verdict::TautUpTo(_))
    }

    /// Size of the refuting model, if any.
    pub fn refuted_at(&self) -> Option<usize> {
        match self {
            Verdict::TautUpTo(_) => None,
            Verdict::Refuted { size, .. } => Some(*size),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedReport<E> {
    /// The universal closure that was checked.
    pub closed: FoFormula,
    /// Variables the closure quantified (empty for closed input).
    pub closed_vars: Vec<String>,
    pub verdict: Verdict<E>,
    /// The failing assignment of the grounded formula.
    pub witness: Option<Assignment<E>>,
}

/// For `n = 1..=bound`, checks that the grounding of the universal closure
/// is a propositional tautology; stops at the first failing `n`. The
/// refuting model carries the witness values; cells the grounding does not
/// mention are set to bottom.
pub fn taut_upto_grounded<A: Algebra>(
    alg: &A,
    formula: &FoFormula,
    bound: usize,
    cap: u128,
) -> Result<GroundedReport<A::Elem>, GroundingError> {
    if bound == 0 {
        return Err(GroundingError::ZeroBound);
    }
    let closed_vars = formula.free_vars();
    let closed = formula.universal_closure();
    let sig = closed.signature()?;
    for n in 1..=bound {
        let g = ground(&closed, n)?;
        if let TautCheck::Witness { assignment, value } = is_taut_prop(alg, &g.formula, cap)? {
            let mut model = Model::constant(&sig, n, alg.bottom())?;
            g.apply(&assignment, &mut model)?;
            return Ok(GroundedReport {
                closed,
                closed_vars,
                verdict: Verdict::Refuted { size: n, model, value },
                witness: Some(assignment),
            });
        }
    }
    Ok(GroundedReport { closed, closed_vars, verdict: Verdict::TautUpTo(bound), witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_chain, Family};
    use crate::semantics::{eval_fo, eval_prop, Valuation};
    use crate::syntax::{parse_fo, parse_prop};
    use crate::DEFAULT_CAP;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn exists_inside_forall() {
        let g = ground(&parse_fo("forall x. exists y. R(x,y)").unwrap(), 2).unwrap();
        let expected = parse_prop("(p_R_1_1 \\/ p_R_1_2) /\\ (p_R_2_1 \\/ p_R_2_2)").unwrap();
        assert_eq!(g.formula, expected);
        assert_eq!(g.legend.len(), 4);
        assert_eq!(g.legend["p_R_2_1"], Cell { predicate: "R".into(), tuple: vec![2, 1] });
    }

    #[test]
    fn small_cases() {
        assert_eq!(ground(&parse_fo("forall x. P(x)").unwrap(), 1).unwrap().formula, PropFormula::var("p_P_1"));
        let g = ground(&parse_fo("forall x. !P(x)").unwrap(), 2).unwrap();
        assert_eq!(g.formula, parse_prop("!p_P_1 /\\ !p_P_2").unwrap());
        let g = ground(&parse_fo("forall x. forall y. forall z. R(x,y) -> S(z)").unwrap(), 3).unwrap();
        assert_eq!(g.formula.to_string().matches("/\\").count(), 2 + 3 * 2 + 9 * 2);
    }

    #[test]
    fn errors() {
        assert_eq!(ground(&parse_fo("P(x)").unwrap(), 2), Err(GroundingError::NotClosed(vec!["x".into()])));
        assert_eq!(ground(&parse_fo("bot").unwrap(), 0), Err(GroundingError::EmptyDomain));
        let clash = parse_fo("forall x. R_1(x) /\\ forall y. forall z. R(y,z)").unwrap();
        assert_eq!(ground(&clash, 1), Err(GroundingError::NameClash { name: "p_R_1_1".into() }));
    }

    #[test]
    fn induced_assignment_matches_evaluation() {
        let c = make_chain(Family::Lukasiewicz, 2).unwrap();
        let mut m = Model::new(2).unwrap();
        m.insert("R", 2, vec![2, 0, 1, 1]).unwrap();
        m.insert("Q", 0, vec![2]).unwrap();
        let e = induced_assignment(&m);
        assert_eq!(e["p_Q"], 2);
        assert_eq!(e["p_R_2_1"], 1);
        let f = parse_fo("forall x. exists y. R(x,y)").unwrap();
        let g = ground(&f, 2).unwrap();
        assert_eq!(eval_prop(&c, &e, &g.formula).unwrap(), 1);
        assert_eq!(eval_fo(&c, &m, &Valuation::new(), &f).unwrap(), 1);
    }

    #[test]
    fn bounded_checks() {
        let f = parse_fo("forall x. P(x) \\/ ~P(x)").unwrap();
        let b = make_chain(Family::Boolean, 0).unwrap();
        assert_eq!(taut_upto_grounded(&b, &f, 3, DEFAULT_CAP).unwrap().verdict, Verdict::TautUpTo(3));
        let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
        let r = taut_upto_grounded(&l2, &f, 3, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict.refuted_at(), Some(1));
        assert_eq!(r.witness.unwrap()["p_P_1"], 1);
        let open = parse_fo("P(x) \\/ ~P(x)").unwrap();
        let r2 = taut_upto_grounded(&l2, &open, 3, DEFAULT_CAP).unwrap();
        assert_eq!(r2.closed_vars, vec![String::from("x")]);
        assert_eq!(r2.verdict, taut_upto_grounded(&l2, &f, 3, DEFAULT_CAP).unwrap().verdict);
    }

    #[test]
    fn lifted_wnm_on_nm5() {
        let f = parse_fo("forall x. forall y. ~(P(x) & Q(y)) \\/ ((P(x) /\\ Q(y)) -> (P(x) & Q(y)))").unwrap();
        let c = make_chain(Family::Nm, 5).unwrap();
        assert_eq!(taut_upto_grounded(&c, &f, 2, DEFAULT_CAP).unwrap().verdict, Verdict::TautUpTo(2));
    }
}
