use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::SyntaxError;

/// Binary connectives. `Or` and `Iff` are derived but kept as nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    /// Lattice (weak) conjunction `/\`.
    And,
    /// Strong conjunction `&`.
    StrongAnd,
    Implies,
    Or,
    Iff,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "/\\",
            BinOp::StrongAnd => "&",
            BinOp::Implies => "->",
            BinOp::Or => "\\/",
            BinOp::Iff => "<->",
        }
    }

    pub fn is_derived(self) -> bool {
        matches!(self, BinOp::Or | BinOp::Iff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnOp {
    /// Derived negation `~`.
    Not,
    /// Baaz delta `!`.
    Delta,
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Not => "~",
            UnOp::Delta => "!",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

/// Predicate name to arity.
pub type Signature = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropFormula {
    Var(String),
    Bot,
    Unary(UnOp, Box<PropFormula>),
    Binary(BinOp, Box<PropFormula>, Box<PropFormula>),
}

/// Predicate applied to individual variables (terms are variables only).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: &[&str]) -> Atom {
        Atom { predicate: predicate.into(), args: args.iter().map(|a| String::from(*a)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoFormula {
    Atom(Atom),
    Bot,
    Unary(UnOp, Box<FoFormula>),
    Binary(BinOp, Box<FoFormula>, Box<FoFormula>),
    Quant(Quantifier, String, Box<FoFormula>),
}

macro_rules! connective_builders {
    ($ty:ident) => {
        impl $ty {
            pub fn bin(op: BinOp, l: $ty, r: $ty) -> $ty {
                $ty::Binary(op, Box::new(l), Box::new(r))
            }
            pub fn and(self, r: $ty) -> $ty {
                $ty::bin(BinOp::And, self, r)
            }
            pub fn strong_and(self, r: $ty) -> $ty {
                $ty::bin(BinOp::StrongAnd, self, r)
            }
            pub fn implies(self, r: $ty) -> $ty {
                $ty::bin(BinOp::Implies, self, r)
            }
            pub fn or(self, r: $ty) -> $ty {
                $ty::bin(BinOp::Or, self, r)
            }
            pub fn iff(self, r: $ty) -> $ty {
                $ty::bin(BinOp::Iff, self, r)
            }
            #[allow(clippy::should_implement_trait)]
            pub fn not(self) -> $ty {
                $ty::Unary(UnOp::Not, Box::new(self))
            }
            pub fn delta(self) -> $ty {
                $ty::Unary(UnOp::Delta, Box::new(self))
            }
            /// `self & self`.
            pub fn square(self) -> $ty {
                self.clone().strong_and(self)
            }
            /// `self & … & self` (`n ≥ 1` factors, left-associated).
            pub fn power(self, n: usize) -> $ty {
                assert!(n >= 1, "power needs at least one factor");
                let mut acc = self.clone();
                for _ in 1..n {
                    acc = acc.strong_and(self.clone());
                }
                acc
            }
            /// Right-associated fold of `parts` with `op`; `None` if empty.
            pub fn fold_right(op: BinOp, parts: Vec<$ty>) -> Option<$ty> {
                let mut it = parts.into_iter().rev();
                let last = it.next()?;
                Some(it.fold(last, |acc, p| $ty::bin(op, p, acc)))
            }

            pub fn contains_delta(&self) -> bool {
                self.any_node(&mut |f| matches!(f, $ty::Unary(UnOp::Delta, _)))
            }

            /// Replaces `¬`, `∨`, `↔` by their definitions, everywhere.
            pub fn desugar(&self) -> $ty {
                self.rewrite(&mut |f| match f {
                    $ty::Unary(UnOp::Not, a) => Some((**a).clone().implies($ty::Bot)),
                    $ty::Binary(BinOp::Or, a, b) => {
                        let (a, b) = ((**a).clone(), (**b).clone());
                        let left = a.clone().implies(b.clone()).implies(b.clone());
                        let right = b.implies(a.clone()).implies(a);
                        Some(left.and(right))
                    }
                    $ty::Binary(BinOp::Iff, a, b) => {
                        let (a, b) = ((**a).clone(), (**b).clone());
                        Some(a.clone().implies(b.clone()).and(b.implies(a)))
                    }
                    _ => None,
                })
            }

            /// Number of nodes.
            pub fn size(&self) -> usize {
                let mut n = 0;
                self.any_node(&mut |_| {
                    n += 1;
                    false
                });
                n
            }
        }
    };
}

connective_builders!(PropFormula);
connective_builders!(FoFormula);

impl PropFormula {
    pub fn var(name: impl Into<String>) -> PropFormula {
        PropFormula::Var(name.into())
    }

    /// Bottom-up rewrite: children first, then `f` may replace the node.
    pub fn rewrite(&self, f: &mut impl FnMut(&PropFormula) -> Option<PropFormula>) -> PropFormula {
        let rebuilt = match self {
            PropFormula::Var(_) | PropFormula::Bot => self.clone(),
            PropFormula::Unary(op, a) => PropFormula::Unary(*op, Box::new(a.rewrite(f))),
            PropFormula::Binary(op, a, b) => PropFormula::Binary(*op, Box::new(a.rewrite(f)), Box::new(b.rewrite(f))),
        };
        f(&rebuilt).unwrap_or(rebuilt)
    }

    /// Pre-order search; stops at the first node where `p` is true.
    pub fn any_node(&self, p: &mut impl FnMut(&PropFormula) -> bool) -> bool {
        if p(self) {
            return true;
        }
        match self {
            PropFormula::Var(_) | PropFormula::Bot => false,
            PropFormula::Unary(_, a) => a.any_node(p),
            PropFormula::Binary(_, a, b) => a.any_node(p) || b.any_node(p),
        }
    }

    /// Variables in first-occurrence order, without repeats.
    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.any_node(&mut |f| {
            if let PropFormula::Var(v) = f {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            false
        });
        out
    }

    /// Replaces every variable by the formula `f` returns for it.
    pub fn substitute(&self, f: &mut impl FnMut(&str) -> PropFormula) -> PropFormula {
        self.rewrite(&mut |node| match node {
            PropFormula::Var(v) => Some(f(v)),
            _ => None,
        })
    }
}

impl FoFormula {
    pub fn atom(predicate: &str, args: &[&str]) -> FoFormula {
        FoFormula::Atom(Atom::new(predicate, args))
    }

    pub fn forall(var: impl Into<String>, body: FoFormula) -> FoFormula {
        FoFormula::Quant(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: FoFormula) -> FoFormula {
        FoFormula::Quant(Quantifier::Exists, var.into(), Box::new(body))
    }

    /// Bottom-up rewrite: children first, then `f` may replace the node.
    pub fn rewrite(&self, f: &mut impl FnMut(&FoFormula) -> Option<FoFormula>) -> FoFormula {
        let rebuilt = match self {
            FoFormula::Atom(_) | FoFormula::Bot => self.clone(),
            FoFormula::Unary(op, a) => FoFormula::Unary(*op, Box::new(a.rewrite(f))),
            FoFormula::Binary(op, a, b) => FoFormula::Binary(*op, Box::new(a.rewrite(f)), Box::new(b.rewrite(f))),
            FoFormula::Quant(q, v, a) => FoFormula::Quant(*q, v.clone(), Box::new(a.rewrite(f))),
        };
        f(&rebuilt).unwrap_or(rebuilt)
    }

    /// Pre-order search; stops at the first node where `p` is true.
    pub fn any_node(&self, p: &mut impl FnMut(&FoFormula) -> bool) -> bool {
        if p(self) {
            return true;
        }
        match self {
            FoFormula::Atom(_) | FoFormula::Bot => false,
            FoFormula::Unary(_, a) | FoFormula::Quant(_, _, a) => a.any_node(p),
            FoFormula::Binary(_, a, b) => a.any_node(p) || b.any_node(p),
        }
    }

    /// Replaces every atom by the formula `f` returns for it.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> FoFormula) -> FoFormula {
        self.rewrite(&mut |node| match node {
            FoFormula::Atom(a) => Some(f(a)),
            _ => None,
        })
    }

    /// Atoms in first-occurrence order (repeats included).
    pub fn atoms(&self) -> Vec<&Atom> {
        fn walk<'a>(f: &'a FoFormula, out: &mut Vec<&'a Atom>) {
            match f {
                FoFormula::Atom(a) => out.push(a),
                FoFormula::Bot => {}
                FoFormula::Unary(_, a) | FoFormula::Quant(_, _, a) => walk(a, out),
                FoFormula::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Predicate names in first-occurrence order, without repeats.
    pub fn predicates(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for a in self.atoms() {
            if !out.contains(&a.predicate) {
                out.push(a.predicate.clone());
            }
        }
        out
    }

    /// Predicate arities; fails if a predicate is used with two arities.
    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::new();
        for a in self.atoms() {
            match sig.get(&a.predicate) {
                Some(&n) if n != a.args.len() => {
                    return Err(SyntaxError::InconsistentArity {
                        predicate: a.predicate.clone(),
                        first: n,
                        second: a.args.len(),
                    })
                }
                Some(_) => {}
                None => {
                    sig.insert(a.predicate.clone(), a.args.len());
                }
            }
        }
        Ok(sig)
    }

    /// Free variables in first-occurrence order, without repeats.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(f: &FoFormula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                FoFormula::Atom(a) => {
                    for v in &a.args {
                        if !bound.contains(v) && !out.contains(v) {
                            out.push(v.clone());
                        }
                    }
                }
                FoFormula::Bot => {}
                FoFormula::Unary(_, a) => walk(a, bound, out),
                FoFormula::Binary(_, a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                FoFormula::Quant(_, v, a) => {
                    bound.push(v.clone());
                    walk(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// `∀x₁ … ∀xₖ φ` over the free variables in first-occurrence order
    /// (`x₁` outermost). Closed formulas come back unchanged.
    pub fn universal_closure(&self) -> FoFormula {
        self.free_vars().into_iter().rev().fold(self.clone(), |acc, v| FoFormula::forall(v, acc))
    }

    /// Only atoms, `∧`, `∨`, `¬` and `∀`.
    pub fn is_classical(&self) -> bool {
        !self.any_node(&mut |f| {
            !matches!(
                f,
                FoFormula::Atom(_)
                    | FoFormula::Binary(BinOp::And | BinOp::Or, _, _)
                    | FoFormula::Unary(UnOp::Not, _)
                    | FoFormula::Quant(Quantifier::Forall, _, _)
            )
        })
    }

    /// Subformula occurrences in pre-order (the formula itself first).
    pub fn subformulas(&self) -> Vec<&FoFormula> {
        fn walk<'a>(f: &'a FoFormula, out: &mut Vec<&'a FoFormula>) {
            out.push(f);
            match f {
                FoFormula::Atom(_) | FoFormula::Bot => {}
                FoFormula::Unary(_, a) | FoFormula::Quant(_, _, a) => walk(a, out),
                FoFormula::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Renames free occurrences of `from` to `to`. `to` must not be captured.
    pub fn rename_free(&self, from: &str, to: &str) -> FoFormula {
        match self {
            FoFormula::Atom(a) => FoFormula::Atom(Atom {
                predicate: a.predicate.clone(),
                args: a.args.iter().map(|v| if v == from { String::from(to) } else { v.clone() }).collect(),
            }),
            FoFormula::Bot => FoFormula::Bot,
            FoFormula::Unary(op, a) => FoFormula::Unary(*op, Box::new(a.rename_free(from, to))),
            FoFormula::Binary(op, a, b) => {
                FoFormula::Binary(*op, Box::new(a.rename_free(from, to)), Box::new(b.rename_free(from, to)))
            }
            FoFormula::Quant(q, v, a) if v == from => FoFormula::Quant(*q, v.clone(), a.clone()),
            FoFormula::Quant(q, v, a) => FoFormula::Quant(*q, v.clone(), Box::new(a.rename_free(from, to))),
        }
    }

    /// Reads a first-order formula as propositional: nullary atoms become
    /// variables. Fails on quantifiers or predicates with arguments.
    pub fn to_prop(&self) -> Result<PropFormula, SyntaxError> {
        Ok(match self {
            FoFormula::Atom(a) if a.args.is_empty() => PropFormula::Var(a.predicate.clone()),
            FoFormula::Atom(a) => return Err(SyntaxError::NotPropositional(a.predicate.clone())),
            FoFormula::Bot => PropFormula::Bot,
            FoFormula::Unary(op, a) => PropFormula::Unary(*op, Box::new(a.to_prop()?)),
            FoFormula::Binary(op, a, b) => PropFormula::Binary(*op, Box::new(a.to_prop()?), Box::new(b.to_prop()?)),
            FoFormula::Quant(q, _, _) => return Err(SyntaxError::NotPropositional(String::from(q.keyword()))),
        })
    }
}

impl PropFormula {
    /// Variables become nullary atoms.
    pub fn to_fo(&self) -> FoFormula {
        match self {
            PropFormula::Var(v) => FoFormula::Atom(Atom { predicate: v.clone(), args: Vec::new() }),
            PropFormula::Bot => FoFormula::Bot,
            PropFormula::Unary(op, a) => FoFormula::Unary(*op, Box::new(a.to_fo())),
            PropFormula::Binary(op, a, b) => FoFormula::Binary(*op, Box::new(a.to_fo()), Box::new(b.to_fo())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(n: &str) -> PropFormula {
        PropFormula::var(n)
    }

    #[test]
    fn desugar_negation_and_disjunction() {
        assert_eq!(p("p").not().desugar(), p("p").implies(PropFormula::Bot));
        let expected = p("p").implies(p("q")).implies(p("q")).and(p("q").implies(p("p")).implies(p("p")));
        assert_eq!(p("p").or(p("q")).desugar(), expected);
        assert_eq!(PropFormula::Bot.desugar(), PropFormula::Bot);
        let iff = p("a").iff(p("b")).desugar();
        assert_eq!(iff, p("a").implies(p("b")).and(p("b").implies(p("a"))));
    }

    #[test]
    fn desugar_is_idempotent_and_removes_derived_nodes() {
        let f = p("a").or(p("b").not()).iff(p("c").delta());
        let once = f.desugar();
        assert_eq!(once.desugar(), once);
        assert!(!once.any_node(&mut |n| matches!(
            n,
            PropFormula::Unary(UnOp::Not, _) | PropFormula::Binary(BinOp::Or | BinOp::Iff, _, _)
        )));
    }

    #[test]
    fn closure_uses_first_occurrence_order() {
        let f = FoFormula::atom("P", &["x"]).implies(FoFormula::atom("Q", &["x"]));
        assert_eq!(f.universal_closure(), FoFormula::forall("x", f.clone()));
        let g = FoFormula::forall("x", FoFormula::atom("P", &["x"]));
        assert_eq!(g.universal_closure(), g);
        let r = FoFormula::atom("R", &["x", "y"]);
        assert_eq!(r.universal_closure(), FoFormula::forall("x", FoFormula::forall("y", r.clone())));
        assert!(r.universal_closure().is_closed());
    }

    #[test]
    fn free_vars_respect_binders() {
        let f = FoFormula::forall("x", FoFormula::atom("R", &["x", "y"])).and(FoFormula::atom("P", &["x"]));
        assert_eq!(f.free_vars(), vec![String::from("y"), String::from("x")]);
    }

    #[test]
    fn classical_fragment() {
        let px = FoFormula::atom("P", &["x"]);
        assert!(FoFormula::forall("x", px.clone().or(px.clone().not())).is_classical());
        assert!(!px.clone().strong_and(FoFormula::atom("Q", &["x"])).is_classical());
        assert!(!FoFormula::exists("x", px.clone()).is_classical());
        assert!(!px.clone().implies(px).is_classical());
    }

    #[test]
    fn inconsistent_arity_is_detected() {
        let f = FoFormula::atom("P", &["x"]).and(FoFormula::atom("P", &["x", "y"]));
        assert!(matches!(f.signature(), Err(SyntaxError::InconsistentArity { .. })));
    }

    #[test]
    fn rename_free_stops_at_binders() {
        let f = FoFormula::atom("P", &["x"]).and(FoFormula::forall("x", FoFormula::atom("P", &["x"])));
        let g = f.rename_free("x", "y");
        assert_eq!(g, FoFormula::atom("P", &["y"]).and(FoFormula::forall("x", FoFormula::atom("P", &["x"]))));
    }

    #[test]
    fn power_is_left_associated() {
        let x = p("x");
        assert_eq!(x.clone().power(3), x.clone().strong_and(x.clone()).strong_and(x));
    }
}
