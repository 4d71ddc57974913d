use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_cap, Assignment, CellLayout, EvalError, Model, Odometer, Valuation};
use crate::algebra::Algebra;
use crate::syntax::{BinOp, FoFormula, PropFormula, Quantifier, UnOp};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    /// Propositional variable, read straight from the cell vector.
    Cell(usize),
    /// Predicate cells start at `offset`; `args` are variable slots.
    Atom {
        offset: usize,
        args: Vec<usize>,
    },
    Bot,
    Unary(UnOp, Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Quant(Quantifier, usize, Box<Node>),
}

struct Ctx<'a, A: Algebra> {
    alg: &'a A,
    bot: A::Elem,
    top: A::Elem,
    n: usize,
}

impl<A: Algebra> Ctx<'_, A> {
    fn eval(&self, node: &Node, cells: &[A::Elem], env: &mut [usize]) -> A::Elem {
        match node {
            Node::Cell(i) => cells[*i].clone(),
            Node::Atom { offset, args } => {
                let mut idx = 0;
                for &s in args {
                    idx = idx * self.n + env[s];
                }
                cells[offset + idx].clone()
            }
            Node::Bot => self.bot.clone(),
            Node::Unary(UnOp::Not, a) => self.alg.neg(&self.eval(a, cells, env)),
            Node::Unary(UnOp::Delta, a) => self.alg.delta(&self.eval(a, cells, env)),
            Node::Binary(op, a, b) => {
                let l = self.eval(a, cells, env);
                match op {
                    BinOp::And => {
                        if l == self.bot {
                            return l;
                        }
                        l.min(self.eval(b, cells, env))
                    }
                    BinOp::StrongAnd => {
                        if l == self.bot {
                            return l;
                        }
                        self.alg.star(&l, &self.eval(b, cells, env))
                    }
                    BinOp::Or => {
                        if l == self.top {
                            return l;
                        }
                        l.max(self.eval(b, cells, env))
                    }
                    BinOp::Implies => {
                        if l == self.bot {
                            return self.top.clone();
                        }
                        self.alg.residuum(&l, &self.eval(b, cells, env))
                    }
                    BinOp::Iff => {
                        let r = self.eval(b, cells, env);
                        self.alg.residuum(&l, &r).min(self.alg.residuum(&r, &l))
                    }
                }
            }
            Node::Quant(q, slot, body) => {
                let saved = env[*slot];
                let (mut acc, stop) = match q {
                    Quantifier::Forall => (self.top.clone(), &self.bot),
                    Quantifier::Exists => (self.bot.clone(), &self.top),
                };
                for d in 0..self.n {
                    env[*slot] = d;
                    let v = self.eval(body, cells, env);
                    acc = match q {
                        Quantifier::Forall => acc.min(v),
                        Quantifier::Exists => acc.max(v),
                    };
                    if acc == *stop {
                        break;
                    }
                }
                env[*slot] = saved;
                acc
            }
        }
    }
}

fn ctx<A: Algebra>(alg: &A, n: usize) -> Ctx<'_, A> {
    Ctx { alg, bot: alg.bottom(), top: alg.top(), n }
}

fn delta_ok<A: Algebra>(alg: &A, uses_delta: bool) -> Result<(), EvalError> {
    if uses_delta && !alg.has_delta() {
        Err(EvalError::NoDelta)
    } else {
        Ok(())
    }
}

/// A propositional formula compiled against its variables sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropProgram {
    root: Node,
    vars: Vec<String>,
    uses_delta: bool,
}

impl PropProgram {
    pub fn compile(formula: &PropFormula) -> PropProgram {
        let mut vars = formula.vars();
        vars.sort();
        fn go(f: &PropFormula, vars: &[String]) -> Node {
            match f {
                PropFormula::Var(v) => Node::Cell(vars.binary_search(v).expect("collected variable")),
                PropFormula::Bot => Node::Bot,
                PropFormula::Unary(op, a) => Node::Unary(*op, Box::new(go(a, vars))),
                PropFormula::Binary(op, a, b) => Node::Binary(*op, Box::new(go(a, vars)), Box::new(go(b, vars))),
            }
        }
        PropProgram { root: go(formula, &vars), uses_delta: formula.contains_delta(), vars }
    }

    /// Variables in slot order (sorted by name).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn uses_delta(&self) -> bool {
        self.uses_delta
    }

    /// Evaluates with `values[i]` assigned to `vars()[i]`. Δ is evaluated
    /// with the algebra's δ whether or not the chain advertises it.
    pub fn eval<A: Algebra>(&self, alg: &A, values: &[A::Elem]) -> A::Elem {
        ctx(alg, 0).eval(&self.root, values, &mut [])
    }

    pub fn values_from<E: Clone>(&self, assignment: &Assignment<E>) -> Result<Vec<E>, EvalError> {
        self.vars
            .iter()
            .map(|v| assignment.get(v).cloned().ok_or_else(|| EvalError::MissingVariable(v.clone())))
            .collect()
    }
}

/// A first-order formula compiled for one domain size: atoms index straight
/// into the flat cell vector of [`CellLayout`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoProgram {
    root: Node,
    slots: Vec<String>,
    free: Vec<String>,
    layout: CellLayout,
    uses_delta: bool,
}

impl FoProgram {
    pub fn compile(formula: &FoFormula, domain_size: usize) -> Result<FoProgram, EvalError> {
        let layout = CellLayout::new(&formula.signature()?, domain_size)?;
        let mut slots: Vec<String> = Vec::new();
        fn slot(slots: &mut Vec<String>, v: &str) -> usize {
            match slots.iter().position(|s| s == v) {
                Some(i) => i,
                None => {
                    slots.push(String::from(v));
                    slots.len() - 1
                }
            }
        }
        fn go(f: &FoFormula, layout: &CellLayout, slots: &mut Vec<String>) -> Node {
            match f {
                FoFormula::Atom(a) => {
                    let p = layout.index_of(&a.predicate).expect("predicate in signature");
                    let offset = layout.predicates()[p].2;
                    Node::Atom { offset, args: a.args.iter().map(|v| slot(slots, v)).collect() }
                }
                FoFormula::Bot => Node::Bot,
                FoFormula::Unary(op, a) => Node::Unary(*op, Box::new(go(a, layout, slots))),
                FoFormula::Binary(op, a, b) => {
                    Node::Binary(*op, Box::new(go(a, layout, slots)), Box::new(go(b, layout, slots)))
                }
                FoFormula::Quant(q, v, a) => {
                    let s = slot(slots, v);
                    Node::Quant(*q, s, Box::new(go(a, layout, slots)))
                }
            }
        }
        let root = go(formula, &layout, &mut slots);
        Ok(FoProgram { root, slots, free: formula.free_vars(), layout, uses_delta: formula.contains_delta() })
    }

    pub fn layout(&self) -> &CellLayout {
        &self.layout
    }

    pub fn domain_size(&self) -> usize {
        self.layout.domain_size()
    }

    pub fn uses_delta(&self) -> bool {
        self.uses_delta
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    /// Fails if the formula needs δ and the algebra lacks it.
    pub fn check_algebra<A: Algebra>(&self, alg: &A) -> Result<(), EvalError> {
        delta_ok(alg, self.uses_delta)
    }

    /// Variable environment (0-based domain elements, one per slot) for
    /// a valuation; free variables must be bound.
    pub fn env_for(&self, valuation: &Valuation) -> Result<Vec<usize>, EvalError> {
        let n = self.domain_size();
        let mut env = vec![0; self.slots.len()];
        for v in &self.free {
            let &d = valuation.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            if d == 0 || d > n {
                return Err(EvalError::OutOfDomain { var: v.clone(), value: d, size: n });
            }
            env[self.slot_of(v)] = d - 1;
        }
        Ok(env)
    }

    fn slot_of(&self, v: &str) -> usize {
        self.slots.iter().position(|s| s == v).expect("free variable has a slot")
    }

    /// Evaluates over a cell vector laid out by [`FoProgram::layout`].
    /// `env` holds 0-based elements for every slot (see [`FoProgram::env_for`]).
    pub fn eval_cells<A: Algebra>(&self, alg: &A, cells: &[A::Elem], env: &mut [usize]) -> A::Elem {
        ctx(alg, self.domain_size()).eval(&self.root, cells, env)
    }

    /// Evaluation of a closed formula (free variables read as element 1).
    pub fn eval_closed<A: Algebra>(&self, alg: &A, cells: &[A::Elem]) -> A::Elem {
        let mut env = vec![0; self.slots.len()];
        self.eval_cells(alg, cells, &mut env)
    }

    /// `‖φ‖` over `model` under `valuation`, with all checks.
    pub fn eval_model<A: Algebra>(
        &self,
        alg: &A,
        model: &Model<A::Elem>,
        valuation: &Valuation,
    ) -> Result<A::Elem, EvalError> {
        self.check_algebra(alg)?;
        let cells = self.layout.cells_of(model)?;
        let mut env = self.env_for(valuation)?;
        Ok(self.eval_cells(alg, &cells, &mut env))
    }
}

/// Value of a propositional formula under an assignment.
pub fn eval_prop<A: Algebra>(
    alg: &A,
    assignment: &Assignment<A::Elem>,
    formula: &PropFormula,
) -> Result<A::Elem, EvalError> {
    let prog = PropProgram::compile(formula);
    delta_ok(alg, prog.uses_delta)?;
    let values = prog.values_from(assignment)?;
    Ok(prog.eval(alg, &values))
}

/// `‖φ‖` over a finite model under a valuation of its free variables.
pub fn eval_fo<A: Algebra>(
    alg: &A,
    model: &Model<A::Elem>,
    valuation: &Valuation,
    formula: &FoFormula,
) -> Result<A::Elem, EvalError> {
    FoProgram::compile(formula, model.domain_size())?.eval_model(alg, model, valuation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TautCheck<E> {
    Tautology,
    /// The lexicographically first failing assignment (variables sorted by
    /// name, carrier ascending) and its value.
    Witness {
        assignment: Assignment<E>,
        value: E,
    },
}

impl<E> TautCheck<E> {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautCheck::Tautology)
    }
}

/// Whether `formula` evaluates to top under every assignment of carrier
/// values; at most `cap` assignments are tried.
pub fn is_taut_prop<A: Algebra>(alg: &A, formula: &PropFormula, cap: u128) -> Result<TautCheck<A::Elem>, EvalError> {
    let carrier = alg.carrier().ok_or(EvalError::Unsupported)?;
    let prog = PropProgram::compile(formula);
    delta_ok(alg, prog.uses_delta)?;
    let k = prog.vars.len();
    check_cap(carrier.len(), k, cap)?;
    let cx = ctx(alg, 0);
    let mut odo = Odometer::new(k, carrier.len());
    let mut values: Vec<A::Elem> = vec![carrier[0].clone(); k];
    loop {
        let v = cx.eval(&prog.root, &values, &mut []);
        if v != cx.top {
            let assignment = prog.vars.iter().cloned().zip(values).collect();
            return Ok(TautCheck::Witness { assignment, value: v });
        }
        match odo.advance() {
            None => return Ok(TautCheck::Tautology),
            Some(from) => {
                for (v, &d) in values[from..].iter_mut().zip(&odo.digits()[from..]) {
                    *v = carrier[d].clone();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{delta_expand, make_chain, Chain, Family};
    use crate::rational::ratio;
    use crate::syntax::{parse_fo, parse_prop};
    use crate::DEFAULT_CAP;

    fn l(n: usize) -> Chain {
        make_chain(Family::Lukasiewicz, n).unwrap()
    }

    fn assign(pairs: &[(&str, usize)]) -> Assignment<usize> {
        pairs.iter().map(|(v, x)| (String::from(*v), *x)).collect()
    }

    #[test]
    fn prop_examples() {
        let c = l(2);
        let f = parse_prop("p -> (p & p)").unwrap();
        assert_eq!(eval_prop(&c, &assign(&[("p", 1)]), &f).unwrap(), 1);
        let d = delta_expand(&c);
        assert_eq!(eval_prop(&d, &assign(&[("p", 1)]), &parse_prop("!p").unwrap()).unwrap(), 0);
        assert_eq!(eval_prop(&c, &assign(&[("p", 1)]), &parse_prop("!p").unwrap()), Err(EvalError::NoDelta));
        assert_eq!(eval_prop(&c, &assign(&[]), &f), Err(EvalError::MissingVariable(String::from("p"))));
    }

    #[test]
    fn prelinearity_everywhere() {
        let f = parse_prop("(p -> q) \\/ (q -> p)").unwrap();
        for c in [l(4), make_chain(Family::Nm, 5).unwrap(), make_chain(Family::Dp, 5).unwrap()] {
            assert!(is_taut_prop(&c, &f, DEFAULT_CAP).unwrap().is_tautology());
        }
    }

    #[test]
    fn excluded_middle() {
        let f = parse_prop("x \\/ ~x").unwrap();
        assert_eq!(
            is_taut_prop(&l(2), &f, DEFAULT_CAP).unwrap(),
            TautCheck::Witness { assignment: assign(&[("x", 1)]), value: 1 }
        );
        let b = make_chain(Family::Boolean, 0).unwrap();
        assert!(is_taut_prop(&b, &f, DEFAULT_CAP).unwrap().is_tautology());
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // fails whenever b > a; the first such assignment is a=0, b=1
        let f = parse_prop("b -> a").unwrap();
        match is_taut_prop(&l(3), &f, DEFAULT_CAP).unwrap() {
            TautCheck::Witness { assignment, .. } => {
                assert_eq!(assignment, assign(&[("a", 0), ("b", 1)]))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(is_taut_prop(&l(3), &f, 15), Err(EvalError::CapExceeded { count: 16, cap: 15 })));
    }

    #[test]
    fn forall_exists_over_l2() {
        let c = l(2);
        let mut m = Model::new(2).unwrap();
        // r_R = [[1, 0], [1/2, 1/2]]
        m.insert("R", 2, vec![2, 0, 1, 1]).unwrap();
        let f = parse_fo("forall x. exists y. R(x,y)").unwrap();
        let v = eval_fo(&c, &m, &Valuation::new(), &f).unwrap();
        assert_eq!(c.label(&v), ratio(1, 2));
    }

    #[test]
    fn single_element_domain() {
        let c = l(3);
        for t in 0..4 {
            let mut m = Model::new(1).unwrap();
            m.insert("P", 1, vec![t]).unwrap();
            assert_eq!(eval_fo(&c, &m, &Valuation::new(), &parse_fo("forall x. P(x)").unwrap()), Ok(t));
        }
    }

    #[test]
    fn valuation_errors() {
        let c = l(2);
        let mut m = Model::new(2).unwrap();
        m.insert("P", 1, vec![0, 2]).unwrap();
        let f = parse_fo("P(x)").unwrap();
        assert_eq!(eval_fo(&c, &m, &Valuation::new(), &f), Err(EvalError::UnboundVariable(String::from("x"))));
        let mut v = Valuation::new();
        v.insert(String::from("x"), 2);
        assert_eq!(eval_fo(&c, &m, &v, &f), Ok(2));
        v.insert(String::from("x"), 3);
        assert!(matches!(eval_fo(&c, &m, &v, &f), Err(EvalError::OutOfDomain { .. })));
        let g = parse_fo("Q(x)").unwrap();
        assert!(matches!(eval_fo(&c, &m, &v, &g), Err(EvalError::SignatureMismatch(_))));
    }

    #[test]
    fn bound_variable_shadows_valuation() {
        let c = l(2);
        let mut m = Model::new(2).unwrap();
        m.insert("P", 1, vec![0, 2]).unwrap();
        let f = parse_fo("P(x) /\\ exists x. P(x)").unwrap();
        let mut v = Valuation::new();
        v.insert(String::from("x"), 1);
        assert_eq!(eval_fo(&c, &m, &v, &f), Ok(0));
        v.insert(String::from("x"), 2);
        assert_eq!(eval_fo(&c, &m, &v, &f), Ok(2));
    }
}
