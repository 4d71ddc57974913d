//! Named verification suites. Each one checks a semantic identity from the
//! theory on a fixed corpus or on seeded random cases and reports every
//! mismatch with enough context to reproduce it.
//!
//! Cases run in parallel; results are merged by case index, so reports are
//! identical for any worker count.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use mtlfin_core::algebra::{
    delta_expand, make_chain, make_wnm_chain, named_identity, negation_profile, ordinal_sum, satisfies_identity,
    subchains, Chain, Family, NegationProfile, RationalChain, RationalFamily,
};
use mtlfin_core::grounding::{ground, induced_assignment, taut_upto_grounded};
use mtlfin_core::rational::{format_rational, unit_grid};
use mtlfin_core::reductions::{
    boolean, boolean_collapse, delta_guard, double_neg, godel_fragment, luk_star, predef, wnm_star,
};
use mtlfin_core::search::{find_countermodel, lift_prop, taut_upto_direct, verify_certificate, SearchOutcome};
use mtlfin_core::semantics::{eval_fo, eval_prop, is_taut_prop, FoProgram, Odometer, PropProgram};
use mtlfin_core::syntax::parse_prop;
use mtlfin_core::{Algebra, FoFormula, Model, Rational, Valuation, DEFAULT_CAP};

use crate::corpus::{classical_corpus, fo_corpus};
use crate::formats::write_model;
use crate::generator::{case_rng, random_cells, random_formula, GenConfig};

pub const SUITE_NAMES: [&str; 16] = [
    "residuation",
    "lemma-tr",
    "lemma-clos",
    "lemma-gc",
    "lemma-gc1",
    "lemma-pred",
    "lemma-luk1",
    "lemma-luk",
    "thm41-smtl",
    "thm41-bl",
    "thm415-delta",
    "formula-f",
    "fo-axioms",
    "divisibility",
    "oracle-agreement",
    "thm413-demo",
];

/// One-line description per suite, for `--help`-style listings.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "residuation" => "chain laws and the residuation biconditional for every shipped family",
        "lemma-tr" => "first-order value equals the value of the grounding under the induced assignment",
        "lemma-clos" => "value of the universal closure is the minimum over valuations",
        "lemma-gc" => "WNM star translation: same value over M and M+, value in A+ or 0",
        "lemma-gc1" => "WNM star translation agrees with the Godel fragment over M'",
        "lemma-pred" => "PREDEF is valuation-uniform and rules out fixpoint subformula values",
        "lemma-luk1" => "under PREDEF, membership in A+ matches truth in the Boolean collapse",
        "lemma-luk" => "luk_star over MV-chains is tautological exactly when the formula is classically",
        "thm41-smtl" => "double negation reduces SMTL chains to Boolean at each bound",
        "thm41-bl" => "double negation over L2+G2 matches L2 at each bound",
        "thm415-delta" => "delta guard reduces Delta-chains to the Boolean Delta-chain at each bound",
        "formula-f" => "formula (f) holds in a Delta-expansion iff the chain has no negation fixpoint",
        "fo-axioms" => "quantifier axiom instances evaluate to top in small models of small chains",
        "divisibility" => "subchains of L_n are exactly L_d for d dividing n",
        "oracle-agreement" => "grounded and direct bounded tautology checks agree",
        "thm413-demo" => "propositional gap between L2 and L3 lifts to a first-order gap",
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Random cases for suites that sample formulas.
    pub trials: usize,
    pub seed: u64,
    /// Depth bound for random formulas.
    pub depth: usize,
    /// Sampled models per random formula.
    pub samples: usize,
    /// Enumeration cap per domain size.
    pub cap: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 200, seed: 0, depth: 4, samples: 8, cap: DEFAULT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub chain: String,
    pub formula: String,
    pub model: Option<Model<Rational>>,
    pub valuation: Valuation,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Individual comparisons made across all cases.
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub wall: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} cases, {} checks, {} failures ({:.2} s)\n",
            self.name,
            self.cases,
            self.checks,
            self.failures.len(),
            self.wall.as_secs_f64()
        );
        for f in &self.failures {
            let _ = writeln!(out, "FAIL chain {} formula {}", f.chain, f.formula);
            if !f.valuation.is_empty() {
                let _ = writeln!(out, "  valuation {}", valuation_text(&f.valuation));
            }
            let _ = writeln!(out, "  expected {}", f.expected);
            let _ = writeln!(out, "  got      {}", f.got);
            if let Some(m) = &f.model {
                for line in write_model(m).lines() {
                    let _ = writeln!(out, "  | {line}");
                }
            }
        }
        out
    }

    /// Line-oriented form without timing, so it is stable across runs.
    pub fn to_machine(&self) -> String {
        let mut out = String::from("mtlsuite 1\n");
        let _ = writeln!(out, "suite {}", self.name);
        let _ = writeln!(out, "cases {}", self.cases);
        let _ = writeln!(out, "checks {}", self.checks);
        let _ = writeln!(out, "failures {}", self.failures.len());
        for f in &self.failures {
            out.push_str("begin failure\n");
            let _ = writeln!(out, "chain {}", f.chain);
            let _ = writeln!(out, "formula {}", f.formula);
            let _ = writeln!(out, "valuation {}", valuation_text(&f.valuation));
            let _ = writeln!(out, "expected {}", f.expected);
            let _ = writeln!(out, "got {}", f.got);
            if let Some(m) = &f.model {
                out.push_str("begin model\n");
                out.push_str(&write_model(m));
                out.push_str("end model\n");
            }
            out.push_str("end failure\n");
        }
        out
    }
}

fn valuation_text(v: &Valuation) -> String {
    v.iter().map(|(x, j)| format!("{x}={j}")).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    let start = Instant::now();
    let (cases, tallies) = match name {
        "residuation" => residuation(),
        "lemma-tr" => lemma_tr(cfg),
        "lemma-clos" => lemma_clos(cfg),
        "lemma-gc" => lemma_gc(cfg),
        "lemma-gc1" => lemma_gc1(cfg),
        "lemma-pred" => lemma_pred(cfg),
        "lemma-luk1" => lemma_luk1(cfg),
        "lemma-luk" => lemma_luk(cfg),
        "thm41-smtl" => thm41_smtl(cfg),
        "thm41-bl" => thm41_bl(cfg),
        "thm415-delta" => thm415_delta(cfg),
        "formula-f" => formula_f(),
        "fo-axioms" => fo_axioms(cfg),
        "divisibility" => divisibility(),
        "oracle-agreement" => oracle_agreement(cfg),
        "thm413-demo" => thm413_demo(cfg),
        other => return Err(UnknownSuite(other.to_string())),
    };
    let mut checks = 0;
    let mut failures = Vec::new();
    for t in tallies {
        checks += t.checks;
        failures.extend(t.failures);
    }
    Ok(SuiteReport { name: name.to_string(), cases, checks, failures, wall: start.elapsed() })
}

// ---------------------------------------------------------------- helpers

/// A case stops recording after this many failures.
const MAX_FAILURES_PER_CASE: usize = 10;

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn full(&self) -> bool {
        self.failures.len() >= MAX_FAILURES_PER_CASE
    }

    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Failure) {
        self.checks += 1;
        if !ok && !self.full() {
            self.failures.push(fail());
        }
    }

    fn error(&mut self, chain: &str, formula: &FoFormula, err: impl std::fmt::Display) {
        self.check(false, || failure(chain, formula, None, Valuation::new(), "no error", format!("error: {err}")));
    }
}

fn failure(
    chain: &str,
    formula: &FoFormula,
    model: Option<Model<Rational>>,
    valuation: Valuation,
    expected: impl Into<String>,
    got: impl Into<String>,
) -> Failure {
    Failure {
        chain: chain.to_string(),
        formula: formula.to_string(),
        model,
        valuation,
        expected: expected.into(),
        got: got.into(),
    }
}

/// Runs `f` on every case in parallel; tallies come back in case order.
fn run_cases<T: Sync>(cases: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> (usize, Vec<Tally>) {
    let tallies = cases
        .par_iter()
        .map(|c| {
            let mut t = Tally::default();
            f(c, &mut t);
            t
        })
        .collect();
    (cases.len(), tallies)
}

fn chain(family: Family, n: usize) -> Chain {
    make_chain(family, n).expect("valid family size")
}

fn lab(c: &Chain, x: usize) -> String {
    format_rational(&c.label(&x))
}

/// The chains used for the exhaustive translation checks.
pub fn lemma_chains() -> Vec<Chain> {
    vec![
        boolean(),
        chain(Family::Lukasiewicz, 2),
        chain(Family::Lukasiewicz, 3),
        chain(Family::Godel, 3),
        chain(Family::Godel, 4),
        chain(Family::Nm, 4),
        chain(Family::Nm, 5),
        chain(Family::Dp, 4),
    ]
}

/// nm(4), nm(5) and two WNM chains that are not nilpotent minimum.
pub fn wnm_chains() -> Vec<Chain> {
    vec![
        chain(Family::Nm, 4),
        chain(Family::Nm, 5),
        make_wnm_chain(&[5, 3, 3, 2, 0, 0]).expect("valid negation"),
        make_wnm_chain(&[4, 2, 2, 0, 0]).expect("valid negation"),
    ]
}

/// Every finite chain the crate constructs with at most `max` elements.
pub fn shipped_chains(max: usize) -> Vec<Chain> {
    let mut out = vec![boolean()];
    for k in 1..=max {
        if k >= 2 {
            out.push(chain(Family::Lukasiewicz, k - 1));
        }
        out.push(chain(Family::Godel, k));
        out.push(chain(Family::Nm, k));
        out.push(chain(Family::Dp, k));
    }
    for c in wnm_chains().into_iter().skip(2) {
        if c.size() <= max {
            out.push(c);
        }
    }
    for (a, b) in [(1, 2), (2, 2), (2, 3), (3, 3), (2, 4)] {
        let s = ordinal_sum(&chain(Family::Lukasiewicz, a), &chain(Family::Godel, b)).expect("MV first summand");
        if s.size() <= max {
            out.push(s);
        }
    }
    for (a, b) in [(1, 1), (2, 2), (3, 2)] {
        let s = ordinal_sum(&chain(Family::Lukasiewicz, a), &chain(Family::Lukasiewicz, b)).expect("MV first summand");
        if s.size() <= max {
            out.push(s);
        }
    }
    out
}

/// Calls `f` on every cell vector of length `len` over `0..base`, in
/// canonical order, until it returns `false`.
fn for_each_cells(len: usize, base: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut odo = Odometer::new(len, base);
    loop {
        if !f(odo.digits()) {
            return;
        }
        if odo.advance().is_none() {
            return;
        }
    }
}

/// All valuations of `vars` over `{1..n}`.
fn valuations(vars: &[String], n: usize) -> Vec<Valuation> {
    let mut out = Vec::new();
    for_each_cells(vars.len(), n, |digits| {
        out.push(vars.iter().cloned().zip(digits.iter().map(|d| d + 1)).collect());
        true
    });
    out
}

fn labelled(c: &Chain, p: &FoProgram, cells: &[usize]) -> Model<Rational> {
    p.layout().model_from_cells(cells).map(|x| c.label(x))
}

/// Compiled formula with one environment per valuation of its free
/// variables.
struct Compiled {
    prog: FoProgram,
    vals: Vec<Valuation>,
    envs: Vec<Vec<usize>>,
}

impl Compiled {
    fn new(f: &FoFormula, n: usize) -> Result<Compiled, String> {
        Compiled::with_vars(f, n, &f.free_vars())
    }

    /// Valuations range over `vars`, which must include the free variables.
    fn with_vars(f: &FoFormula, n: usize, vars: &[String]) -> Result<Compiled, String> {
        let prog = FoProgram::compile(f, n).map_err(|e| e.to_string())?;
        let vals = valuations(vars, n);
        let envs = vals.iter().map(|v| prog.env_for(v)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        Ok(Compiled { prog, vals, envs })
    }

    fn eval<A: Algebra>(&mut self, alg: &A, cells: &[A::Elem], i: usize) -> A::Elem {
        self.prog.eval_cells(alg, cells, &mut self.envs[i])
    }
}

/// Verdicts of two bounded checks agree at every bound up to `n`.
fn same_bound(a: Option<usize>, b: Option<usize>) -> bool {
    a == b
}

fn verdict_text(r: Option<usize>, bound: usize) -> String {
    match r {
        None => format!("taut-up-to-{bound}"),
        Some(n) => format!("refuted at n={n}"),
    }
}

// ---------------------------------------------------------------- suites

fn residuation() -> (usize, Vec<Tally>) {
    let finite = shipped_chains(12);
    let rational: Vec<RationalChain> = [
        RationalFamily::Lukasiewicz,
        RationalFamily::Godel,
        RationalFamily::Product,
        RationalFamily::Nm,
        RationalFamily::Dp,
    ]
    .into_iter()
    .map(RationalChain::new)
    .collect();
    let (n1, mut t1) = run_cases(&finite, |c, t| {
        let report = c.check();
        t.check(report.all_pass(), || {
            failure(c.name(), &FoFormula::Bot, None, Valuation::new(), "all-pass", report.to_string())
        });
        let k = c.size();
        for x in 0..k {
            for y in 0..k {
                let r = c.residuum_idx(x, y);
                for z in 0..k {
                    let ok = (c.star_idx(z, x) <= y) == (z <= r);
                    t.check(ok, || {
                        failure(
                            c.name(),
                            &FoFormula::Bot,
                            None,
                            Valuation::new(),
                            "z*x <= y iff z <= x=>y",
                            format!("fails at x={}, y={}, z={}", lab(c, x), lab(c, y), lab(c, z)),
                        )
                    });
                }
            }
        }
    });
    let grid = unit_grid(6);
    let (n2, t2) = run_cases(&rational, |c, t| {
        let vals = c.restrict_grid(&grid);
        for x in &vals {
            for y in &vals {
                let r = c.residuum(x, y);
                t.check(c.contains(&r), || {
                    failure(c.name(), &FoFormula::Bot, None, Valuation::new(), "residuum in carrier", r.to_string())
                });
                for z in &vals {
                    let ok = (c.star(z, x) <= *y) == (*z <= r);
                    t.check(ok, || {
                        failure(
                            c.name(),
                            &FoFormula::Bot,
                            None,
                            Valuation::new(),
                            "z*x <= y iff z <= x=>y",
                            format!("fails at x={x}, y={y}, z={z}"),
                        )
                    });
                }
            }
        }
    });
    t1.extend(t2);
    (n1 + n2, t1)
}

/// Maps each variable of a grounding (sorted) to its cell index.
fn grounding_cells(
    prog: &FoProgram,
    pp: &PropProgram,
    legend: &std::collections::BTreeMap<String, mtlfin_core::grounding::Cell>,
) -> Vec<usize> {
    let layout = prog.layout();
    let n = layout.domain_size();
    pp.vars()
        .iter()
        .map(|v| {
            let cell = &legend[v];
            let p = layout.index_of(&cell.predicate).expect("grounded predicate in layout");
            let offset = layout.predicates()[p].2;
            offset + cell.tuple.iter().fold(0, |acc, j| acc * n + (j - 1))
        })
        .collect()
}

fn translation_agrees(c: &Chain, closed: &FoFormula, n: usize, t: &mut Tally) {
    let (prog, g) = match (FoProgram::compile(closed, n), ground(closed, n)) {
        (Ok(p), Ok(g)) => (p, g),
        (Err(e), _) => return t.error(c.name(), closed, e),
        (_, Err(e)) => return t.error(c.name(), closed, e),
    };
    let pp = PropProgram::compile(&g.formula);
    let idx = grounding_cells(&prog, &pp, &g.legend);
    let mut vals = vec![0; idx.len()];
    for_each_cells(prog.layout().len(), c.size(), |cells| {
        for (v, &i) in vals.iter_mut().zip(&idx) {
            *v = cells[i];
        }
        let fo = prog.eval_closed(c, cells);
        let pr = pp.eval(c, &vals);
        t.check(fo == pr, || {
            failure(c.name(), closed, Some(labelled(c, &prog, cells)), Valuation::new(), lab(c, fo), lab(c, pr))
        });
        !t.full()
    });
}

fn lemma_tr(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let chains = lemma_chains();
    let corpus: Vec<FoFormula> = fo_corpus().iter().map(FoFormula::universal_closure).collect();
    let fixed: Vec<(&Chain, &FoFormula)> = chains.iter().flat_map(|c| corpus.iter().map(move |f| (c, f))).collect();
    let (_, mut tallies) = run_cases(&fixed, |(c, f), t| {
        for n in 1..=2 {
            translation_agrees(c, f, n, t);
        }
    });
    let trials: Vec<u64> = (0..cfg.trials as u64).collect();
    let gen = GenConfig { depth: cfg.depth, delta: false };
    let (cases, random) = run_cases(&trials, |&i, t| {
        let mut rng = case_rng(cfg.seed, i);
        let f = random_formula(&mut rng, gen).universal_closure();
        let c = &chains[rand::Rng::gen_range(&mut rng, 0..chains.len())];
        let n = rand::Rng::gen_range(&mut rng, 1..=3);
        let carrier = c.carrier().expect("finite");
        let g = match ground(&f, n) {
            Ok(g) => g,
            Err(e) => return t.error(c.name(), &f, e),
        };
        let layout = match mtlfin_core::semantics::CellLayout::new(&f.signature().unwrap_or_default(), n) {
            Ok(l) => l,
            Err(e) => return t.error(c.name(), &f, e),
        };
        for _ in 0..cfg.samples {
            let cells = random_cells(&mut rng, layout.len(), &carrier);
            let model = layout.model_from_cells(&cells);
            let fo = eval_fo(c, &model, &Valuation::new(), &f);
            let pr = eval_prop(c, &induced_assignment(&model), &g.formula);
            match (fo, pr) {
                (Ok(a), Ok(b)) => t.check(a == b, || {
                    failure(c.name(), &f, Some(model.map(|x| c.label(x))), Valuation::new(), lab(c, a), lab(c, b))
                }),
                (Err(e), _) | (_, Err(e)) => t.error(c.name(), &f, e),
            }
        }
    });
    tallies.extend(random);
    (cases, tallies)
}

fn lemma_clos(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let chains = lemma_chains();
    let corpus = fo_corpus();
    let cases: Vec<(&Chain, &FoFormula)> = chains.iter().flat_map(|c| corpus.iter().map(move |f| (c, f))).collect();
    run_cases(&cases, |(c, f), t| {
        let closed = f.universal_closure();
        // first size with a model and valuation below top
        let mut open_refuted = None;
        for n in 1..=2 {
            let (mut open, cl) = match (Compiled::new(f, n), FoProgram::compile(&closed, n)) {
                (Ok(o), Ok(c)) => (o, c),
                (Err(e), _) => return t.error(c.name(), f, e),
                (_, Err(e)) => return t.error(c.name(), f, e),
            };
            for_each_cells(cl.layout().len(), c.size(), |cells| {
                let vc = cl.eval_closed(*c, cells);
                let min = (0..open.vals.len()).map(|i| open.eval(*c, cells, i)).min().expect("some valuation");
                if min != c.top() && open_refuted.is_none() {
                    open_refuted = Some(n);
                }
                t.check(vc == min, || {
                    failure(c.name(), f, Some(labelled(c, &cl, cells)), Valuation::new(), lab(c, min), lab(c, vc))
                });
                !t.full()
            });
        }
        let a = taut_upto_grounded(*c, f, 2, DEFAULT_CAP);
        let b = taut_upto_grounded(*c, &closed, 2, DEFAULT_CAP);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let (ra, rb) = (a.verdict.refuted_at(), b.verdict.refuted_at());
                t.check(ra == rb && ra == open_refuted, || {
                    failure(
                        c.name(),
                        f,
                        None,
                        Valuation::new(),
                        verdict_text(open_refuted, 2),
                        format!("{} / {}", verdict_text(ra, 2), verdict_text(rb, 2)),
                    )
                });
            }
            (Err(e), _) | (_, Err(e)) => t.error(c.name(), f, e),
        }
    })
}

fn wnm_cases() -> Vec<(Chain, NegationProfile, FoFormula, FoFormula)> {
    let corpus = fo_corpus();
    let mut out = Vec::new();
    for c in wnm_chains() {
        let p = negation_profile(&c);
        for f in &corpus {
            let star = wnm_star(f).expect("corpus is Delta-free");
            out.push((c.clone(), p.clone(), f.clone(), star));
        }
    }
    out
}

fn plus_cells(p: &NegationProfile, cells: &[usize], out: &mut [usize]) {
    for (o, &v) in out.iter_mut().zip(cells) {
        *o = if p.contains_positive(v) { v } else { 0 };
    }
}

fn lemma_gc(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = wnm_cases();
    run_cases(&cases, |(c, p, f, star), t| {
        for n in 1..=2 {
            let mut s = match Compiled::new(star, n) {
                Ok(s) => s,
                Err(e) => return t.error(c.name(), f, e),
            };
            let mut plus = vec![0; s.prog.layout().len()];
            for_each_cells(s.prog.layout().len(), c.size(), |cells| {
                plus_cells(p, cells, &mut plus);
                for i in 0..s.vals.len() {
                    let a = s.eval(c, cells, i);
                    let b = s.eval(c, &plus, i);
                    t.check(a == b && (a == 0 || p.contains_positive(a)), || {
                        failure(
                            c.name(),
                            star,
                            Some(labelled(c, &s.prog, cells)),
                            s.vals[i].clone(),
                            format!("{} over M+, in A+ or 0", lab(c, b)),
                            lab(c, a),
                        )
                    });
                }
                !t.full()
            });
        }
    })
}

fn lemma_gc1(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = wnm_cases();
    run_cases(&cases, |(c, p, f, star), t| {
        let frag = match godel_fragment(c) {
            Ok(g) => g,
            Err(e) => return t.error(c.name(), f, e),
        };
        let g = &frag.chain;
        let vars = star.free_vars();
        for n in 1..=2 {
            let (mut s, mut o) = match (Compiled::new(star, n), Compiled::with_vars(f, n, &vars)) {
                (Ok(s), Ok(o)) => (s, o),
                (Err(e), _) | (_, Err(e)) => return t.error(c.name(), f, e),
            };
            if s.prog.layout() != o.prog.layout() {
                return t.error(c.name(), f, "translation changed the signature");
            }
            let len = s.prog.layout().len();
            let mut plus = vec![0; len];
            let mut prime = vec![0; len];
            for_each_cells(len, c.size(), |cells| {
                plus_cells(p, cells, &mut plus);
                for (q, v) in prime.iter_mut().zip(&plus) {
                    *q = frag.embedding.iter().position(|e| e == v).expect("M+ values lie in the fragment");
                }
                for i in 0..s.vals.len() {
                    let a = s.eval(c, cells, i);
                    let b = frag.embedding[s.eval(g, &prime, i)];
                    let d = frag.embedding[o.eval(g, &prime, i)];
                    t.check(a == b && b == d, || {
                        failure(
                            c.name(),
                            f,
                            Some(labelled(c, &s.prog, cells)),
                            s.vals[i].clone(),
                            lab(c, a),
                            format!("star over A_G {}, formula over A_G {}", lab(c, b), lab(c, d)),
                        )
                    });
                }
                !t.full()
            });
        }
    })
}

fn mv_chains() -> Vec<Chain> {
    vec![chain(Family::Lukasiewicz, 2), chain(Family::Lukasiewicz, 3)]
}

fn classical_cases() -> Vec<(Chain, FoFormula, FoFormula)> {
    let corpus = classical_corpus();
    let mut out = Vec::new();
    for c in mv_chains() {
        for f in &corpus {
            out.push((c.clone(), f.clone(), predef(f).expect("classical corpus")));
        }
    }
    out
}

fn lemma_pred(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = classical_cases();
    run_cases(&cases, |(c, f, pre), t| {
        let fix = negation_profile(c).fixpoint;
        let vars = f.free_vars();
        for n in 1..=2 {
            let mut pd = match Compiled::with_vars(pre, n, &vars) {
                Ok(p) => p,
                Err(e) => return t.error(c.name(), f, e),
            };
            let subs: Vec<(FoFormula, Compiled)> =
                match f.subformulas().into_iter().map(|s| Compiled::new(s, n).map(|p| (s.clone(), p))).collect() {
                    Ok(v) => v,
                    Err(e) => return t.error(c.name(), f, e),
                };
            let mut subs = subs;
            for_each_cells(pd.prog.layout().len(), c.size(), |cells| {
                let first = pd.eval(c, cells, 0);
                for i in 1..pd.vals.len() {
                    let v = pd.eval(c, cells, i);
                    t.check(v == first, || {
                        failure(
                            c.name(),
                            pre,
                            Some(labelled(c, &pd.prog, cells)),
                            pd.vals[i].clone(),
                            lab(c, first),
                            lab(c, v),
                        )
                    });
                }
                if first == 0 {
                    return !t.full();
                }
                let model = pd.prog.layout().model_from_cells(cells);
                for (s, sp) in subs.iter_mut() {
                    let sub_cells = sp.prog.layout().cells_of(&model).expect("subformula signature");
                    for i in 0..sp.vals.len() {
                        let v = sp.eval(c, &sub_cells, i);
                        t.check(Some(v) != fix, || {
                            failure(
                                c.name(),
                                s,
                                Some(labelled(c, &pd.prog, cells)),
                                sp.vals[i].clone(),
                                "a value other than the negation fixpoint",
                                lab(c, v),
                            )
                        });
                    }
                }
                !t.full()
            });
        }
    })
}

fn lemma_luk1(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = classical_cases();
    let two = boolean();
    run_cases(&cases, |(c, f, pre), t| {
        let profile = negation_profile(c);
        for n in 1..=2 {
            let (pd, mut fp) = match (FoProgram::compile(pre, n), Compiled::new(f, n)) {
                (Ok(p), Ok(q)) => (p, q),
                (Err(e), _) => return t.error(c.name(), f, e),
                (_, Err(e)) => return t.error(c.name(), f, e),
            };
            for_each_cells(pd.layout().len(), c.size(), |cells| {
                if pd.eval_closed(c, cells) == 0 {
                    return true;
                }
                let model = pd.layout().model_from_cells(cells);
                let collapsed = match boolean_collapse(c, &model) {
                    Ok(m) => m,
                    Err(e) => {
                        t.error(c.name(), f, e);
                        return false;
                    }
                };
                let bcells = fp.prog.layout().cells_of(&collapsed).expect("same signature");
                for i in 0..fp.vals.len() {
                    let a = fp.eval(c, cells, i);
                    let b = fp.eval(&two, &bcells, i);
                    t.check(profile.contains_positive(a) == (b == 1), || {
                        failure(
                            c.name(),
                            f,
                            Some(labelled(c, &pd, cells)),
                            fp.vals[i].clone(),
                            format!("value {} in A+ iff collapse gives 1", lab(c, a)),
                            format!("collapse gives {b}"),
                        )
                    });
                }
                !t.full()
            });
        }
    })
}

/// Refutation size (or `None`) of a bounded direct check.
fn bounded<A: Algebra>(alg: &A, f: &FoFormula, bound: usize, cap: u128) -> Result<Option<usize>, String> {
    taut_upto_direct(alg, f, bound, cap).map(|r| r.verdict.refuted_at()).map_err(|e| e.to_string())
}

/// `taut_upto(translated, target, N) ⟺ taut_upto(f, reference, N)` for
/// every `N ≤ bound`, i.e. equal refutation sizes within the bound.
fn bounded_equivalence(
    t: &mut Tally,
    target: &Chain,
    translated: &FoFormula,
    reference: &Chain,
    f: &FoFormula,
    bound: usize,
    cap: u128,
) {
    match (bounded(target, translated, bound, cap), bounded(reference, f, bound, cap)) {
        (Ok(a), Ok(b)) => t.check(same_bound(a, b), || {
            failure(
                target.name(),
                translated,
                None,
                Valuation::new(),
                format!("{} (as {f} over {})", verdict_text(b, bound), reference.name()),
                verdict_text(a, bound),
            )
        }),
        (Err(e), _) | (_, Err(e)) => t.error(target.name(), translated, e),
    }
}

fn lemma_luk(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = classical_cases();
    let two = boolean();
    run_cases(&cases, |(c, f, _), t| match luk_star(f) {
        Ok(s) => bounded_equivalence(t, c, &s, &two, f, 3, cfg.cap),
        Err(e) => t.error(c.name(), f, e),
    })
}

fn reduction_cases(targets: Vec<Chain>) -> Vec<(Chain, FoFormula)> {
    let corpus = fo_corpus();
    targets.into_iter().flat_map(|c| corpus.iter().map(move |f| (c.clone(), f.clone()))).collect()
}

fn thm41_smtl(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = reduction_cases(vec![chain(Family::Godel, 4), chain(Family::Godel, 3)]);
    let two = boolean();
    run_cases(&cases, |(c, f), t| match double_neg(f) {
        Ok(d) => bounded_equivalence(t, c, &d, &two, f, 3, cfg.cap),
        Err(e) => t.error(c.name(), f, e),
    })
}

fn thm41_bl(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let l2 = chain(Family::Lukasiewicz, 2);
    let sum = ordinal_sum(&l2, &chain(Family::Godel, 2)).expect("L2 is an MV-chain");
    let cases = reduction_cases(vec![sum]);
    run_cases(&cases, |(c, f), t| match double_neg(f) {
        Ok(d) => bounded_equivalence(t, c, &d, &l2, f, 3, cfg.cap),
        Err(e) => t.error(c.name(), f, e),
    })
}

fn thm415_delta(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let targets = [chain(Family::Lukasiewicz, 2), chain(Family::Lukasiewicz, 3), chain(Family::Godel, 4)];
    let cases = reduction_cases(targets.iter().map(delta_expand).collect());
    let two = delta_expand(&boolean());
    run_cases(&cases, |(c, f), t| bounded_equivalence(t, c, &delta_guard(f), &two, f, 3, cfg.cap))
}

fn formula_f() -> (usize, Vec<Tally>) {
    let f = named_identity("f").expect("f is in the identity library");
    // (chain, expected) from the criterion, then every small shipped chain
    let mut cases: Vec<(Chain, Option<bool>)> = vec![
        (chain(Family::Lukasiewicz, 2), Some(false)),
        (chain(Family::Lukasiewicz, 3), Some(true)),
        (chain(Family::Nm, 5), Some(false)),
        (chain(Family::Godel, 4), Some(true)),
    ];
    // the one-element chain is its own fixpoint yet satisfies everything
    cases.extend(shipped_chains(8).into_iter().filter(|c| c.size() > 1).map(|c| (c, None)));
    let as_fo = f.to_fo();
    run_cases(&cases, |(c, expected), t| {
        let free = negation_profile(c).fixpoint.is_none();
        match satisfies_identity(&delta_expand(c), &f) {
            Ok(holds) => t.check(holds == free && expected.is_none_or(|e| e == holds), || {
                failure(
                    c.name(),
                    &as_fo,
                    None,
                    Valuation::new(),
                    format!("holds = {} (fixpoint-free = {free})", expected.unwrap_or(free)),
                    format!("holds = {holds}"),
                )
            }),
            Err(e) => t.error(c.name(), &as_fo, e),
        }
    })
}

/// Instances of the quantifier axioms over a few bodies.
pub fn fo_axiom_instances() -> Vec<FoFormula> {
    let parse = |s: &str| mtlfin_core::syntax::parse_fo(s).expect("axiom template");
    let bodies = ["P(x)", "~P(x)", "P(x) & Q(x)", "R(x,y)", "P(x) -> A", "exists y. R(x,y)"].map(parse);
    let chis = ["A", "Q(y)", "~A"].map(parse);
    let mut out = Vec::new();
    for phi in &bodies {
        let all = FoFormula::forall("x", phi.clone());
        let some = FoFormula::exists("x", phi.clone());
        // (∀1) and (∃1) with the substituted term x itself and a fresh z
        for term in ["x", "z"] {
            let inst = phi.rename_free("x", term);
            out.push(all.clone().implies(inst.clone()));
            out.push(inst.implies(some.clone()));
        }
        for chi in &chis {
            // (∀2)
            out.push(
                FoFormula::forall("x", chi.clone().implies(phi.clone())).implies(chi.clone().implies(all.clone())),
            );
            // (∃2)
            out.push(
                FoFormula::forall("x", phi.clone().implies(chi.clone())).implies(some.clone().implies(chi.clone())),
            );
            // (∀3)
            out.push(FoFormula::forall("x", chi.clone().or(phi.clone())).implies(chi.clone().or(all.clone())));
        }
    }
    out
}

fn fo_axioms(_cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let instances = fo_axiom_instances();
    let cases: Vec<(Chain, FoFormula)> =
        shipped_chains(5).into_iter().flat_map(|c| instances.iter().map(move |f| (c.clone(), f.clone()))).collect();
    run_cases(&cases, |(c, f), t| {
        for n in 1..=2 {
            let mut p = match Compiled::new(f, n) {
                Ok(p) => p,
                Err(e) => return t.error(c.name(), f, e),
            };
            for_each_cells(p.prog.layout().len(), c.size(), |cells| {
                for i in 0..p.vals.len() {
                    let v = p.eval(c, cells, i);
                    t.check(v == c.top(), || {
                        failure(c.name(), f, Some(labelled(c, &p.prog, cells)), p.vals[i].clone(), "1", lab(c, v))
                    });
                }
                !t.full()
            });
        }
    })
}

fn divisibility() -> (usize, Vec<Tally>) {
    let ns: Vec<usize> = (1..=12).collect();
    run_cases(&ns, |&n, t| {
        let c = chain(Family::Lukasiewicz, n);
        let expected: BTreeSet<usize> = (1..=n).filter(|d| n % d == 0).map(|d| d + 1).collect();
        match subchains(&c) {
            Ok(subs) => {
                let got: BTreeSet<usize> = subs.iter().map(Vec::len).collect();
                let each_is_luk = subs.iter().all(|s| {
                    mtlfin_core::algebra::restrict(&c, s)
                        .map(|r| r.is_isomorphic(&chain(Family::Lukasiewicz, s.len() - 1)))
                        .unwrap_or(false)
                });
                t.check(got == expected && each_is_luk && subs.len() == expected.len(), || {
                    failure(
                        c.name(),
                        &FoFormula::Bot,
                        None,
                        Valuation::new(),
                        format!("sizes {expected:?}, each a Lukasiewicz chain"),
                        format!("sizes {got:?} ({} subchains)", subs.len()),
                    )
                });
            }
            Err(e) => t.error(c.name(), &FoFormula::Bot, e),
        }
    })
}

fn oracle_agreement(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let cases = reduction_cases(lemma_chains());
    run_cases(&cases, |(c, f), t| {
        let g = taut_upto_grounded(c, f, 3, cfg.cap);
        let d = taut_upto_direct(c, f, 3, cfg.cap);
        match (g, d) {
            (Ok(g), Ok(d)) => {
                let (a, b) = (g.verdict.refuted_at(), d.verdict.refuted_at());
                t.check(a == b && g.closed == d.closed, || {
                    failure(c.name(), f, None, Valuation::new(), verdict_text(b, 3), verdict_text(a, 3))
                });
            }
            (Err(e), _) => t.error(c.name(), f, e),
            (_, Err(e)) => t.error(c.name(), f, e),
        }
    })
}

fn thm413_demo(cfg: &SuiteConfig) -> (usize, Vec<Tally>) {
    let phi = parse_prop("(x & x) <-> (x & x & x)").expect("demo formula");
    let psi = lift_prop(&phi);
    let l2 = chain(Family::Lukasiewicz, 2);
    let l3 = chain(Family::Lukasiewicz, 3);
    let steps: Vec<u8> = (0..4).collect();
    run_cases(&steps, |&step, t| {
        let fail = |c: &Chain, expected: &str, got: String| {
            failure(c.name(), &psi, None, Valuation::new(), expected.to_string(), got)
        };
        match step {
            0 => match is_taut_prop(&l2, &phi, cfg.cap) {
                Ok(r) => t.check(r.is_tautology(), || fail(&l2, "propositional tautology", format!("{r:?}"))),
                Err(e) => t.error(l2.name(), &psi, e),
            },
            1 => match is_taut_prop(&l3, &phi, cfg.cap) {
                Ok(r) => t.check(!r.is_tautology(), || fail(&l3, "a witness", "tautology".into())),
                Err(e) => t.error(l3.name(), &psi, e),
            },
            2 => match bounded(&l2, &psi, 3, cfg.cap) {
                Ok(r) => t.check(r.is_none(), || fail(&l2, "taut-up-to-3", verdict_text(r, 3))),
                Err(e) => t.error(l2.name(), &psi, e),
            },
            _ => {
                let carrier = l3.carrier().expect("finite");
                match find_countermodel(&l3, &psi, 1, &carrier, cfg.cap) {
                    Ok(SearchOutcome::Found(cert)) => {
                        let ok = cert.model.domain_size() == 1 && verify_certificate(&l3, &cert) == Ok(true);
                        t.check(ok, || fail(&l3, "verifying singleton certificate", format!("{cert:?}")));
                    }
                    Ok(other) => t.check(false, || fail(&l3, "a certificate", format!("{other:?}"))),
                    Err(e) => t.error(l3.name(), &psi, e),
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_runs_or_is_described() {
        for name in SUITE_NAMES {
            assert!(describe(name).is_some(), "{name}");
        }
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn shipped_chain_list() {
        let small = shipped_chains(5);
        assert!(small.iter().all(|c| c.size() <= 5));
        let names: BTreeSet<&str> = small.iter().map(|c| c.name()).collect();
        assert!(names.contains("sum(lukasiewicz(2),godel(2))"));
        assert!(names.contains("wnm[4,2,2,0,0]"));
        assert!(shipped_chains(12).iter().all(|c| c.check().all_pass()));
    }

    #[test]
    fn fast_suites_pass() {
        let cfg = SuiteConfig { trials: 20, ..SuiteConfig::default() };
        for name in ["divisibility", "formula-f", "thm413-demo"] {
            let r = run_suite(name, &cfg).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn reports_are_stable() {
        let cfg = SuiteConfig { trials: 30, depth: 3, ..SuiteConfig::default() };
        let a = run_suite("lemma-tr", &cfg).unwrap();
        let b = run_suite("lemma-tr", &cfg).unwrap();
        assert_eq!(a.to_machine(), b.to_machine());
        assert_eq!(a.cases, 30);
    }

    #[test]
    fn failures_are_reported() {
        let mut t = Tally::default();
        t.check(false, || failure("c", &FoFormula::Bot, None, Valuation::new(), "1", "0"));
        let r =
            SuiteReport { name: "x".into(), cases: 1, checks: t.checks, failures: t.failures, wall: Duration::ZERO };
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_machine().contains("begin failure\nchain c\nformula bot\n"));
    }
}
