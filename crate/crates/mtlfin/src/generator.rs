//! Seeded random first-order formulas over the signature `{P:1, Q:1, R:2}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mtlfin_core::syntax::BinOp;
use mtlfin_core::FoFormula;

const VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub depth: usize,
    pub delta: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { depth: 4, delta: false }
    }
}

/// The generator for case `index` of a run seeded with `seed`; cases are
/// independent, so they can be produced in any order or in parallel.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn v(rng: &mut impl Rng) -> &'static str {
    VARS.choose(rng).expect("nonempty")
}

fn leaf(rng: &mut impl Rng) -> FoFormula {
    match rng.gen_range(0..7) {
        0 => FoFormula::Bot,
        1 | 2 => FoFormula::atom("P", &[v(rng)]),
        3 | 4 => FoFormula::atom("Q", &[v(rng)]),
        _ => FoFormula::atom("R", &[v(rng), v(rng)]),
    }
}

/// A formula of depth at most `cfg.depth`. Internal nodes pick uniformly
/// among the connectives and quantifiers.
pub fn random_formula(rng: &mut impl Rng, cfg: GenConfig) -> FoFormula {
    if cfg.depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = GenConfig { depth: cfg.depth - 1, ..cfg };
    let kinds = if cfg.delta { 10 } else { 9 };
    match rng.gen_range(0..kinds) {
        0 => FoFormula::bin(BinOp::And, random_formula(rng, sub), random_formula(rng, sub)),
        1 => FoFormula::bin(BinOp::StrongAnd, random_formula(rng, sub), random_formula(rng, sub)),
        2 => FoFormula::bin(BinOp::Implies, random_formula(rng, sub), random_formula(rng, sub)),
        3 => FoFormula::bin(BinOp::Or, random_formula(rng, sub), random_formula(rng, sub)),
        4 => FoFormula::bin(BinOp::Iff, random_formula(rng, sub), random_formula(rng, sub)),
        5 => random_formula(rng, sub).not(),
        6 | 7 => {
            let x = v(rng);
            let body = random_formula(rng, sub);
            if rng.gen_bool(0.5) {
                FoFormula::forall(x, body)
            } else {
                FoFormula::exists(x, body)
            }
        }
        8 => leaf(rng),
        _ => random_formula(rng, sub).delta(),
    }
}

/// A uniformly random element of `values` for every cell.
pub fn random_cells<E: Clone>(rng: &mut impl Rng, len: usize, values: &[E]) -> Vec<E> {
    (0..len).map(|_| values.choose(rng).expect("nonempty values").clone()).collect()
}
