use std::collections::BTreeMap;

use mtlfin_core::algebra::{delta_expand, make_chain, ordinal_sum, Family, RationalFamily};
use mtlfin_core::grounding::{ground, induced_assignment, taut_upto_grounded};
use mtlfin_core::rational::ratio;
use mtlfin_core::search::{find_countermodel, taut_upto_direct, verify_certificate, SearchOutcome};
use mtlfin_core::semantics::{eval_fo, eval_prop, tuples, CellLayout};
use mtlfin_core::syntax::{parse_fo, parse_prop, Atom, BinOp, Quantifier, UnOp};
use mtlfin_core::{
    Algebra, Chain, FoFormula, Model, PropFormula, Rational, RationalChain, Signature, Valuation, DEFAULT_CAP,
};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn atom() -> impl Strategy<Value = FoFormula> {
    let v = || prop::sample::select(&VARS[..]);
    prop_oneof![
        Just(FoFormula::atom("A", &[])),
        v().prop_map(|a| FoFormula::atom("P", &[a])),
        v().prop_map(|a| FoFormula::atom("Q", &[a])),
        (v(), v()).prop_map(|(a, b)| FoFormula::atom("R", &[a, b])),
        Just(FoFormula::Bot),
    ]
}

fn binop() -> impl Strategy<Value = BinOp> {
    prop::sample::select(vec![BinOp::And, BinOp::StrongAnd, BinOp::Implies, BinOp::Or, BinOp::Iff])
}

fn formula() -> impl Strategy<Value = FoFormula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec![UnOp::Not, UnOp::Delta]), inner.clone())
                .prop_map(|(op, a)| FoFormula::Unary(op, Box::new(a))),
            (binop(), inner.clone(), inner.clone()).prop_map(|(op, a, b)| FoFormula::bin(op, a, b)),
            (any::<bool>(), prop::sample::select(&VARS[..]), inner).prop_map(|(all, v, a)| {
                let q = if all { Quantifier::Forall } else { Quantifier::Exists };
                FoFormula::Quant(q, v.into(), Box::new(a))
            }),
        ]
    })
}

fn prop_formula() -> impl Strategy<Value = PropFormula> {
    let leaf =
        prop_oneof![prop::sample::select(vec!["p", "q", "r"]).prop_map(PropFormula::var), Just(PropFormula::Bot)];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec![UnOp::Not, UnOp::Delta]), inner.clone())
                .prop_map(|(op, a)| PropFormula::Unary(op, Box::new(a))),
            (binop(), inner.clone(), inner).prop_map(|(op, a, b)| PropFormula::bin(op, a, b)),
        ]
    })
}

// Δ-expanded so that every generated formula can be evaluated.
fn chains() -> Vec<Chain> {
    let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
    let g2 = make_chain(Family::Godel, 2).unwrap();
    let sum = ordinal_sum(&l2, &g2).unwrap();
    [
        make_chain(Family::Boolean, 1).unwrap(),
        l2,
        make_chain(Family::Lukasiewicz, 3).unwrap(),
        make_chain(Family::Godel, 3).unwrap(),
        make_chain(Family::Nm, 4).unwrap(),
        make_chain(Family::Dp, 3).unwrap(),
        sum,
    ]
    .iter()
    .map(delta_expand)
    .collect()
}

fn signature() -> Signature {
    [("A", 0), ("P", 1), ("Q", 1), ("R", 2)].into_iter().map(|(p, a)| (p.to_string(), a)).collect()
}

/// Chain index, domain size and a model drawn from raw seeds.
#[derive(Debug, Clone)]
struct World {
    chain: usize,
    n: usize,
    seeds: Vec<usize>,
    val: [usize; 3],
}

fn world(max_n: usize) -> impl Strategy<Value = World> {
    (0..chains().len(), 1..=max_n, prop::collection::vec(any::<usize>(), 16), prop::array::uniform3(any::<usize>()))
        .prop_map(|(chain, n, seeds, val)| World { chain, n, seeds, val })
}

impl World {
    fn model(&self, c: &Chain) -> Model<usize> {
        let layout = CellLayout::new(&signature(), self.n).unwrap();
        let cells: Vec<usize> =
            (0..layout.len()).map(|i| self.seeds[i % self.seeds.len()].wrapping_add(i) % c.size()).collect();
        layout.model_from_cells(&cells)
    }
    fn valuation(&self) -> Valuation {
        VARS.iter().zip(self.val).map(|(v, s)| (v.to_string(), 1 + s % self.n)).collect()
    }
}

fn all_valuations(vars: &[String], n: usize) -> Vec<Valuation> {
    tuples(vars.len(), n).into_iter().map(|t| vars.iter().cloned().zip(t).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fo_print_parse_round_trip(f in formula()) {
        prop_assert_eq!(parse_fo(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn prop_print_parse_round_trip(f in prop_formula()) {
        prop_assert_eq!(parse_prop(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn desugaring_preserves_value(f in formula(), w in world(2)) {
        let c = &chains()[w.chain];
        let m = w.model(c);
        let v = w.valuation();
        let d = f.desugar();
        prop_assert!(!d.any_node(&mut |g| matches!(g, FoFormula::Unary(UnOp::Not, _) | FoFormula::Binary(BinOp::Or | BinOp::Iff, ..))));
        prop_assert_eq!(eval_fo(c, &m, &v, &f).unwrap(), eval_fo(c, &m, &v, &d).unwrap());
    }

    #[test]
    fn closure_is_minimum_over_valuations(f in formula(), w in world(2)) {
        let c = &chains()[w.chain];
        let m = w.model(c);
        let closed = f.universal_closure();
        prop_assert!(closed.is_closed());
        let min = all_valuations(&f.free_vars(), w.n)
            .iter()
            .map(|v| eval_fo(c, &m, v, &f).unwrap())
            .min()
            .unwrap();
        prop_assert_eq!(eval_fo(c, &m, &Valuation::new(), &closed).unwrap(), min);
    }

    #[test]
    fn renaming_free_variable_is_invisible(f in formula(), w in world(3)) {
        let c = &chains()[w.chain];
        let m = w.model(c);
        let v = w.valuation();
        let renamed = f.rename_free("x", "w");
        prop_assert!(!renamed.free_vars().contains(&"x".to_string()));
        let mut v2 = v.clone();
        v2.insert("w".into(), v["x"]);
        prop_assert_eq!(eval_fo(c, &m, &v, &f).unwrap(), eval_fo(c, &m, &v2, &renamed).unwrap());
    }

    #[test]
    fn domain_permutation_is_invisible(f in formula(), w in world(3), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut p: Vec<usize> = (1..=3).collect();
        for i in (1..p.len()).rev() {
            p.swap(i, (rng.next_u32() as usize) % (i + 1));
        }
        p
    })) {
        let c = &chains()[w.chain];
        let m = w.model(c);
        let v = w.valuation();
        // restrict the permutation of {1,2,3} to {1..n}
        let pi: Vec<usize> = perm.iter().copied().filter(|&e| e <= w.n).collect();
        let image = |e: usize| pi[e - 1];
        let mut pm = m.clone();
        for (p, t, val) in m.cells() {
            let moved: Vec<usize> = t.iter().map(|&e| image(e)).collect();
            pm.set(p, &moved, *val).unwrap();
        }
        let pv: Valuation = v.iter().map(|(k, &e)| (k.clone(), image(e))).collect();
        prop_assert_eq!(eval_fo(c, &m, &v, &f).unwrap(), eval_fo(c, &pm, &pv, &f).unwrap());
    }

    #[test]
    fn grounding_matches_direct_value(f in formula(), w in world(2)) {
        let c = &chains()[w.chain];
        let m = w.model(c);
        let closed = f.universal_closure();
        let g = ground(&closed, w.n).unwrap();
        let assignment: BTreeMap<_, _> = induced_assignment(&m);
        prop_assert_eq!(eval_fo(c, &m, &Valuation::new(), &closed).unwrap(), eval_prop(c, &assignment, &g.formula).unwrap());
    }

    #[test]
    fn generated_chains_obey_laws(
        family in prop::sample::select(vec![Family::Lukasiewicz, Family::Godel, Family::Nm, Family::Dp]),
        k in 1usize..9,
        second in 1usize..4,
        x in any::<usize>(), y in any::<usize>(), z in any::<usize>(),
    ) {
        let c = make_chain(family, k).unwrap();
        prop_assert!(c.check().all_pass());
        // the lower summand must be an MV-chain
        let s = ordinal_sum(&make_chain(Family::Lukasiewicz, second).unwrap(), &c).unwrap();
        prop_assert!(s.check().all_pass());
        prop_assert!(delta_expand(&s).check().all_pass());
        let (x, y, z) = (x % c.size(), y % c.size(), z % c.size());
        prop_assert_eq!(c.star(&x, &y), c.star(&y, &x));
        prop_assert_eq!(c.star(&c.star(&x, &y), &z), c.star(&x, &c.star(&y, &z)));
        prop_assert_eq!(c.star(&x, &y) <= z, x <= c.residuum(&y, &z));
        prop_assert_eq!(c.star(&x, &c.top()), x);
    }

    #[test]
    fn rational_families_residuate(
        family in prop::sample::select(vec![
            RationalFamily::Lukasiewicz, RationalFamily::Godel, RationalFamily::Product,
            RationalFamily::Nm, RationalFamily::Dp,
        ]),
        xs in prop::array::uniform3((0i64..=60, 1i64..=60)),
    ) {
        let c = RationalChain::new(family);
        let pick = |(n, d): (i64, i64)| -> Rational {
            let r = ratio(n.min(d), d);
            if c.contains(&r) { r } else { ratio(1, 1) }
        };
        let [x, y, z] = xs.map(pick);
        let xy = c.star(&x, &y);
        prop_assert!(c.contains(&xy));
        prop_assert_eq!(&xy, &c.star(&y, &x));
        prop_assert_eq!(c.star(&xy, &z), c.star(&x, &c.star(&y, &z)));
        prop_assert_eq!(xy <= z, x <= c.residuum(&y, &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // small chains only: 3 values over 9 cells at n = 2
    #[test]
    fn bounded_checks_agree_and_certificates_verify(f in formula(), which in 0usize..3) {
        let c = &chains()[[0, 1, 3][which]];
        let grounded = taut_upto_grounded(c, &f, 2, DEFAULT_CAP).unwrap();
        let direct = taut_upto_direct(c, &f, 2, DEFAULT_CAP).unwrap();
        prop_assert_eq!(grounded.verdict.refuted_at(), direct.verdict.refuted_at());
        match find_countermodel(c, &f, 2, &c.carrier().unwrap(), DEFAULT_CAP).unwrap() {
            SearchOutcome::Found(cert) => {
                prop_assert_eq!(Some(cert.model.domain_size()), direct.verdict.refuted_at());
                prop_assert!(verify_certificate(c, &cert).unwrap());
            }
            _ => prop_assert!(direct.verdict.is_taut()),
        }
    }
}

#[test]
fn atom_display_is_stable() {
    assert_eq!(FoFormula::Atom(Atom::new("R", &["x", "y"])).to_string(), "R(x,y)");
}
