use mtlfin::formats::{
    parse_any_chain, parse_certificate, parse_chain, parse_model, write_certificate, write_chain, write_model, AnyChain,
};
use mtlfin_core::algebra::{delta_expand, make_chain, make_wnm_chain, ordinal_sum, Family};
use mtlfin_core::rational::ratio;
use mtlfin_core::search::{find_countermodel, verify_certificate, SearchOutcome};
use mtlfin_core::semantics::CellLayout;
use mtlfin_core::syntax::parse_fo;
use mtlfin_core::{Algebra, Chain, Model, Rational, Signature, DEFAULT_CAP};
use proptest::prelude::*;

fn any_chain() -> impl Strategy<Value = Chain> {
    (
        prop::sample::select(vec![Family::Boolean, Family::Lukasiewicz, Family::Godel, Family::Nm, Family::Dp]),
        1usize..7,
        0usize..3,
        any::<bool>(),
    )
        .prop_map(|(family, k, lower, delta)| {
            let mut c = make_chain(family, k).unwrap();
            if lower > 0 {
                c = ordinal_sum(&make_chain(Family::Lukasiewicz, lower).unwrap(), &c).unwrap();
            }
            if delta {
                c = delta_expand(&c);
            }
            c
        })
}

fn any_model() -> impl Strategy<Value = Model<Rational>> {
    (1usize..4, prop::collection::vec((0i64..=12, 1i64..=12), 1..40)).prop_map(|(n, raw)| {
        let sig: Signature = [("A", 0), ("P", 1), ("R", 2)].into_iter().map(|(p, a)| (p.to_string(), a)).collect();
        let layout = CellLayout::new(&sig, n).unwrap();
        let cells: Vec<Rational> = (0..layout.len())
            .map(|i| {
                let (num, den) = raw[i % raw.len()];
                ratio(num.min(den), den)
            })
            .collect();
        layout.model_from_cells(&cells)
    })
}

proptest! {
    #[test]
    fn chain_files_round_trip(c in any_chain()) {
        let text = write_chain(&c);
        let back = parse_chain(&text).unwrap();
        prop_assert_eq!(back.fingerprint(), c.fingerprint());
        prop_assert_eq!(back.name(), c.name());
        prop_assert_eq!(write_chain(&back), text);
    }

    #[test]
    fn model_files_round_trip(m in any_model()) {
        let text = write_model(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(write_model(&back), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(m in any_model()) {
        let text = write_model(&m);
        let noisy: String = text.lines().map(|l| format!("  {l}   # note\n\n")).collect();
        prop_assert_eq!(parse_model(&noisy).unwrap(), m);
    }
}

#[test]
fn certificate_round_trip_for_custom_wnm() {
    let c = make_wnm_chain(&[5, 3, 3, 2, 0, 0]).unwrap();
    let f = parse_fo("(forall x. ~~P(x)) -> ~~(forall x. P(x))").unwrap();
    let g = parse_fo(r"forall x. P(x) \/ ~P(x)").unwrap();
    let any = AnyChain::Finite(c.clone());
    let mut found = 0;
    for phi in [f, g] {
        if let SearchOutcome::Found(cert) = find_countermodel(&c, &phi, 2, &c.carrier().unwrap(), DEFAULT_CAP).unwrap()
        {
            found += 1;
            for inline in [None, Some(&any)] {
                let text = write_certificate(&cert, inline);
                let file = parse_certificate(&text).unwrap();
                assert_eq!(file.certificate, cert);
                assert_eq!(file.chain.is_some(), inline.is_some());
                assert!(verify_certificate(&c, &file.certificate).unwrap());
                assert_eq!(write_certificate(&file.certificate, file.chain.as_ref()), text);
            }
        }
    }
    assert!(found > 0, "excluded middle fails on a chain with a negation fixpoint");
}

#[test]
fn family_file_is_recognised() {
    let text = "mtlfamily 1\nfamily lukasiewicz\ndelta 1\n";
    match parse_any_chain(text).unwrap() {
        AnyChain::Rational(r) => assert!(r.has_delta()),
        AnyChain::Finite(_) => panic!("expected a rational family"),
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(parse_model("mtlmodel 1\ndomain 1\npred P 1\n1 3/2\n").is_err());
    assert!(parse_model("mtlmodel 1\ndomain 2\npred P 1\n1 1\n").is_err());
    assert!(parse_model("mtlmodel 1\ndomain 1\npred P 1\n1 1\n1 0\n").is_err());
    assert!(parse_chain("mtlchain 1\nsize 2\nlabels 0 1\ndelta 0\n0 0\n0\n").is_err());
    assert!(parse_certificate("mtlcert 2\n").is_err());
}
