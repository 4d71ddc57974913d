//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mtlfin::suites::{run_suite, wnm_chains, SuiteConfig, SuiteReport};
use mtlfin_core::algebra::{make_chain, subchains, Family};
use mtlfin_core::rational::ratio;
use mtlfin_core::search::{find_countermodel, lift_prop, taut_upto_direct, verify_certificate, SearchOutcome};
use mtlfin_core::semantics::is_taut_prop;
use mtlfin_core::syntax::parse_prop;
use mtlfin_core::{Algebra, DEFAULT_CAP};

const SEED: u64 = 7;

type Check = fn(&SuiteConfig) -> Outcome;

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(names: &[&str], cfg: &SuiteConfig) -> (Vec<SuiteReport>, Duration) {
    let start = Instant::now();
    let reports = names.iter().map(|n| run_suite(n, cfg).expect("known suite")).collect();
    (reports, start.elapsed())
}

fn summarize(reports: &[SuiteReport], extra: Option<(bool, String)>) -> Outcome {
    let mut ok = reports.iter().all(SuiteReport::passed);
    let mut parts: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {} cases/{} checks/{} failures", r.name, r.cases, r.checks, r.failures.len()))
        .collect();
    if let Some((good, text)) = extra {
        ok &= good;
        parts.push(text);
    }
    for r in reports.iter().filter(|r| !r.passed()) {
        parts.push(r.to_text());
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn criterion_1(cfg: &SuiteConfig) -> Outcome {
    let (r, t) = suites(&["residuation"], cfg);
    summarize(&r, Some((t < Duration::from_secs(10), format!("{:.2} s (limit 10 s)", t.as_secs_f64()))))
}

fn criterion_2(cfg: &SuiteConfig) -> Outcome {
    let (r, t) = suites(&["lemma-tr"], cfg);
    let cases = r[0].cases == 200;
    summarize(
        &r,
        Some((
            cases && t < Duration::from_secs(120),
            format!("200 random formulas: {cases}, {:.2} s (limit 120 s)", t.as_secs_f64()),
        )),
    )
}

fn criterion_3(cfg: &SuiteConfig) -> Outcome {
    summarize(&suites(&["oracle-agreement"], cfg).0, None)
}

fn criterion_4(cfg: &SuiteConfig) -> Outcome {
    let names: Vec<String> = wnm_chains().iter().map(|c| c.name().to_string()).collect();
    let expected = names.len() == 4 && names[0] == "nm(4)" && names[1] == "nm(5)";
    summarize(&suites(&["lemma-gc", "lemma-gc1"], cfg).0, Some((expected, format!("chains {}", names.join(", ")))))
}

fn criterion_5(cfg: &SuiteConfig) -> Outcome {
    summarize(&suites(&["lemma-pred", "lemma-luk1", "lemma-luk"], cfg).0, None)
}

fn criterion_6(cfg: &SuiteConfig) -> Outcome {
    summarize(&suites(&["thm41-smtl", "thm41-bl"], cfg).0, None)
}

fn criterion_7(cfg: &SuiteConfig) -> Outcome {
    summarize(&suites(&["thm415-delta", "formula-f"], cfg).0, None)
}

fn criterion_8(cfg: &SuiteConfig) -> Outcome {
    let phi = parse_prop("(x & x) <-> (x & x & x)").unwrap();
    let psi = lift_prop(&phi);
    let l2 = make_chain(Family::Lukasiewicz, 2).unwrap();
    let l3 = make_chain(Family::Lukasiewicz, 3).unwrap();
    let a = is_taut_prop(&l2, &phi, DEFAULT_CAP).unwrap().is_tautology();
    let b = !is_taut_prop(&l3, &phi, DEFAULT_CAP).unwrap().is_tautology();
    let c = taut_upto_direct(&l2, &psi, 3, DEFAULT_CAP).unwrap().verdict.is_taut();
    let d = match find_countermodel(&l3, &psi, 1, &l3.carrier().unwrap(), DEFAULT_CAP).unwrap() {
        SearchOutcome::Found(cert) => {
            cert.model.domain_size() == 1
                && cert.model.get("P1", &[1]) == Some(&ratio(2, 3))
                && verify_certificate(&l3, &cert) == Ok(true)
        }
        _ => false,
    };
    let (r, _) = suites(&["thm413-demo"], cfg);
    summarize(
        &r,
        Some((a && b && c && d, format!("taut(L2)={a} not-taut(L3)={b} direct(L2,3)={c} singleton certificate={d}"))),
    )
}

fn criterion_9(cfg: &SuiteConfig) -> Outcome {
    let l6 = make_chain(Family::Lukasiewicz, 6).unwrap();
    let sizes: BTreeSet<usize> = subchains(&l6).unwrap().iter().map(Vec::len).collect();
    let exact = sizes == BTreeSet::from([2, 3, 4, 7]);
    summarize(&suites(&["divisibility"], cfg).0, Some((exact, format!("subchains(L6) sizes {sizes:?}"))))
}

fn criterion_10(cfg: &SuiteConfig) -> Outcome {
    summarize(&suites(&["fo-axioms"], cfg).0, None)
}

fn main() -> ExitCode {
    let cfg = SuiteConfig { trials: 200, seed: SEED, ..SuiteConfig::default() };
    let criteria: [(&str, Check); 10] = [
        ("residuation and chain laws, sizes up to 12", criterion_1),
        ("first-order value equals grounded value", criterion_2),
        ("grounded and direct bounded checks agree", criterion_3),
        ("WNM star translation and Godel fragment", criterion_4),
        ("PREDEF, Boolean collapse and luk_star", criterion_5),
        ("double-negation reductions for SMTL and BL", criterion_6),
        ("delta guard and formula (f)", criterion_7),
        ("propositional gap lifted to first order", criterion_8),
        ("subchains of L6", criterion_9),
        ("quantifier axioms are sound", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run(&cfg);
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict} {title} [{:.2} s] {}", i + 1, start.elapsed().as_secs_f64(), out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
