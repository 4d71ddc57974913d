//! The `mtlfin` command line.
//!
//! Exit codes: 0 success (tautology, all-pass, valid certificate, suite
//! passed); 1 a negative answer (countermodel found, law violated,
//! certificate rejected, suite failures); 2 usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use mtlfin_core::algebra::identities::{describe_names, identity_witness};
use mtlfin_core::algebra::{
    check_table, delta_expand, named_identity, negation_profile, ordinal_sum, subchains, Chain, RationalChain,
};
use mtlfin_core::grounding::{ground, taut_upto_grounded, Verdict};
use mtlfin_core::rational::{format_rational, parse_rational, unit_grid};
use mtlfin_core::reductions::{
    boolean_collapse, delta_guard, double_neg, godel_fragment, luk_star, model_plus, predef, wnm_star,
};
use mtlfin_core::search::{lift_prop, verify_certificate, SearchOutcome};
use mtlfin_core::semantics::{eval_fo, eval_prop, is_taut_prop, TautCheck};
use mtlfin_core::{Algebra, Assignment, Model, Rational, Valuation, DEFAULT_CAP};

use crate::formats::{parse_certificate, write_certificate, write_chain, write_model, AnyChain};
use crate::parallel::find_countermodel_par;
use crate::resolve::{builtin, Inputs};
use crate::suites::{describe, run_suite, SuiteConfig, SUITE_NAMES};
use crate::CliError;

/// Evaluates `$body` with `$alg` bound to the finite or the rational chain.
macro_rules! with_chain {
    ($c:expr, $alg:ident => $body:expr) => {
        match $c {
            AnyChain::Finite(ch) => {
                let $alg: &Chain = ch;
                $body
            }
            AnyChain::Rational(ch) => {
                let $alg: &RationalChain = ch;
                $body
            }
        }
    };
}

/// Environment variable overriding the per-size enumeration cap.
pub const CAP_VAR: &str = "MTLFIN_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "mtlfin",
    version,
    about = "Finite chains, finite models and bounded countermodels for first-order MTL logics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Build, validate and inspect chains.
    Chain {
        #[command(subcommand)]
        cmd: ChainCmd,
    },
    /// Parse a formula and print its canonical form.
    Parse {
        /// Formula text, or @FILE.
        formula: String,
        /// Read a propositional formula.
        #[arg(long)]
        prop: bool,
        /// Expand the derived connectives.
        #[arg(long)]
        desugar: bool,
        /// Print the universal closure.
        #[arg(long)]
        closure: bool,
        /// Also print free variables, signature and classicality.
        #[arg(long)]
        info: bool,
    },
    /// Truth value of a formula in a model (or under an assignment with --prop).
    Eval {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        formula: String,
        /// Model file (`-` for standard input).
        #[arg(long)]
        model: Option<String>,
        /// Free variables, e.g. `x=1,y=2` (1-based elements).
        #[arg(long, default_value = "")]
        valuation: String,
        /// Propositional assignment, e.g. `p=1/2,q=0`.
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long)]
        prop: bool,
    },
    /// Ground a closed formula over a domain of the given size.
    Ground {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        formula: String,
    },
    /// Bounded tautology check through grounding.
    Taut {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Propositional tautology check instead.
        #[arg(long)]
        prop: bool,
    },
    /// Apply a formula translation.
    Translate {
        #[arg(long, value_enum)]
        pass: Pass,
        #[arg(long)]
        formula: String,
    },
    /// Apply a model transformation.
    Modelmap {
        #[arg(long, value_enum)]
        pass: ModelPass,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        model: String,
    },
    /// The Godel chain on A+ and 0 of a WNM chain, with its embedding.
    Fragment {
        #[arg(long)]
        chain: String,
    },
    /// Search for a finite countermodel.
    Search {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        max_size: usize,
        /// Cell values restricted to fractions with denominator at most D.
        #[arg(long)]
        grid: Option<u32>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Leave the chain table out of the certificate.
        #[arg(long)]
        no_inline: bool,
    },
    /// Re-check a certificate.
    Verify {
        #[arg(long)]
        certificate: String,
        /// Chain to check against; defaults to the inline copy.
        #[arg(long)]
        chain: Option<String>,
    },
    /// Turn a propositional formula into a closed first-order one.
    Lift {
        /// Formula text, or @FILE.
        formula: String,
    },
    /// Run a verification suite (`all` runs every suite; no name lists them).
    Suite {
        name: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Line-oriented output without timings.
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ChainCmd {
    /// Print the chain file of a named family member.
    Make {
        /// boolean, lukasiewicz, godel, nm, dp, wnm or rational.
        family: String,
        /// Size parameter; the negation list for wnm; the family for rational.
        param: Option<String>,
        #[arg(long)]
        delta: bool,
    },
    /// Validate a chain file and report every law violation.
    Check {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Print tables and negation profile.
    Show {
        #[arg(default_value = "-")]
        chain: String,
    },
    /// List all subchains.
    Subchains {
        #[arg(default_value = "-")]
        chain: String,
    },
    /// Ordinal sum of an MV-chain and another chain.
    Sum { first: String, second: String },
    /// Add Delta to a chain.
    Delta {
        #[arg(default_value = "-")]
        chain: String,
    },
    /// Whether a chain satisfies a named identity (no name lists them).
    Identity { chain: String, name: Option<String> },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Pass {
    WnmStar,
    Predef,
    LukStar,
    DoubleNeg,
    DeltaGuard,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelPass {
    Plus,
    BooleanCollapse,
}

/// Output of a command plus its exit code.
struct Done {
    text: String,
    code: i32,
    notes: String,
}

impl Done {
    fn ok(text: String) -> Done {
        Done { text, code: 0, notes: String::new() }
    }

    fn with_code(text: String, code: i32) -> Done {
        Done { text, code, notes: String::new() }
    }

    fn note(mut self, note: String) -> Done {
        self.notes.push_str(&note);
        self
    }
}

/// Runs the command line; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut inputs = Inputs::new(stdin);
    match cap().and_then(|cap| dispatch(cli.cmd, &mut inputs, cap)) {
        Ok(done) => {
            let _ = out.write_all(done.text.as_bytes());
            let _ = err.write_all(done.notes.as_bytes());
            done.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn cap() -> Result<u128, CliError> {
    match std::env::var(CAP_VAR) {
        Err(_) => Ok(DEFAULT_CAP),
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_VAR} must be a positive integer, got `{v}`"))),
    }
}

fn dispatch(cmd: Cmd, inputs: &mut Inputs, cap: u128) -> Result<Done, CliError> {
    match cmd {
        Cmd::Chain { cmd } => chain_cmd(cmd, inputs),
        Cmd::Parse { formula, prop, desugar, closure, info } => {
            if prop {
                let mut f = inputs.prop(&formula)?;
                if desugar {
                    f = f.desugar();
                }
                let mut text = format!("{f}\n");
                if info {
                    let _ = writeln!(text, "variables {}", f.vars().join(" "));
                }
                return Ok(Done::ok(text));
            }
            let mut f = inputs.fo(&formula)?;
            if closure {
                f = f.universal_closure();
            }
            if desugar {
                f = f.desugar();
            }
            let mut text = format!("{f}\n");
            if info {
                let sig = f.signature()?;
                let sig: Vec<String> = sig.iter().map(|(p, a)| format!("{p}/{a}")).collect();
                let _ = writeln!(text, "free {}", f.free_vars().join(" "));
                let _ = writeln!(text, "signature {}", sig.join(" "));
                let _ = writeln!(text, "classical {}", f.is_classical());
            }
            Ok(Done::ok(text))
        }
        Cmd::Eval { chain, formula, model, valuation, assign, prop } => {
            let c = inputs.chain(&chain)?;
            if prop {
                let f = inputs.prop(&formula)?;
                let a = parse_assignment(&assign)?;
                let v = with_chain!(&c, alg => {
                    let a = to_elements(alg, a)?;
                    alg.label(&eval_prop(alg, &a, &f)?)
                });
                return Ok(Done::ok(format!("{}\n", format_rational(&v))));
            }
            let f = inputs.fo(&formula)?;
            let path = model.ok_or_else(|| CliError::Usage("eval needs --model (or --prop)".into()))?;
            let m = inputs.model(&path)?;
            let val = parse_valuation(&valuation)?;
            let v = with_chain!(&c, alg => {
                let m = model_elements(alg, &m)?;
                alg.label(&eval_fo(alg, &m, &val, &f)?)
            });
            Ok(Done::ok(format!("{}\n", format_rational(&v))))
        }
        Cmd::Ground { size, formula } => {
            let f = inputs.fo(&formula)?;
            let g = ground(&f, size)?;
            let mut text = format!("{}\n", g.formula);
            for (name, cell) in &g.legend {
                let tuple: Vec<String> = cell.tuple.iter().map(|j| j.to_string()).collect();
                let _ = writeln!(text, "# {name} = {}({})", cell.predicate, tuple.join(","));
            }
            Ok(Done::ok(text))
        }
        Cmd::Taut { chain, formula, bound, prop } => {
            let c = inputs.finite_chain(&chain)?;
            if prop {
                let f = inputs.prop(&formula)?;
                return Ok(match is_taut_prop(&c, &f, cap)? {
                    TautCheck::Tautology => Done::ok("tautology\n".into()),
                    TautCheck::Witness { assignment, value } => {
                        let mut text = format!("not a tautology: value {}\n", lab(&c, value));
                        for (p, v) in &assignment {
                            let _ = writeln!(text, "{p} = {}", lab(&c, *v));
                        }
                        Done::with_code(text, 1)
                    }
                });
            }
            let f = inputs.fo(&formula)?;
            let report = taut_upto_grounded(&c, &f, bound, cap)?;
            let note = closing_note(&report.closed_vars);
            Ok(match report.verdict {
                Verdict::TautUpTo(n) => Done::ok(format!("taut-up-to-{n}\n")).note(note),
                Verdict::Refuted { size, model, value } => {
                    let mut text = format!("refuted at n={size}: value {}\n", lab(&c, value));
                    if let Some(w) = &report.witness {
                        for (p, v) in w {
                            let _ = writeln!(text, "# {p} = {}", lab(&c, *v));
                        }
                    }
                    text.push_str(&write_model(&model.map(|x| c.label(x))));
                    Done::with_code(text, 1).note(note)
                }
            })
        }
        Cmd::Translate { pass, formula } => {
            let f = inputs.fo(&formula)?;
            let g = match pass {
                Pass::WnmStar => wnm_star(&f)?,
                Pass::Predef => predef(&f)?,
                Pass::LukStar => luk_star(&f)?,
                Pass::DoubleNeg => double_neg(&f)?,
                Pass::DeltaGuard => delta_guard(&f),
            };
            Ok(Done::ok(format!("{g}\n")))
        }
        Cmd::Modelmap { pass, chain, model } => {
            let c = inputs.finite_chain(&chain)?;
            let m = model_elements(&c, &inputs.model(&model)?)?;
            let out = match pass {
                ModelPass::Plus => model_plus(&c, &m)?.map(|x| c.label(x)),
                ModelPass::BooleanCollapse => {
                    let b = boolean_collapse(&c, &m)?;
                    b.map(|&x| Rational::from_integer(x.into()))
                }
            };
            Ok(Done::ok(write_model(&out)))
        }
        Cmd::Fragment { chain } => {
            let c = inputs.finite_chain(&chain)?;
            let frag = godel_fragment(&c)?;
            let mut text = write_chain(&frag.chain);
            for (i, e) in frag.embedding.iter().enumerate() {
                let _ = writeln!(text, "# embedding {i} -> {e} ({})", lab(&c, *e));
            }
            Ok(Done::ok(text))
        }
        Cmd::Search { chain, formula, max_size, grid, jobs, no_inline } => {
            let c = inputs.chain(&chain)?;
            let f = inputs.fo(&formula)?;
            let note = closing_note(&f.free_vars());
            let (outcome, kept) = match &c {
                AnyChain::Finite(ch) => {
                    let values: Vec<usize> = match grid {
                        None => ch.carrier().expect("finite"),
                        Some(d) => unit_grid(d).iter().filter_map(|r| ch.element(r)).collect(),
                    };
                    (find_countermodel_par(ch, &f, max_size, &values, cap, jobs)?, values.len())
                }
                AnyChain::Rational(ch) => {
                    let d = grid.ok_or_else(|| {
                        CliError::Usage(format!("{} has an infinite carrier: pass --grid D", ch.name()))
                    })?;
                    let values = ch.restrict_grid(&unit_grid(d));
                    (find_countermodel_par(ch, &f, max_size, &values, cap, jobs)?, values.len())
                }
            };
            if kept == 0 {
                return Err(CliError::Usage("the grid has no point in the carrier".into()));
            }
            Ok(match outcome {
                SearchOutcome::Found(cert) => {
                    let inline = (!no_inline).then_some(&c);
                    Done::with_code(write_certificate(&cert, inline), 1).note(note)
                }
                SearchOutcome::TautUpTo(n) => Done::ok(format!("taut-up-to-{n}\n")).note(note),
                SearchOutcome::Inconclusive(n) => {
                    Done::ok(format!("inconclusive-up-to-{n} (grid search; no countermodel found)\n")).note(note)
                }
            })
        }
        Cmd::Verify { certificate, chain } => {
            let file = parse_certificate(&inputs.read(&certificate)?)?;
            let c = match chain {
                Some(arg) => inputs.chain(&arg)?,
                None => match (file.chain, builtin(&file.certificate.chain_name)?) {
                    (Some(c), _) | (None, Some(c)) => c,
                    (None, None) => {
                        return Err(CliError::Usage(
                            "certificate has no inline chain and names no built-in chain: pass --chain".into(),
                        ))
                    }
                },
            };
            let ok = with_chain!(&c, alg => verify_certificate(alg, &file.certificate)?);
            Ok(if ok { Done::ok("valid\n".into()) } else { Done::with_code("invalid\n".into(), 1) })
        }
        Cmd::Lift { formula } => {
            let f = inputs.prop(&formula)?;
            Ok(Done::ok(format!("{}\n", lift_prop(&f))))
        }
        Cmd::Suite { name, trials, seed, depth, samples, machine } => {
            let cfg = SuiteConfig { trials, seed, depth, samples, cap };
            let names: Vec<&str> = match name.as_deref() {
                None => {
                    let mut text = String::new();
                    for n in SUITE_NAMES {
                        let _ = writeln!(text, "{n:<17} {}", describe(n).unwrap_or(""));
                    }
                    return Ok(Done::ok(text));
                }
                Some("all") => SUITE_NAMES.to_vec(),
                Some(n) => vec![n],
            };
            let mut text = String::new();
            let mut code = 0;
            for n in names {
                let r = run_suite(n, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
                text.push_str(&if machine { r.to_machine() } else { r.to_text() });
                code = code.max(r.exit_code());
            }
            Ok(Done::with_code(text, code))
        }
    }
}

fn chain_cmd(cmd: ChainCmd, inputs: &mut Inputs) -> Result<Done, CliError> {
    match cmd {
        ChainCmd::Make { family, param, delta } => {
            let spec = match param {
                Some(p) => format!("{family}:{p}"),
                None => family.clone(),
            };
            let c = builtin(&spec)?.ok_or_else(|| CliError::Usage(format!("unknown family `{family}`")))?;
            let c = if delta { delta_any(c) } else { c };
            Ok(Done::ok(c.to_text()))
        }
        ChainCmd::Check { file } => {
            let text = inputs.read(&file)?;
            if text.split_whitespace().next() == Some("mtlfamily") {
                // families are residuated by construction; confirm the file reads
                let c = crate::formats::parse_any_chain(&text)?;
                return Ok(Done::ok(format!("all-pass ({})\n", c.name())));
            }
            let table = crate::formats::parse_chain_table(&text)?;
            let report = check_table(&table);
            let code = if report.all_pass() { 0 } else { 1 };
            Ok(Done::with_code(format!("{report}\n"), code))
        }
        ChainCmd::Show { chain } => {
            let c = inputs.chain(&chain)?;
            Ok(Done::ok(match &c {
                AnyChain::Finite(ch) => show_chain(ch),
                AnyChain::Rational(ch) => format!(
                    "name {}\nfamily {}\ndelta {}\nfingerprint {}\n",
                    ch.name(),
                    ch.family(),
                    u8::from(ch.has_delta()),
                    ch.fingerprint()
                ),
            }))
        }
        ChainCmd::Subchains { chain } => {
            let c = inputs.finite_chain(&chain)?;
            let mut text = String::new();
            for s in subchains(&c)? {
                let labels: Vec<String> = s.iter().map(|&x| lab(&c, x)).collect();
                let _ = writeln!(text, "{{{}}}", labels.join(", "));
            }
            Ok(Done::ok(text))
        }
        ChainCmd::Sum { first, second } => {
            let a = inputs.finite_chain(&first)?;
            let b = inputs.finite_chain(&second)?;
            Ok(Done::ok(write_chain(&ordinal_sum(&a, &b)?)))
        }
        ChainCmd::Delta { chain } => Ok(Done::ok(delta_any(inputs.chain(&chain)?).to_text())),
        ChainCmd::Identity { chain, name } => {
            let Some(name) = name else {
                return Ok(Done::ok(describe_names()));
            };
            let c = inputs.finite_chain(&chain)?;
            let id = named_identity(&name)?;
            Ok(match identity_witness(&c, &id)? {
                None => Done::ok(format!("{name} holds in {}\n", c.name())),
                Some((a, v)) => {
                    let parts: Vec<String> = a.iter().map(|(x, e)| format!("{x}={}", lab(&c, *e))).collect();
                    Done::with_code(
                        format!("{name} fails in {} at {}: value {}\n", c.name(), parts.join(" "), lab(&c, v)),
                        1,
                    )
                }
            })
        }
    }
}

fn delta_any(c: AnyChain) -> AnyChain {
    match c {
        AnyChain::Finite(ch) => AnyChain::Finite(delta_expand(&ch)),
        AnyChain::Rational(ch) => AnyChain::Rational(ch.with_delta()),
    }
}

fn show_chain(c: &Chain) -> String {
    let k = c.size();
    let labels: Vec<String> = (0..k).map(|x| lab(c, x)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out =
        format!("name {}\nsize {k}\ndelta {}\nfingerprint {}\n", c.name(), u8::from(c.has_delta()), c.fingerprint());
    let _ = writeln!(out, "labels {}", labels.join(" "));
    for (title, op) in
        [("star", Chain::star_idx as fn(&Chain, usize, usize) -> usize), ("residuum", Chain::residuum_idx)]
    {
        let _ = writeln!(out, "{title}");
        for x in 0..k {
            let row: Vec<String> = (0..k).map(|y| format!("{:>width$}", labels[op(c, x, y)])).collect();
            let _ = writeln!(out, "  {}", row.join(" "));
        }
    }
    let p = negation_profile(c);
    let plus: Vec<String> = p.a_plus.iter().map(|&x| lab(c, x)).collect();
    let _ = writeln!(out, "a_plus {}", plus.join(" "));
    match p.fixpoint {
        Some(x) => {
            let _ = writeln!(out, "fixpoint {}", lab(c, x));
        }
        None => out.push_str("fixpoint none\n"),
    }
    out
}

fn lab(c: &Chain, x: usize) -> String {
    format_rational(&c.label(&x))
}

fn closing_note(vars: &[String]) -> String {
    if vars.is_empty() {
        String::new()
    } else {
        format!("note: free variables {} were universally closed\n", vars.join(", "))
    }
}

fn pairs(text: &str) -> impl Iterator<Item = Result<(&str, &str), CliError>> {
    text.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|item| item.split_once('=').ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got `{item}`"))))
}

fn parse_valuation(text: &str) -> Result<Valuation, CliError> {
    pairs(text)
        .map(|p| {
            let (x, j) = p?;
            let j = j.parse().map_err(|_| CliError::Usage(format!("`{j}` is not a domain element")))?;
            Ok((x.to_string(), j))
        })
        .collect()
}

fn parse_assignment(text: &str) -> Result<Assignment<Rational>, CliError> {
    pairs(text)
        .map(|p| {
            let (x, v) = p?;
            let v = parse_rational(v).ok_or_else(|| CliError::Usage(format!("`{v}` is not a rational")))?;
            Ok((x.to_string(), v))
        })
        .collect()
}

fn not_in_carrier<A: Algebra>(alg: &A, v: &Rational) -> CliError {
    CliError::Usage(format!("{} is not an element of {}", format_rational(v), alg.name()))
}

fn to_elements<A: Algebra>(alg: &A, a: Assignment<Rational>) -> Result<Assignment<A::Elem>, CliError> {
    a.into_iter().map(|(x, v)| alg.element(&v).map(|e| (x, e)).ok_or_else(|| not_in_carrier(alg, &v))).collect()
}

fn model_elements<A: Algebra>(alg: &A, m: &Model<Rational>) -> Result<Model<A::Elem>, CliError> {
    let mut bad = None;
    let out = m.try_map(|v| {
        let e = alg.element(v);
        if e.is_none() && bad.is_none() {
            bad = Some(v.clone());
        }
        e
    });
    out.ok_or_else(|| not_in_carrier(alg, &bad.unwrap_or_default()))
}
