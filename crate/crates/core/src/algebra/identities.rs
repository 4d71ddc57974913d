//! Axiom schemata as propositional identities, with `x`, `y`, `z` standing
//! for the schematic letters.
//!
//! Parameterized names: `g_<n>` (n ≥ 2), `c_<n>` (n ≥ 1) and `d_<n>_<m>`
//! (2 ≤ m < n).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Chain, ChainError};
use crate::semantics::{is_taut_prop, TautCheck};
use crate::syntax::{parse_prop, BinOp, PropFormula};
use crate::DEFAULT_CAP;

/// Fixed-name schemata understood by [`named_identity`].
pub const IDENTITY_NAMES: &[&str] = &[
    "A1",
    "A2",
    "A3",
    "A4",
    "A5",
    "A6",
    "A7a",
    "A7b",
    "A8",
    "A9",
    "prelinearity",
    "wnm",
    "id",
    "dp",
    "s",
    "rdp",
    "nmg",
    "inv",
    "div",
    "c",
    "delta1",
    "delta2",
    "delta3",
    "delta4",
    "delta5",
    "f",
];

fn fixed(name: &str) -> Option<&'static str> {
    Some(match name {
        "A1" => "(x -> y) -> ((y -> z) -> (x -> z))",
        "A2" => "(x & y) -> x",
        "A3" => "(x & y) -> (y & x)",
        "A4" => "(x /\\ y) -> x",
        "A5" => "(x /\\ y) -> (y /\\ x)",
        "A6" => "(x & (x -> y)) -> (y /\\ x)",
        "A7a" => "(x -> (y -> z)) -> ((x & y) -> z)",
        "A7b" => "((x & y) -> z) -> (x -> (y -> z))",
        "A8" => "((x -> y) -> z) -> (((y -> x) -> z) -> z)",
        "A9" => "bot -> x",
        "prelinearity" => "(x -> y) \\/ (y -> x)",
        "wnm" => "~(x & y) \\/ ((x /\\ y) -> (x & y))",
        "id" => "x -> (x & x)",
        "dp" => "x \\/ ~(x & x)",
        "s" => "~(~x /\\ x)",
        "rdp" => "(x -> ~x) \\/ ~~x",
        "nmg" => "(~~x -> x) \\/ ~~x",
        "inv" => "~~x -> x",
        "div" => "(x /\\ y) -> (x & (x -> y))",
        "c" => "~x \\/ ((x -> (x & y)) -> y)",
        "delta1" => "!x \\/ ~!x",
        "delta2" => "!(x \\/ y) -> (!x \\/ !y)",
        "delta3" => "!x -> x",
        "delta4" => "!x -> !!x",
        "delta5" => "!(x -> y) -> (!x -> !y)",
        "f" => "!(x <-> ~x) -> x",
        _ => return None,
    })
}

fn params(rest: &str) -> Option<Vec<usize>> {
    rest.split('_').map(|p| p.parse().ok()).collect()
}

/// `⋁_{i<n} (x_i → x_{i+1})` over `x_0 … x_n`.
fn g_n(n: usize) -> PropFormula {
    let parts =
        (0..n).map(|i| PropFormula::var(format!("x{i}")).implies(PropFormula::var(format!("x{}", i + 1)))).collect();
    PropFormula::fold_right(BinOp::Or, parts).expect("n >= 1")
}

/// Looks up a schema by name.
pub fn named_identity(name: &str) -> Result<PropFormula, ChainError> {
    if let Some(text) = fixed(name) {
        return Ok(parse_prop(text).expect("library schemata parse"));
    }
    let bad = || ChainError::InvalidParameter(format!("unknown identity `{name}`"));
    let x = PropFormula::var("x");
    if let Some(rest) = name.strip_prefix("g_") {
        return match params(rest).as_deref() {
            Some(&[n]) if n >= 2 => Ok(g_n(n)),
            _ => Err(bad()),
        };
    }
    if let Some(rest) = name.strip_prefix("c_") {
        return match params(rest).as_deref() {
            Some(&[n]) if n >= 1 => Ok(x.clone().power(n).implies(x.power(n + 1))),
            _ => Err(bad()),
        };
    }
    if let Some(rest) = name.strip_prefix("d_") {
        return match params(rest).as_deref() {
            Some(&[n, m]) if 2 <= m && m < n => {
                let lhs = x.clone().power(m - 1).iff(x.clone().implies(x.clone().power(n)));
                Ok(lhs.power(n).implies(x.power(n)))
            }
            _ => Err(bad()),
        };
    }
    Err(bad())
}

/// The lexicographically first assignment falsifying `identity`, if any.
pub fn identity_witness(
    chain: &Chain,
    identity: &PropFormula,
) -> Result<Option<(crate::Assignment<usize>, usize)>, ChainError> {
    Ok(match is_taut_prop(chain, identity, DEFAULT_CAP)? {
        TautCheck::Tautology => None,
        TautCheck::Witness { assignment, value } => Some((assignment, value)),
    })
}

/// Whether the identity evaluates to top under every assignment.
pub fn satisfies_identity(chain: &Chain, identity: &PropFormula) -> Result<bool, ChainError> {
    Ok(identity_witness(chain, identity)?.is_none())
}

/// Name list for help output, parameterized forms included.
pub fn describe_names() -> String {
    let mut s = IDENTITY_NAMES.join(" ");
    s.push_str(" g_<n> c_<n> d_<n>_<m>");
    s
}
