//! Turning command-line arguments into chains, formulas and models.
//!
//! A chain argument is either a built-in name or a file. Built-in names:
//! `boolean`, `lukasiewicz:2` / `lukasiewicz(2)` / `L2` / `Ł2`, `godel:4` /
//! `G4`, `nm:5` / `NM5`, `dp:4` / `DP4`, `wnm:4,2,2,0,0`, `rational:product`,
//! `delta:SPEC` / `delta(SPEC)`, `sum(A,B)`. The names printed by chains
//! built this way parse back to the same chain.

use std::io::Read;

use mtlfin_core::algebra::{
    delta_expand, make_chain, make_wnm_chain, ordinal_sum, Chain, ChainError, Family, RationalChain, RationalFamily,
};
use mtlfin_core::syntax::{parse_fo, parse_prop};
use mtlfin_core::{FoFormula, Model, PropFormula, Rational};

use crate::formats::{parse_any_chain, parse_model, AnyChain, FormatError};
use crate::CliError;

/// Where `-` and file arguments are read from.
pub struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl<'a> Inputs<'a> {
    pub fn new(stdin: &'a mut dyn Read) -> Inputs<'a> {
        Inputs { stdin, stdin_used: false }
    }

    /// Contents of a file, or of standard input for `-`.
    pub fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
        }
    }

    /// Formula text: literal, or the contents of a file for `@path`.
    pub fn formula_text(&mut self, arg: &str) -> Result<String, CliError> {
        match arg.strip_prefix('@') {
            Some(path) => Ok(self.read(path)?.trim().to_string()),
            None => Ok(arg.to_string()),
        }
    }

    pub fn fo(&mut self, arg: &str) -> Result<FoFormula, CliError> {
        Ok(parse_fo(&self.formula_text(arg)?)?)
    }

    pub fn prop(&mut self, arg: &str) -> Result<PropFormula, CliError> {
        Ok(parse_prop(&self.formula_text(arg)?)?)
    }

    pub fn model(&mut self, path: &str) -> Result<Model<Rational>, CliError> {
        Ok(parse_model(&self.read(path)?)?)
    }

    pub fn chain(&mut self, arg: &str) -> Result<AnyChain, CliError> {
        if let Some(c) = builtin(arg)? {
            return Ok(c);
        }
        if arg != "-" && !std::path::Path::new(arg).exists() {
            return Err(CliError::Usage(format!("`{arg}` is neither a known chain nor a file")));
        }
        let text = self.read(arg)?;
        Ok(parse_any_chain(&text)?)
    }

    pub fn finite_chain(&mut self, arg: &str) -> Result<Chain, CliError> {
        match self.chain(arg)? {
            AnyChain::Finite(c) => Ok(c),
            AnyChain::Rational(c) => {
                Err(CliError::Usage(format!("{} is not a finite chain", mtlfin_core::Algebra::name(&c))))
            }
        }
    }
}

fn invalid(msg: String) -> CliError {
    CliError::Format(FormatError::Chain(ChainError::InvalidParameter(msg)))
}

fn number(s: &str) -> Option<usize> {
    let digits: String = s
        .chars()
        .map(|c| match c {
            '₀'..='₉' => char::from_u32(c as u32 - '₀' as u32 + '0' as u32).unwrap_or(c),
            c => c,
        })
        .collect();
    digits.parse().ok()
}

/// Splits `A,B` at the comma outside any brackets.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn family_chain(family: Family, arg: &str) -> Result<AnyChain, CliError> {
    let n = number(arg).ok_or_else(|| invalid(format!("bad size `{arg}` for {family}")))?;
    Ok(AnyChain::Finite(make_chain(family, n).map_err(FormatError::from)?))
}

fn wnm_chain(list: &str) -> Result<AnyChain, CliError> {
    let neg = list
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| invalid(format!("bad negation list `{list}`")))?;
    Ok(AnyChain::Finite(make_wnm_chain(&neg).map_err(FormatError::from)?))
}

fn finite(c: AnyChain) -> Result<Chain, CliError> {
    match c {
        AnyChain::Finite(c) => Ok(c),
        AnyChain::Rational(_) => Err(invalid("ordinal sums need finite chains".into())),
    }
}

/// A built-in chain, `None` when the argument is not a built-in name.
pub fn builtin(arg: &str) -> Result<Option<AnyChain>, CliError> {
    let s = arg.trim();
    let lower = s.to_lowercase();
    if matches!(lower.as_str(), "boolean" | "bool") {
        return Ok(Some(AnyChain::Finite(make_chain(Family::Boolean, 1).map_err(FormatError::from)?)));
    }
    // head(args) and head:args
    let paren = s.find('(').filter(|_| s.ends_with(')'));
    let colon = s.find(':');
    let call = match (paren, colon) {
        (Some(p), c) if c.is_none_or(|c| p < c) => Some((&s[..p], &s[p + 1..s.len() - 1])),
        (_, Some(c)) => Some((&s[..c], &s[c + 1..])),
        _ => None,
    };
    if let Some((head, rest)) = call {
        let head = head.to_lowercase();
        return match head.as_str() {
            "delta" => {
                let inner = builtin(rest)?.ok_or_else(|| invalid(format!("unknown chain `{rest}`")))?;
                Ok(Some(match inner {
                    AnyChain::Finite(c) => AnyChain::Finite(delta_expand(&c)),
                    AnyChain::Rational(c) => AnyChain::Rational(c.with_delta()),
                }))
            }
            "rational" => {
                let fam: RationalFamily = rest.parse().map_err(FormatError::from)?;
                Ok(Some(AnyChain::Rational(RationalChain::new(fam))))
            }
            "wnm" => wnm_chain(rest.trim_start_matches('[').trim_end_matches(']')).map(Some),
            "sum" => {
                let (a, b) = split_pair(rest).ok_or_else(|| invalid(format!("sum needs two chains: `{rest}`")))?;
                let get = |x: &str| -> Result<Chain, CliError> {
                    finite(builtin(x)?.ok_or_else(|| invalid(format!("unknown chain `{x}`")))?)
                };
                let c = ordinal_sum(&get(a)?, &get(b)?).map_err(FormatError::from)?;
                Ok(Some(AnyChain::Finite(c)))
            }
            h => match h.parse::<Family>() {
                Ok(f) => family_chain(f, rest).map(Some),
                Err(_) => Ok(None),
            },
        };
    }
    if let Some(rest) = s.strip_prefix("wnm[").and_then(|r| r.strip_suffix(']')) {
        return wnm_chain(rest).map(Some);
    }
    // short names: L2, Ł2, G4, NM5, DP4
    let split = s.find(|c: char| c.is_ascii_digit() || ('₀'..='₉').contains(&c));
    if let Some(i) = split.filter(|&i| i > 0) {
        let family = match s[..i].to_uppercase().as_str() {
            "L" | "Ł" => Some(Family::Lukasiewicz),
            "G" => Some(Family::Godel),
            "NM" => Some(Family::Nm),
            "DP" => Some(Family::Dp),
            _ => None,
        };
        if let Some(f) = family {
            if number(&s[i..]).is_some() {
                return family_chain(f, &s[i..]).map(Some);
            }
        }
    }
    Ok(None)
}
