use mtlfin_core::algebra::{check_table, Algebra, Chain, ChainTable, RationalChain, RationalFamily};
use mtlfin_core::Rational;

use super::{header_name, syntax, FormatError, Tokens};

/// Reads a chain file without checking any law.
pub fn parse_chain_table(text: &str) -> Result<ChainTable, FormatError> {
    let mut t = Tokens::new(text);
    t.keyword("mtlchain")?;
    let line = t.line();
    let version = t.number("format version")?;
    if version != 1 {
        return Err(syntax(line, format!("unsupported chain format version {version}")));
    }
    t.keyword("size")?;
    let line = t.line();
    let k = t.number("chain size")?;
    if k == 0 {
        return Err(syntax(line, "chain size must be positive"));
    }
    t.keyword("labels")?;
    let labels = (0..k).map(|_| t.rational("label")).collect::<Result<Vec<Rational>, _>>()?;
    t.keyword("delta")?;
    let line = t.line();
    let has_delta = match t.number("0 or 1")? {
        0 => false,
        1 => true,
        d => return Err(syntax(line, format!("delta flag must be 0 or 1, found {d}"))),
    };
    let mut star = Vec::with_capacity(k * k);
    for _ in 0..k * k {
        star.push(t.number("star table entry")?);
    }
    t.finish()?;
    let name = header_name(text).unwrap_or_else(|| String::from("chain"));
    Ok(ChainTable { name, labels, star, has_delta })
}

/// Reads and validates a chain file; a law violation is an error naming the
/// law and its witness.
pub fn parse_chain(text: &str) -> Result<Chain, FormatError> {
    let table = parse_chain_table(text)?;
    if let Some(v) = check_table(&table).violations.into_iter().next() {
        return Err(FormatError::Law(v));
    }
    Ok(Chain::from_table(table)?)
}

/// Chain file text, preceded by a `# chain NAME` comment.
pub fn write_chain(chain: &Chain) -> String {
    format!("# chain {}\n{}", chain.name(), chain.canonical_text())
}

/// A finite table chain or a rational family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyChain {
    Finite(Chain),
    Rational(RationalChain),
}

impl AnyChain {
    pub fn name(&self) -> &str {
        match self {
            AnyChain::Finite(c) => c.name(),
            AnyChain::Rational(c) => c.name(),
        }
    }

    pub fn fingerprint(&self) -> String {
        match self {
            AnyChain::Finite(c) => c.fingerprint(),
            AnyChain::Rational(c) => c.fingerprint(),
        }
    }

    pub fn has_delta(&self) -> bool {
        match self {
            AnyChain::Finite(c) => c.has_delta(),
            AnyChain::Rational(c) => c.has_delta(),
        }
    }

    /// File text: a chain file or a family file.
    pub fn to_text(&self) -> String {
        match self {
            AnyChain::Finite(c) => write_chain(c),
            AnyChain::Rational(c) => format!("# chain {}\n{}", c.name(), c.canonical_text()),
        }
    }

    pub fn finite(&self) -> Option<&Chain> {
        match self {
            AnyChain::Finite(c) => Some(c),
            AnyChain::Rational(_) => None,
        }
    }
}

fn parse_family(text: &str) -> Result<RationalChain, FormatError> {
    let mut t = Tokens::new(text);
    t.keyword("mtlfamily")?;
    let line = t.line();
    if t.number("format version")? != 1 {
        return Err(syntax(line, "unsupported family format version"));
    }
    t.keyword("family")?;
    let family: RationalFamily = t.next("family name")?.parse()?;
    t.keyword("delta")?;
    let line = t.line();
    let chain = match t.number("0 or 1")? {
        0 => RationalChain::new(family),
        1 => RationalChain::new(family).with_delta(),
        d => return Err(syntax(line, format!("delta flag must be 0 or 1, found {d}"))),
    };
    t.finish()?;
    Ok(chain)
}

/// A chain file or a family file, told apart by the first keyword.
pub fn parse_any_chain(text: &str) -> Result<AnyChain, FormatError> {
    let first = Tokens::new(text).items.first().map(|(_, t)| *t);
    match first {
        Some("mtlfamily") => Ok(AnyChain::Rational(parse_family(text)?)),
        _ => Ok(AnyChain::Finite(parse_chain(text)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtlfin_core::algebra::{delta_expand, make_chain, Family, Law};

    #[test]
    fn round_trip() {
        for c in [make_chain(Family::Lukasiewicz, 3).unwrap(), delta_expand(&make_chain(Family::Nm, 5).unwrap())] {
            let back = parse_chain(&write_chain(&c)).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn tolerant_whitespace() {
        let text = "mtlchain   1\n\n size 2 # two elements\nlabels 0\t1\ndelta 0\n0 0 0 1\n";
        let c = parse_chain(text).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.name(), "chain");
    }

    #[test]
    fn law_violation_is_reported() {
        let text = "mtlchain 1\nsize 3\nlabels 0 1/2 1\ndelta 0\n0 0 0\n0 2 1\n0 1 2\n";
        match parse_chain(text) {
            Err(FormatError::Law(v)) => {
                assert_eq!(v.law, Law::Monotonicity);
                assert_eq!(v.witness.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_lines() {
        let err = parse_chain("mtlchain 1\nsize 2\nlabels 0 x\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
        assert!(parse_chain("mtlchain 1\nsize 2\nlabels 0 1\ndelta 0\n0 0 0\n").is_err());
    }

    #[test]
    fn family_files() {
        let c = RationalChain::new(RationalFamily::Product).with_delta();
        let any = AnyChain::Rational(c.clone());
        assert_eq!(parse_any_chain(&any.to_text()).unwrap(), any);
        assert_eq!(any.fingerprint(), c.fingerprint());
    }
}
