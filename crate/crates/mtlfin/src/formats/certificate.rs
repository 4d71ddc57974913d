use std::fmt::Write;

use mtlfin_core::rational::{format_rational, parse_rational};
use mtlfin_core::search::Certificate;
use mtlfin_core::syntax::parse_fo;
use mtlfin_core::Valuation;

use super::chain::{parse_any_chain, AnyChain};
use super::model::{parse_model, write_model};
use super::{syntax, FormatError};

/// A certificate plus the optional inline copy of its chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub certificate: Certificate,
    pub chain: Option<AnyChain>,
}

pub fn write_certificate(cert: &Certificate, chain: Option<&AnyChain>) -> String {
    let mut out = String::from("mtlcert 1\n");
    let _ = writeln!(out, "chain {}", cert.chain_name);
    let _ = writeln!(out, "fingerprint {}", cert.fingerprint);
    let _ = writeln!(out, "formula {}", cert.formula);
    out.push_str("valuation");
    for (x, j) in &cert.valuation {
        let _ = write!(out, " {x}={j}");
    }
    out.push('\n');
    if let Some(c) = chain {
        out.push_str("begin chain\n");
        out.push_str(&c.to_text());
        out.push_str("end chain\n");
    }
    out.push_str("begin model\n");
    out.push_str(&write_model(&cert.model));
    out.push_str("end model\n");
    let _ = writeln!(out, "value {}", format_rational(&cert.value));
    out
}

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    if rest.is_empty() {
        Some("")
    } else if rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, FormatError> {
    // Header lines are keyed; blocks are copied verbatim to their own parsers.
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    let mut next_line = |what: &str| -> Result<(usize, &str), FormatError> {
        loop {
            match lines.next() {
                None => return Err(syntax(0, format!("unexpected end of certificate, expected {what}"))),
                Some((n, l)) => {
                    let l = l.trim();
                    if !l.is_empty() && !l.starts_with('#') {
                        return Ok((n, l));
                    }
                }
            }
        }
    };
    let expect = |(n, l): (usize, &str), key: &str| -> Result<String, FormatError> {
        field(l, key).map(str::to_string).ok_or_else(|| syntax(n, format!("expected `{key}`, found `{l}`")))
    };

    let (n, l) = next_line("`mtlcert 1`")?;
    if l.split_whitespace().collect::<Vec<_>>() != ["mtlcert", "1"] {
        return Err(syntax(n, "expected `mtlcert 1`"));
    }
    let chain_name = expect(next_line("chain")?, "chain")?;
    let fingerprint = expect(next_line("fingerprint")?, "fingerprint")?;
    let formula_line = next_line("formula")?;
    let formula = parse_fo(&expect(formula_line, "formula")?)?;
    let val_line = next_line("valuation")?;
    let mut valuation = Valuation::new();
    for item in expect(val_line, "valuation")?.split_whitespace() {
        let (x, j) = item
            .split_once('=')
            .and_then(|(x, j)| Some((x, j.parse::<usize>().ok()?)))
            .ok_or_else(|| syntax(val_line.0, format!("bad valuation entry `{item}`")))?;
        valuation.insert(x.to_string(), j);
    }

    let mut chain = None;
    let mut model = None;
    let value;
    loop {
        let (n, l) = next_line("`value`")?;
        if let Some(v) = field(l, "value") {
            value = parse_rational(v).ok_or_else(|| syntax(n, format!("bad value `{v}`")))?;
            break;
        }
        let Some(kind) = field(l, "begin") else {
            return Err(syntax(n, format!("unexpected `{l}`")));
        };
        let kind = kind.to_string();
        let mut body = String::new();
        loop {
            let (_, l) = next_line(&format!("`end {kind}`"))?;
            if field(l, "end") == Some(kind.as_str()) {
                break;
            }
            body.push_str(l);
            body.push('\n');
        }
        match kind.as_str() {
            "chain" => chain = Some(parse_any_chain(&format!("# chain {chain_name}\n{body}"))?),
            "model" => model = Some(parse_model(&body)?),
            other => return Err(syntax(n, format!("unknown block `{other}`"))),
        }
    }
    let model = model.ok_or_else(|| syntax(0, "certificate has no model block"))?;
    Ok(CertificateFile {
        certificate: Certificate { chain_name, fingerprint, formula, model, valuation, value },
        chain,
    })
}
