//! Line-oriented text formats: chains, rational families, models and
//! certificates. Everything after `#` on a line is a comment; tokens may be
//! separated by any amount of whitespace.

mod certificate;
mod chain;
mod model;

use thiserror::Error;

use mtlfin_core::algebra::{ChainError, Violation};
use mtlfin_core::syntax::SyntaxError;

pub use certificate::{parse_certificate, write_certificate, CertificateFile};
pub use chain::{parse_any_chain, parse_chain, parse_chain_table, write_chain, AnyChain};
pub use model::{parse_model, write_model};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("chain violates {0}")]
    Law(Violation),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("formula: {0}")]
    Formula(#[from] SyntaxError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Whitespace-separated tokens with their line numbers, comments removed.
struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    at: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Tokens<'a> {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                items.push((i + 1, tok));
            }
            last_line = i + 1;
        }
        Tokens { items, at: 0, last_line }
    }

    fn line(&self) -> usize {
        self.items.get(self.at).map_or(self.last_line, |(l, _)| *l)
    }

    fn next(&mut self, what: &str) -> Result<&'a str, FormatError> {
        match self.items.get(self.at) {
            Some((_, t)) => {
                self.at += 1;
                Ok(t)
            }
            None => Err(syntax(self.last_line, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), FormatError> {
        let line = self.line();
        let t = self.next(&format!("`{word}`"))?;
        if t == word {
            Ok(())
        } else {
            Err(syntax(line, format!("expected `{word}`, found `{t}`")))
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, FormatError> {
        let line = self.line();
        let t = self.next(what)?;
        t.parse().map_err(|_| syntax(line, format!("expected {what}, found `{t}`")))
    }

    fn rational(&mut self, what: &str) -> Result<mtlfin_core::Rational, FormatError> {
        let line = self.line();
        let t = self.next(what)?;
        mtlfin_core::rational::parse_rational(t)
            .ok_or_else(|| syntax(line, format!("expected {what} (p/q), found `{t}`")))
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.items.get(self.at) {
            None => Ok(()),
            Some((l, t)) => Err(syntax(*l, format!("unexpected trailing `{t}`"))),
        }
    }
}

/// The name recorded in a leading `# chain NAME` comment, if any.
fn header_name(text: &str) -> Option<String> {
    text.lines()
        .map(str::trim)
        .find_map(|l| l.strip_prefix("# chain ").map(|n| n.trim().to_string()))
        .filter(|n| !n.is_empty())
}
