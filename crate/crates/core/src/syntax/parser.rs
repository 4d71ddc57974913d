use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::formula::{Atom, BinOp, FoFormula, PropFormula, Quantifier, UnOp};
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    Delta,
    Amp,
    Wedge,
    Vee,
    Arrow,
    DArrow,
    Forall,
    Exists,
    Bot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Not => "`~`".into(),
            Tok::Delta => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Vee => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn error(pos: Pos, message: impl Into<String>) -> SyntaxError {
    SyntaxError::Parse { line: pos.line, column: pos.column, message: message.into() }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let rest = |s: &str| {
            let n = s.chars().count();
            i + n <= chars.len() && chars[i..i + n].iter().copied().eq(s.chars())
        };
        let (tok, width) = if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        } else if c.is_whitespace() {
            (None, 1)
        } else if rest("<->") {
            (Some(Tok::DArrow), 3)
        } else if rest("->") {
            (Some(Tok::Arrow), 2)
        } else if rest("/\\") {
            (Some(Tok::Wedge), 2)
        } else if rest("\\/") {
            (Some(Tok::Vee), 2)
        } else if is_ident_start(c) {
            let start = i;
            let mut j = i;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "bot" => Tok::Bot,
                _ => Tok::Ident(word),
            };
            (Some(tok), j - start)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '~' | '¬' => Tok::Not,
                '!' | 'Δ' => Tok::Delta,
                '&' | '⊙' => Tok::Amp,
                '∧' => Tok::Wedge,
                '∨' => Tok::Vee,
                '→' => Tok::Arrow,
                '↔' => Tok::DArrow,
                '∀' => Tok::Forall,
                '∃' => Tok::Exists,
                '⊥' => Tok::Bot,
                _ => return Err(error(pos, format!("unexpected character `{c}`"))),
            };
            (Some(tok), 1)
        };
        if let Some(tok) = tok {
            out.push((tok, pos));
        }
        i += width;
        column += width;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
    propositional: bool,
    arities: BTreeMap<String, usize>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(error(self.pos(), format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.at += 1;
                Ok(s)
            }
            other => Err(error(self.pos(), format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn formula(&mut self) -> Result<FoFormula, SyntaxError> {
        let mut left = self.implication()?;
        while self.eat(&Tok::DArrow) {
            let right = self.implication()?;
            left = left.iff(right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<FoFormula, SyntaxError> {
        let left = self.left_assoc(2)?;
        if self.eat(&Tok::Arrow) {
            let right = self.implication()?;
            return Ok(left.implies(right));
        }
        Ok(left)
    }

    /// Levels 2 (`\/`), 1 (`/\`), 0 (`&`), all left-associative.
    fn left_assoc(&mut self, level: u8) -> Result<FoFormula, SyntaxError> {
        let (tok, op) = match level {
            2 => (Tok::Vee, BinOp::Or),
            1 => (Tok::Wedge, BinOp::And),
            _ => (Tok::Amp, BinOp::StrongAnd),
        };
        let next = |p: &mut Parser| if level == 0 { p.unary() } else { p.left_assoc(level - 1) };
        let mut left = next(self)?;
        while self.eat(&tok) {
            let right = next(self)?;
            left = FoFormula::bin(op, left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<FoFormula, SyntaxError> {
        if self.eat(&Tok::Not) {
            return Ok(FoFormula::Unary(UnOp::Not, Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Delta) {
            return Ok(FoFormula::Unary(UnOp::Delta, Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<FoFormula, SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Bot => {
                self.at += 1;
                Ok(FoFormula::Bot)
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Tok::Forall | Tok::Exists => {
                if self.propositional {
                    return Err(error(pos, "quantifiers are not allowed in a propositional formula"));
                }
                let q = if self.eat(&Tok::Forall) {
                    Quantifier::Forall
                } else {
                    self.at += 1;
                    Quantifier::Exists
                };
                let var = self.ident("a variable")?;
                self.expect(&Tok::Dot)?;
                let body = self.formula()?;
                Ok(FoFormula::Quant(q, var, Box::new(body)))
            }
            Tok::Ident(name) => {
                self.at += 1;
                let mut args = Vec::new();
                if self.peek() == &Tok::LParen {
                    if self.propositional {
                        return Err(error(
                            self.pos(),
                            format!("`{name}` applied to arguments in a propositional formula"),
                        ));
                    }
                    self.at += 1;
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.ident("a variable")?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(&Tok::Comma)?;
                        }
                    }
                }
                match self.arities.get(&name) {
                    Some(&n) if n != args.len() => {
                        return Err(error(pos, format!("predicate {name} used with arity {n} and {}", args.len())))
                    }
                    _ => {
                        self.arities.insert(name.clone(), args.len());
                    }
                }
                Ok(FoFormula::Atom(Atom { predicate: name, args }))
            }
            other => Err(error(pos, format!("expected a formula, found {}", other.describe()))),
        }
    }

    fn finish(mut self) -> Result<FoFormula, SyntaxError> {
        let f = self.formula()?;
        if self.peek() != &Tok::End {
            return Err(error(self.pos(), format!("unexpected {} after formula", self.peek().describe())));
        }
        Ok(f)
    }
}

fn run(text: &str, propositional: bool) -> Result<FoFormula, SyntaxError> {
    let tokens = tokenize(text)?;
    Parser { tokens, at: 0, propositional, arities: BTreeMap::new() }.finish()
}

/// Parses a first-order formula. Identifiers without an argument list are
/// nullary predicates.
pub fn parse_fo(text: &str) -> Result<FoFormula, SyntaxError> {
    run(text, false)
}

/// Parses a propositional formula: no quantifiers, no argument lists.
pub fn parse_prop(text: &str) -> Result<PropFormula, SyntaxError> {
    run(text, true)?.to_prop()
}

impl core::str::FromStr for FoFormula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_fo(s)
    }
}

impl core::str::FromStr for PropFormula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_prop(s)
    }
}
