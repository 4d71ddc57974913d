use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{Algebra, ChainError};
use crate::rational::{in_unit_interval, one, zero, Rational};

/// Unvalidated chain data: labels plus a star table by carrier index.
///
/// This is what the chain file format carries. Turn it into a [`Chain`] with
/// [`Chain::from_table`], which checks every law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTable {
    pub name: String,
    pub labels: Vec<Rational>,
    /// Row-major `k × k` table, `star[x * k + y]`.
    pub star: Vec<usize>,
    pub has_delta: bool,
}

impl ChainTable {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn star_at(&self, x: usize, y: usize) -> usize {
        self.star[x * self.size() + y]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    Shape,
    Bounds,
    Order,
    Commutativity,
    Unit,
    Monotonicity,
    Associativity,
    Residuation,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Shape => "shape",
            Law::Bounds => "bounds",
            Law::Order => "order",
            Law::Commutativity => "commutativity",
            Law::Unit => "unit",
            Law::Monotonicity => "monotonicity",
            Law::Associativity => "associativity",
            Law::Residuation => "residuation",
        };
        f.write_str(s)
    }
}

/// A failed law together with the first carrier indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        if !self.witness.is_empty() {
            f.write_str(" at (")?;
            for (i, w) in self.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Outcome of [`check_table`]: at most one violation per law.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainReport {
    pub violations: Vec<Violation>,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_pass() {
            return f.write_str("all-pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "violation {v}")?;
        }
        Ok(())
    }
}

/// Checks every MTL-chain law on an unvalidated table.
///
/// The residuum is recomputed from the star as `max{z : z*x ≤ y}` and the
/// residuation biconditional is checked exhaustively against it.
pub fn check_table(table: &ChainTable) -> ChainReport {
    let k = table.size();
    let mut report = ChainReport::default();
    let mut flag = |law: Law, witness: Vec<usize>| {
        if !report.violations.iter().any(|v| v.law == law) {
            report.violations.push(Violation { law, witness });
        }
    };

    if k == 0 || table.star.len() != k * k || table.star.iter().any(|&v| v >= k) {
        flag(Law::Shape, Vec::new());
        return report;
    }

    let labels = &table.labels;
    if labels.iter().any(|l| !in_unit_interval(l)) || labels[k - 1] != one() || (k > 1 && labels[0] != zero()) {
        flag(Law::Bounds, Vec::new());
    }
    if let Some(i) = (1..k).find(|&i| labels[i - 1] >= labels[i]) {
        flag(Law::Order, vec![i - 1, i]);
    }

    let s = |x: usize, y: usize| table.star[x * k + y];
    let top = k - 1;

    'comm: for x in 0..k {
        for y in 0..k {
            if s(x, y) != s(y, x) {
                flag(Law::Commutativity, vec![x, y]);
                break 'comm;
            }
        }
    }
    if let Some(x) = (0..k).find(|&x| s(top, x) != x || s(x, top) != x) {
        flag(Law::Unit, vec![x]);
    }
    'mono: for x in 0..k.saturating_sub(1) {
        for y in 0..k {
            if s(x, y) > s(x + 1, y) {
                flag(Law::Monotonicity, vec![x, x + 1, y]);
                break 'mono;
            }
            if s(y, x) > s(y, x + 1) {
                flag(Law::Monotonicity, vec![y, x, x + 1]);
                break 'mono;
            }
        }
    }
    'assoc: for x in 0..k {
        for y in 0..k {
            let xy = s(x, y);
            for z in 0..k {
                if s(xy, z) != s(x, s(y, z)) {
                    flag(Law::Associativity, vec![x, y, z]);
                    break 'assoc;
                }
            }
        }
    }
    'res: for x in 0..k {
        for y in 0..k {
            let candidate = (0..k).rev().find(|&z| s(z, x) <= y);
            let Some(r) = candidate else {
                flag(Law::Residuation, vec![x, y]);
                break 'res;
            };
            for z in 0..k {
                if (s(z, x) <= y) != (z <= r) {
                    flag(Law::Residuation, vec![x, y, z]);
                    break 'res;
                }
            }
        }
    }
    report
}

/// Derives the residuum table `r(x, y) = max{z : star(z, x) ≤ y}`.
///
/// Fails with [`ChainError::NoResiduum`] when the maximum does not exist or
/// the set `{z : star(z, x) ≤ y}` is not downward closed (non-monotone star).
pub fn residuum_from_star(star: &[usize], k: usize) -> Result<Vec<usize>, ChainError> {
    if star.len() != k * k {
        return Err(ChainError::InvalidParameter(format!("star table has {} entries, expected {}", star.len(), k * k)));
    }
    let s = |x: usize, y: usize| star[x * k + y];
    let mut res = vec![0; k * k];
    for x in 0..k {
        for y in 0..k {
            let r = (0..k).rev().find(|&z| s(z, x) <= y).ok_or(ChainError::NoResiduum { x, y })?;
            if (0..r).any(|z| s(z, x) > y) {
                return Err(ChainError::NoResiduum { x, y });
            }
            res[x * k + y] = r;
        }
    }
    Ok(res)
}

/// A validated finite MTL-chain. Elements are carrier indices `0..k`,
/// ordered like their labels; `0` is bottom and `k - 1` is top.
///
/// The one-element chain (label `1`) is allowed as the trivial algebra in
/// which bottom and top coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    name: String,
    labels: Vec<Rational>,
    star: Vec<usize>,
    residuum: Vec<usize>,
    has_delta: bool,
}

impl Chain {
    pub fn from_table(table: ChainTable) -> Result<Chain, ChainError> {
        let report = check_table(&table);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(ChainError::LawViolation(v));
        }
        let k = table.size();
        let residuum = residuum_from_star(&table.star, k)?;
        Ok(Chain { name: table.name, labels: table.labels, star: table.star, residuum, has_delta: table.has_delta })
    }

    /// Re-runs the law checks, using the stored residuum for residuation.
    pub fn check(&self) -> ChainReport {
        let mut report = check_table(&self.table());
        let k = self.size();
        if !report.violates(Law::Residuation) {
            'res: for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        if (self.star_idx(z, x) <= y) != (z <= self.residuum_idx(x, y)) {
                            report.violations.push(Violation { law: Law::Residuation, witness: vec![x, y, z] });
                            break 'res;
                        }
                    }
                }
            }
        }
        report
    }

    pub fn table(&self) -> ChainTable {
        ChainTable {
            name: self.name.clone(),
            labels: self.labels.clone(),
            star: self.star.clone(),
            has_delta: self.has_delta,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Rational] {
        &self.labels
    }

    pub fn top_index(&self) -> usize {
        self.size() - 1
    }

    #[inline]
    pub fn star_idx(&self, x: usize, y: usize) -> usize {
        self.star[x * self.labels.len() + y]
    }

    #[inline]
    pub fn residuum_idx(&self, x: usize, y: usize) -> usize {
        self.residuum[x * self.labels.len() + y]
    }

    pub fn index_of(&self, label: &Rational) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Chain {
        self.name = name.into();
        self
    }

    pub(crate) fn set_delta(&mut self, on: bool) {
        self.has_delta = on;
    }

    /// Isomorphism of chains: the only order-preserving bijection is the
    /// index identity, so the star tables (and Δ flags) must coincide.
    pub fn is_isomorphic(&self, other: &Chain) -> bool {
        self.size() == other.size() && self.star == other.star && self.has_delta == other.has_delta
    }

    /// The canonical chain file text; its SHA-256 is the fingerprint.
    pub fn canonical_text(&self) -> String {
        let k = self.size();
        let mut out = String::new();
        out.push_str("mtlchain 1\n");
        let _ = writeln!(out, "size {k}");
        out.push_str("labels");
        for l in &self.labels {
            out.push(' ');
            out.push_str(&l.to_string());
        }
        out.push('\n');
        let _ = writeln!(out, "delta {}", u8::from(self.has_delta));
        for x in 0..k {
            for y in 0..k {
                if y > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.star_idx(x, y));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

impl Algebra for Chain {
    type Elem = usize;

    fn name(&self) -> &str {
        &self.name
    }

    fn bottom(&self) -> usize {
        0
    }

    fn top(&self) -> usize {
        self.size() - 1
    }

    #[inline]
    fn star(&self, x: &usize, y: &usize) -> usize {
        self.star_idx(*x, *y)
    }

    #[inline]
    fn residuum(&self, x: &usize, y: &usize) -> usize {
        self.residuum_idx(*x, *y)
    }

    fn has_delta(&self) -> bool {
        self.has_delta
    }

    fn label(&self, x: &usize) -> Rational {
        self.labels[*x].clone()
    }

    fn element(&self, label: &Rational) -> Option<usize> {
        self.index_of(label)
    }

    fn carrier(&self) -> Option<Vec<usize>> {
        Some((0..self.size()).collect())
    }

    fn fingerprint(&self) -> String {
        sha256_hex(self.canonical_text().as_bytes())
    }
}
