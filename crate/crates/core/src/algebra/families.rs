use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::identities::{named_identity, satisfies_identity};
use super::{Algebra, Chain, ChainError, ChainTable};
use crate::rational::{ratio, Rational};

/// Named finite chain families.
///
/// `Lukasiewicz` with parameter `n` is the `(n+1)`-element chain 𝐋ₙ; the
/// other parameterized families use `n` as the number of carrier elements,
/// equally spaced in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Boolean,
    Lukasiewicz,
    Godel,
    /// Nilpotent minimum, negation `1 - x`.
    Nm,
    /// Drastic product.
    Dp,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Boolean => "boolean",
            Family::Lukasiewicz => "lukasiewicz",
            Family::Godel => "godel",
            Family::Nm => "nm",
            Family::Dp => "dp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boolean" | "bool" | "2" => Ok(Family::Boolean),
            "lukasiewicz" | "luk" | "l" | "mv" => Ok(Family::Lukasiewicz),
            "godel" | "goedel" | "g" => Ok(Family::Godel),
            "nm" => Ok(Family::Nm),
            "dp" => Ok(Family::Dp),
            other => Err(ChainError::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// `k` labels `0, 1/(k-1), …, 1`; the one-element carrier is `{1}`.
pub(crate) fn equally_spaced(k: usize) -> Vec<Rational> {
    if k == 1 {
        return alloc::vec![ratio(1, 1)];
    }
    (0..k).map(|i| ratio(i as i64, (k - 1) as i64)).collect()
}

fn table_from_fn(name: String, k: usize, op: impl Fn(usize, usize) -> usize) -> ChainTable {
    let mut star = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            star.push(op(x, y));
        }
    }
    ChainTable { name, labels: equally_spaced(k), star, has_delta: false }
}

/// Builds a member of a named family.
pub fn make_chain(family: Family, n: usize) -> Result<Chain, ChainError> {
    if family != Family::Boolean && n == 0 {
        return Err(ChainError::InvalidParameter(format!("{family} needs n >= 1")));
    }
    let table = match family {
        Family::Boolean => table_from_fn(String::from("boolean"), 2, |x, y| x.min(y)),
        Family::Lukasiewicz => {
            // index i stands for i/n: max(0, x + y - 1) becomes max(0, i + j - n)
            table_from_fn(format!("lukasiewicz({n})"), n + 1, |x, y| (x + y).saturating_sub(n))
        }
        Family::Godel => table_from_fn(format!("godel({n})"), n, |x, y| x.min(y)),
        Family::Nm => {
            let top = n - 1;
            let neg: Vec<usize> = (0..n).map(|i| top - i).collect();
            return make_wnm_chain(&neg).map(|c| c.with_name(format!("nm({n})")));
        }
        Family::Dp => {
            let top = n - 1;
            table_from_fn(format!("dp({n})"), n, move |x, y| if x == top || y == top { x.min(y) } else { 0 })
        }
    };
    Chain::from_table(table)
}

/// The WNM-chain determined by a weak negation given as carrier indices.
///
/// `x * y = 0` if `x ≤ neg(y)`, else `min(x, y)`; labels are equally spaced.
pub fn make_wnm_chain(neg: &[usize]) -> Result<Chain, ChainError> {
    let k = neg.len();
    if k == 0 {
        return Err(ChainError::InvalidNegation(String::from("empty negation")));
    }
    let top = k - 1;
    if let Some(x) = (0..k).find(|&x| neg[x] >= k) {
        return Err(ChainError::InvalidNegation(format!("neg({x}) = {} is out of range", neg[x])));
    }
    if neg[0] != top || neg[top] != 0 {
        return Err(ChainError::InvalidNegation(String::from("neg must swap bottom and top")));
    }
    if let Some(x) = (1..k).find(|&x| neg[x] > neg[x - 1]) {
        return Err(ChainError::InvalidNegation(format!("not order-reversing at {} < {x}", x - 1)));
    }
    if let Some(x) = (0..k).find(|&x| x > neg[neg[x]]) {
        return Err(ChainError::InvalidNegation(format!("x <= neg(neg(x)) fails at {x}")));
    }
    let name = {
        let mut s = String::from("wnm[");
        for (i, v) in neg.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{v}"));
        }
        s.push(']');
        s
    };
    let table = table_from_fn(name, k, |x, y| if x <= neg[y] { 0 } else { x.min(y) });
    let chain =
        Chain::from_table(table).map_err(|e| ChainError::InvalidNegation(format!("does not define a chain: {e}")))?;
    debug_assert!((0..k).all(|x| chain.residuum_idx(x, 0) == neg[x]));
    Ok(chain)
}

/// Two-summand ordinal sum `first ⊕ second`.
///
/// The carrier is `first` without its top, followed by `second`. Within a
/// block the block's star applies; across blocks the lower element wins.
/// Labels are respaced equally.
pub fn ordinal_sum(first: &Chain, second: &Chain) -> Result<Chain, ChainError> {
    let inv = named_identity("inv").expect("inv is in the identity library");
    if !satisfies_identity(first, &inv)? {
        return Err(ChainError::NotAnMvChain);
    }
    let lower = first.size() - 1;
    let k = lower + second.size();
    let name = format!("sum({},{})", first.name(), second.name());
    let table = table_from_fn(name, k, |x, y| match (x < lower, y < lower) {
        (true, true) => first.star_idx(x, y),
        (false, false) => lower + second.star_idx(x - lower, y - lower),
        _ => x.min(y),
    });
    Chain::from_table(table)
}

/// The same chain with Δ available.
pub fn delta_expand(chain: &Chain) -> Chain {
    if chain.has_delta() {
        return chain.clone();
    }
    let name = format!("delta({})", chain.name());
    let mut c = chain.clone().with_name(name);
    c.set_delta(true);
    c
}
