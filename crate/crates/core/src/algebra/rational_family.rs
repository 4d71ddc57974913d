use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use super::chain::sha256_hex;
use super::{Algebra, ChainError};
use crate::rational::{in_unit_interval, one, ratio, zero, Rational};

/// Chains over rationals with a closed-form star. Evaluation only: the
/// carrier is infinite, so nothing here can be checked exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RationalFamily {
    Lukasiewicz,
    Godel,
    Product,
    Nm,
    /// Drastic product on `[0, 1/2] ∪ {1}`; `1/2` is the coatom.
    Dp,
}

impl RationalFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            RationalFamily::Lukasiewicz => "lukasiewicz",
            RationalFamily::Godel => "godel",
            RationalFamily::Product => "product",
            RationalFamily::Nm => "nm",
            RationalFamily::Dp => "dp",
        }
    }
}

impl fmt::Display for RationalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RationalFamily {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lukasiewicz" | "luk" | "l" | "mv" => Ok(RationalFamily::Lukasiewicz),
            "godel" | "goedel" | "g" => Ok(RationalFamily::Godel),
            "product" | "prod" | "p" => Ok(RationalFamily::Product),
            "nm" => Ok(RationalFamily::Nm),
            "dp" => Ok(RationalFamily::Dp),
            other => Err(ChainError::InvalidParameter(format!("unknown rational family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalChain {
    family: RationalFamily,
    has_delta: bool,
    name: String,
}

impl RationalChain {
    pub fn new(family: RationalFamily) -> RationalChain {
        RationalChain { family, has_delta: false, name: format!("rational:{family}") }
    }

    pub fn with_delta(mut self) -> RationalChain {
        if !self.has_delta {
            self.has_delta = true;
            self.name = format!("delta({})", self.name);
        }
        self
    }

    pub fn family(&self) -> RationalFamily {
        self.family
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.family {
            RationalFamily::Dp => x.is_one() || (*x >= zero() && *x <= ratio(1, 2)),
            _ => in_unit_interval(x),
        }
    }

    /// The carrier members among `values`, in ascending order without repeats.
    pub fn restrict_grid(&self, values: &[Rational]) -> Vec<Rational> {
        let mut out: Vec<Rational> = values.iter().filter(|v| self.contains(v)).cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    /// The identifying text whose digest is the fingerprint.
    pub fn canonical_text(&self) -> String {
        format!("mtlfamily 1\nfamily {}\ndelta {}\n", self.family, u8::from(self.has_delta))
    }
}

impl Algebra for RationalChain {
    type Elem = Rational;

    fn name(&self) -> &str {
        &self.name
    }

    fn bottom(&self) -> Rational {
        zero()
    }

    fn top(&self) -> Rational {
        one()
    }

    fn star(&self, x: &Rational, y: &Rational) -> Rational {
        match self.family {
            RationalFamily::Lukasiewicz => (x + y - one()).max(zero()),
            RationalFamily::Godel => x.min(y).clone(),
            RationalFamily::Product => x * y,
            RationalFamily::Nm => {
                if *x <= one() - y {
                    zero()
                } else {
                    x.min(y).clone()
                }
            }
            RationalFamily::Dp => {
                if x.is_one() || y.is_one() {
                    x.min(y).clone()
                } else {
                    zero()
                }
            }
        }
    }

    fn residuum(&self, x: &Rational, y: &Rational) -> Rational {
        if x <= y {
            return one();
        }
        match self.family {
            RationalFamily::Lukasiewicz => (one() - x + y).min(one()),
            RationalFamily::Godel => y.clone(),
            RationalFamily::Product => {
                if x.is_zero() {
                    one()
                } else {
                    y / x
                }
            }
            RationalFamily::Nm => (one() - x).max(y.clone()),
            RationalFamily::Dp => {
                if x.is_one() {
                    y.clone()
                } else {
                    ratio(1, 2)
                }
            }
        }
    }

    fn has_delta(&self) -> bool {
        self.has_delta
    }

    fn label(&self, x: &Rational) -> Rational {
        x.clone()
    }

    fn element(&self, label: &Rational) -> Option<Rational> {
        self.contains(label).then(|| label.clone())
    }

    fn carrier(&self) -> Option<Vec<Rational>> {
        None
    }

    fn fingerprint(&self) -> String {
        sha256_hex(self.canonical_text().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::unit_grid;

    fn families() -> [RationalFamily; 5] {
        [
            RationalFamily::Lukasiewicz,
            RationalFamily::Godel,
            RationalFamily::Product,
            RationalFamily::Nm,
            RationalFamily::Dp,
        ]
    }

    #[test]
    fn residuation_on_a_grid() {
        for fam in families() {
            let c = RationalChain::new(fam);
            let grid = c.restrict_grid(&unit_grid(6));
            for x in &grid {
                for y in &grid {
                    let r = c.residuum(x, y);
                    assert!(c.contains(&r), "{fam}: r({x},{y}) = {r} outside carrier");
                    for z in &grid {
                        assert_eq!(c.star(z, x) <= *y, *z <= r, "{fam}: x={x} y={y} z={z}");
                    }
                }
            }
        }
    }

    #[test]
    fn lukasiewicz_values() {
        let c = RationalChain::new(RationalFamily::Lukasiewicz);
        assert_eq!(c.star(&ratio(1, 2), &ratio(1, 2)), zero());
        assert_eq!(c.residuum(&ratio(1, 2), &zero()), ratio(1, 2));
        assert_eq!(c.neg(&ratio(1, 3)), ratio(2, 3));
    }

    #[test]
    fn dp_carrier_has_a_gap() {
        let c = RationalChain::new(RationalFamily::Dp);
        assert!(c.contains(&ratio(1, 2)));
        assert!(!c.contains(&ratio(2, 3)));
        assert_eq!(c.element(&ratio(3, 4)), None);
        assert_eq!(c.neg(&ratio(1, 2)), ratio(1, 2));
    }

    #[test]
    fn delta_changes_fingerprint() {
        let c = RationalChain::new(RationalFamily::Product);
        assert_ne!(c.fingerprint(), c.clone().with_delta().fingerprint());
    }
}
