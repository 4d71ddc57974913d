use alloc::vec::Vec;

use super::{Chain, ChainError, ChainTable};

/// Where the weak negation `∼x = x ⇒ 0` sits relative to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationProfile {
    /// `A⁺ = {x : x > ∼x}`, ascending.
    pub a_plus: Vec<usize>,
    /// The unique `x` with `x = ∼x`, if any.
    pub fixpoint: Option<usize>,
}

impl NegationProfile {
    pub fn contains_positive(&self, x: usize) -> bool {
        self.a_plus.binary_search(&x).is_ok()
    }
}

pub fn negation_profile(chain: &Chain) -> NegationProfile {
    let neg = |x: usize| chain.residuum_idx(x, 0);
    let a_plus = (0..chain.size()).filter(|&x| x > neg(x)).collect();
    let fixpoint = (0..chain.size()).find(|&x| x == neg(x));
    NegationProfile { a_plus, fixpoint }
}

/// Largest chain accepted by [`subchains`] (the scan is exponential).
pub const MAX_SUBCHAIN_SIZE: usize = 20;

/// All subuniverses: index sets containing bottom and top and closed under
/// star and residuum. Sorted by size, then lexicographically.
pub fn subchains(chain: &Chain) -> Result<Vec<Vec<usize>>, ChainError> {
    let k = chain.size();
    if k > MAX_SUBCHAIN_SIZE {
        return Err(ChainError::TooLarge(k, MAX_SUBCHAIN_SIZE));
    }
    if k <= 2 {
        return Ok(alloc::vec![(0..k).collect()]);
    }
    let top = k - 1;
    let inner = k - 2;
    let mut found = Vec::new();
    for bits in 0u32..(1u32 << inner) {
        let mask: u32 = 1 | (bits << 1) | (1 << top);
        let has = |x: usize| mask & (1 << x) != 0;
        let members: Vec<usize> = (0..k).filter(|&x| has(x)).collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| has(chain.star_idx(x, y)) && has(chain.residuum_idx(x, y))));
        if closed {
            found.push(members);
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// The subalgebra on `members` (which must be a subuniverse), keeping labels.
pub fn restrict(chain: &Chain, members: &[usize]) -> Result<Chain, ChainError> {
    use super::Algebra;
    let pos = |x: usize| members.iter().position(|&m| m == x);
    let k = members.len();
    let mut star = Vec::with_capacity(k * k);
    for &x in members {
        for &y in members {
            let v = pos(chain.star_idx(x, y)).ok_or_else(|| {
                ChainError::InvalidParameter(alloc::string::String::from("index set is not closed under star"))
            })?;
            star.push(v);
        }
    }
    Chain::from_table(ChainTable {
        name: alloc::format!("sub({})", chain.name()),
        labels: members.iter().map(|&x| chain.labels()[x].clone()).collect(),
        star,
        has_delta: chain.has_delta(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_chain, Family};

    #[test]
    fn nm5_profile() {
        let p = negation_profile(&make_chain(Family::Nm, 5).unwrap());
        assert_eq!(p.a_plus, alloc::vec![3, 4]);
        assert_eq!(p.fixpoint, Some(2));
    }

    #[test]
    fn l3_has_no_fixpoint() {
        let p = negation_profile(&make_chain(Family::Lukasiewicz, 3).unwrap());
        assert_eq!(p.a_plus, alloc::vec![2, 3]);
        assert_eq!(p.fixpoint, None);
    }

    #[test]
    fn boolean_profile() {
        let p = negation_profile(&make_chain(Family::Boolean, 0).unwrap());
        assert_eq!(p.a_plus, alloc::vec![1]);
        assert_eq!(p.fixpoint, None);
    }

    #[test]
    fn lukasiewicz_six_subchains_follow_divisors() {
        let c = make_chain(Family::Lukasiewicz, 6).unwrap();
        let subs = subchains(&c).unwrap();
        let sizes: Vec<usize> = subs.iter().map(Vec::len).collect();
        assert_eq!(sizes, alloc::vec![2, 3, 4, 7]);
        for s in &subs {
            let sub = restrict(&c, s).unwrap();
            let l = make_chain(Family::Lukasiewicz, s.len() - 1).unwrap();
            assert!(sub.is_isomorphic(&l));
        }
    }

    #[test]
    fn boolean_has_only_itself() {
        let c = make_chain(Family::Boolean, 0).unwrap();
        assert_eq!(subchains(&c).unwrap(), alloc::vec![alloc::vec![0, 1]]);
    }

    #[test]
    fn godel_subsets_are_all_subchains() {
        let c = make_chain(Family::Godel, 4).unwrap();
        // every subset of {1, 2} added to {0, 3}
        assert_eq!(subchains(&c).unwrap().len(), 4);
    }

    #[test]
    fn oversized_chain_is_rejected() {
        let c = make_chain(Family::Godel, MAX_SUBCHAIN_SIZE + 1).unwrap();
        assert!(matches!(subchains(&c), Err(ChainError::TooLarge(..))));
    }
}
