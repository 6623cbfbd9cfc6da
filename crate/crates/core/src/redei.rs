//! Rédei–Reichardt counting: splittings of a fundamental discriminant into
//! two discriminants, and the subset of those satisfying the mutual
//! character conditions that measures the 4-rank of the narrow class group.

use serde::{Deserialize, Serialize};

use crate::arith::{factor, kron, FactoredSquarefree};
use crate::error::Result;
use crate::genus::prime_discriminants;

/// A factorization `D = D1 * D2` into discriminants, normalized `|D1| < |D2|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub d1: i64,
    pub d2: i64,
}

impl Decomposition {
    fn normalized(x: i64, y: i64) -> Self {
        if x.unsigned_abs() < y.unsigned_abs() {
            Decomposition { d1: x, d2: y }
        } else {
            Decomposition { d1: y, d2: x }
        }
    }

    fn sort_key(&self) -> (u64, i64) {
        (self.d1.unsigned_abs(), self.d1)
    }
}

/// All `2^(t-1)` splittings of `d` into two products of its prime discriminants.
pub fn enumerate_s1(d: i64) -> Result<Vec<Decomposition>> {
    let pd = prime_discriminants(d)?;
    let t = pd.len();
    let mut out = Vec::with_capacity(1 << t.saturating_sub(1));
    // Fixing the last prime discriminant in D2 picks one of each unordered pair.
    for mask in 0u32..(1 << (t - 1)) {
        let d1: i64 = (0..t).filter(|&i| mask >> i & 1 == 1).map(|i| pd[i]).product();
        out.push(Decomposition::normalized(d1, d / d1));
    }
    out.sort_by_key(Decomposition::sort_key);
    Ok(out)
}

/// `χ_x(p) = 1` for every prime `p | y` (including p = 2).
fn characters_trivial(x: i64, y: i64) -> bool {
    factor(y.unsigned_abs()).iter().all(|&(p, _)| kron(x, p as i64) == 1)
}

/// The trivial splitting together with those where each part is a square
/// modulo every prime of the other.
pub fn filter_s2(d: i64) -> Result<Vec<Decomposition>> {
    Ok(enumerate_s1(d)?
        .into_iter()
        .filter(|s| s.d1 == 1 || (characters_trivial(s.d1, s.d2) && characters_trivial(s.d2, s.d1)))
        .collect())
}

/// Whether the 2-part of the narrow class group is elementary abelian.
pub fn narrow_two_elementary(d: i64) -> Result<bool> {
    Ok(filter_s2(d)?.len() == 1)
}

/// Whether `d` has a prime factor congruent to 3 mod 4, the hypothesis under
/// which elementarity of the ordinary 2-class group transfers to the narrow one.
pub fn elementary_transfer_applies(d: &FactoredSquarefree) -> bool {
    d.has_prime_congruent(3, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_squarefree;
    use crate::error::Error;

    fn pair(d1: i64, d2: i64) -> Decomposition {
        Decomposition { d1, d2 }
    }

    #[test]
    fn s1_of_1365() {
        let s1 = enumerate_s1(1365).unwrap();
        assert_eq!(s1.len(), 8);
        for p in [
            pair(1, 1365),
            pair(5, 273),
            pair(13, 105),
            pair(-7, -195),
            pair(-3, -455),
            pair(21, 65),
            pair(-35, -39),
            pair(-15, -91),
        ] {
            assert!(s1.contains(&p), "{p:?}");
        }
        assert_eq!(s1[0], pair(1, 1365));
    }

    #[test]
    fn s1_counts() {
        assert_eq!(enumerate_s1(10920).unwrap().len(), 16);
        assert_eq!(enumerate_s1(5).unwrap(), vec![pair(1, 5)]);
        assert_eq!(enumerate_s1(20), Err(Error::NotFundamental(20)));
    }

    #[test]
    fn s2_examples() {
        assert_eq!(filter_s2(1365).unwrap(), vec![pair(1, 1365)]);
        assert_eq!(filter_s2(5).unwrap(), vec![pair(1, 5)]);
        assert!(narrow_two_elementary(1365).unwrap());
        assert!(narrow_two_elementary(5).unwrap());
        // 34 = 2 * 17: (8, 17) passes both character tests
        assert_eq!(filter_s2(136).unwrap(), vec![pair(1, 136), pair(8, 17)]);
        assert!(!narrow_two_elementary(136).unwrap());
    }

    #[test]
    fn transfer_hypothesis() {
        assert!(elementary_transfer_applies(&factor_squarefree(1365).unwrap()));
        assert!(!elementary_transfer_applies(&factor_squarefree(1885).unwrap()));
        assert!(!elementary_transfer_applies(&factor_squarefree(2).unwrap()));
    }
}
