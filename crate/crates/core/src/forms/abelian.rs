use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian 2-group `Z/f1 ⊕ ... ⊕ Z/fr` with `2 <= f1 <= ... <= fr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Abelian2Group {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for Abelian2Group {
    type Error = Error;

    fn try_from(factors: Vec<u64>) -> Result<Self> {
        Abelian2Group::new(factors)
    }
}

impl From<Abelian2Group> for Vec<u64> {
    fn from(g: Abelian2Group) -> Self {
        g.factors
    }
}

impl Abelian2Group {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&f) = factors.iter().find(|&&f| f < 2 || !f.is_power_of_two()) {
            return Err(Error::InvalidInput(format!("{f} is not a power of 2 at least 2")));
        }
        if factors.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!("factors {factors:?} are not non-decreasing")));
        }
        Ok(Abelian2Group { factors })
    }

    pub fn trivial() -> Self {
        Abelian2Group::default()
    }

    /// `(Z/2)^r`.
    pub fn elementary(r: u32) -> Self {
        Abelian2Group { factors: vec![2; r as usize] }
    }

    /// The 2-parts of an arbitrary list of invariant factors.
    pub fn from_invariant_factors(factors: &[u64]) -> Self {
        let mut twos: Vec<u64> = factors.iter().map(|&f| 1u64 << f.trailing_zeros()).filter(|&f| f > 1).collect();
        twos.sort_unstable();
        Abelian2Group { factors: twos }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Number of cyclic factors of order at least 4, i.e. the 4-rank.
    pub fn four_rank(&self) -> u32 {
        self.factors.iter().filter(|&&f| f >= 4).count() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for Abelian2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let g = Abelian2Group::new(vec![2, 4]).unwrap();
        assert_eq!((g.rank(), g.order(), g.four_rank()), (2, 8, 1));
        assert!(Abelian2Group::new(vec![4, 2]).is_err());
        assert!(Abelian2Group::new(vec![6]).is_err());
        assert!(Abelian2Group::new(vec![1]).is_err());
        assert_eq!(Abelian2Group::trivial().order(), 1);
        assert_eq!(Abelian2Group::from_invariant_factors(&[6]).factors(), &[2]);
        assert_eq!(Abelian2Group::from_invariant_factors(&[2, 12]).factors(), &[2, 4]);
        assert_eq!(Abelian2Group::from_invariant_factors(&[3, 24]).factors(), &[8]);
        assert_eq!(g.to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn serde_round_trip_validates() {
        let g = Abelian2Group::new(vec![2, 2, 8]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, "[2,2,8]");
        assert_eq!(serde_json::from_str::<Abelian2Group>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Abelian2Group>("[3]").is_err());
    }
}
