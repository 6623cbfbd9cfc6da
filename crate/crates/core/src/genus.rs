//! Genus theory over Q: prime discriminants, the narrow and real genus
//! fields of a real quadratic field, the 2-rank of its class group, and the
//! order of the ambiguous class group.
//!
//! Genus fields are multiquadratic, so they are stored as an F2-basis of
//! radicands, each a product of prime discriminants of `D_K`.

use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_squarefree};
use crate::error::{Error, Result};
use crate::quadfield::{minus_one_is_norm, QuadraticField};

pub fn starred_prime(p: u64) -> Result<i64> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    Ok(if p % 4 == 1 { p as i64 } else { -(p as i64) })
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    let m = d.unsigned_abs();
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(m),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && is_squarefree(m / 4),
        _ => false,
    }
}

/// The prime discriminants whose product is `d`, ordered by the prime they
/// belong to (the 2-part first when present).
pub fn prime_discriminants(d: i64) -> Result<Vec<i64>> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let mut out = Vec::new();
    let mut product: i64 = 1;
    for (p, _) in factor(d.unsigned_abs()) {
        if p != 2 {
            let s = starred_prime(p)?;
            product *= s;
            out.push(s);
        }
    }
    let residual = d / product;
    match residual {
        1 => {}
        -4 | 8 | -8 => out.insert(0, residual),
        _ => return Err(Error::NotFundamental(d)),
    }
    Ok(out)
}

/// A multiquadratic field `Q(√r1, ..., √rk)` over a quadratic base field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusField {
    /// Each radicand is a product of prime discriminants of the base discriminant.
    pub radicands: Vec<i64>,
    /// `[K_G : K]`.
    pub degree_over_base: u64,
}

impl GenusField {
    fn from_radicands(radicands: Vec<i64>) -> Self {
        let degree_over_base = 1u64 << radicands.len().saturating_sub(1);
        GenusField { radicands, degree_over_base }
    }

    /// Square-free kernels of the radicands, e.g. `-4 -> -1`, `56 -> 14`.
    pub fn squarefree_radicands(&self) -> Vec<i64> {
        self.radicands.iter().map(|&r| squarefree_kernel(r)).collect()
    }

    pub fn degree(&self) -> u64 {
        1u64 << self.radicands.len()
    }
}

fn squarefree_kernel(r: i64) -> i64 {
    let k: i64 = factor(r.unsigned_abs()).into_iter().filter(|&(_, e)| e % 2 == 1).map(|(p, _)| p as i64).product();
    if r < 0 {
        -k
    } else {
        k
    }
}

fn field_discriminant(k: &QuadraticField) -> i64 {
    k.discriminant() as i64
}

pub fn narrow_genus_field(k: &QuadraticField) -> Result<GenusField> {
    Ok(GenusField::from_radicands(prime_discriminants(field_discriminant(k))?))
}

/// The maximal real subfield of the narrow genus field: positive prime
/// discriminants are kept and each further negative one is multiplied by the
/// first negative one.
pub fn genus_field(k: &QuadraticField) -> Result<GenusField> {
    let pd = prime_discriminants(field_discriminant(k))?;
    let mut radicands: Vec<i64> = pd.iter().copied().filter(|&r| r > 0).collect();
    let negatives: Vec<i64> = pd.iter().copied().filter(|&r| r < 0).collect();
    if let Some((&anchor, rest)) = negatives.split_first() {
        radicands.extend(rest.iter().map(|&r| anchor * r));
    }
    Ok(GenusField::from_radicands(radicands))
}

/// 2-rank of the class group of K.
pub fn rank_a(k: &QuadraticField) -> Result<u32> {
    Ok(genus_field(k)?.radicands.len() as u32 - 1)
}

/// 2-rank of the narrow class group of K.
pub fn rank_a_plus(k: &QuadraticField) -> Result<u32> {
    Ok(narrow_genus_field(k)?.radicands.len() as u32 - 1)
}

/// Number of ramified primes of K/Q.
pub fn ramified_prime_count(k: &QuadraticField) -> u32 {
    factor(k.discriminant()).len() as u32
}

/// Order of the ambiguous classes `#A(K)^G = 2^(t-1) / n`, where `n = 2`
/// unless -1 is a norm from K.
pub fn genus_fixed_order(k: &QuadraticField) -> u64 {
    let t = ramified_prime_count(k);
    let n = if minus_one_is_norm(k) { 1 } else { 2 };
    (1u64 << (t - 1)) / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    fn sorted(mut v: Vec<i64>) -> Vec<i64> {
        v.sort_unstable();
        v
    }

    #[test]
    fn starred() {
        assert_eq!(starred_prime(5), Ok(5));
        assert_eq!(starred_prime(7), Ok(-7));
        assert_eq!(starred_prime(2), Err(Error::EvenPrime));
    }

    #[test]
    fn prime_discriminant_examples() {
        assert_eq!(sorted(prime_discriminants(1365).unwrap()), vec![-7, -3, 5, 13]);
        assert_eq!(prime_discriminants(8).unwrap(), vec![8]);
        assert_eq!(prime_discriminants(40).unwrap(), vec![8, 5]);
        assert_eq!(prime_discriminants(60).unwrap(), vec![-4, -3, 5]);
        assert_eq!(prime_discriminants(280).unwrap(), vec![-8, 5, -7]);
        assert_eq!(prime_discriminants(12).unwrap(), vec![-4, -3]);
        assert_eq!(prime_discriminants(20), Err(Error::NotFundamental(20)));
        assert_eq!(prime_discriminants(45), Err(Error::NotFundamental(45)));
    }

    #[test]
    fn genus_fields() {
        assert_eq!(sorted(narrow_genus_field(&field(1365)).unwrap().radicands), vec![-7, -3, 5, 13]);
        assert_eq!(narrow_genus_field(&field(2)).unwrap().radicands, vec![8]);
        assert_eq!(narrow_genus_field(&field(2)).unwrap().squarefree_radicands(), vec![2]);
        assert_eq!(sorted(narrow_genus_field(&field(15)).unwrap().radicands), vec![-4, -3, 5]);

        assert_eq!(genus_field(&field(1365)).unwrap().radicands, vec![5, 13, 21]);
        assert_eq!(genus_field(&field(1885)).unwrap().radicands, vec![5, 13, 29]);
        let g70 = genus_field(&field(70)).unwrap();
        assert_eq!(g70.radicands, vec![5, 56]);
        assert_eq!(g70.squarefree_radicands(), vec![5, 14]);
        assert_eq!(g70.degree_over_base, 2);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_a(&field(1365)), Ok(2));
        assert_eq!(rank_a(&field(2730)), Ok(3));
        assert_eq!(rank_a(&field(70)), Ok(1));
        assert_eq!(rank_a_plus(&field(1365)), Ok(3));
    }

    #[test]
    fn fixed_orders() {
        assert_eq!(genus_fixed_order(&field(1365)), 4);
        assert_eq!(genus_fixed_order(&field(5)), 1);
        assert_eq!(genus_fixed_order(&field(34)), 2);
    }
}
