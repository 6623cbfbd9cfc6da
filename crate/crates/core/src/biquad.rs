//! The biquadratic field K1 = Q(√2, √d) for odd square-free d: the number of
//! ramified places over Q(√2), the 2-rank of its class group, square tests,
//! the Hasse unit index and Kuroda's class number formula.
//!
//! Square testing works in all four real embeddings at a working precision
//! large enough that rounding the candidate square root to coordinates with
//! denominator 4 is certified; the rounded candidate is then checked exactly.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_squarefree, two_power_residue_test, FactoredSquarefree};
use crate::error::{Error, Result};
use crate::forms::Abelian2Group;
use crate::quadfield::{sign_of_surd, splitting_in, QuadInteger, QuadraticField, SplitType};

/// Extra working precision, in bits beyond the size of the input, tried first.
pub const INITIAL_EXTRA_BITS: u32 = 128;
/// Precision escalation stops once this many extra bits have failed.
pub const MAX_EXTRA_BITS: u32 = 8192;

#[derive(Debug, Clone)]
pub struct BiquadField {
    d: FactoredSquarefree,
    q2: QuadraticField,
    k: QuadraticField,
    k_prime: QuadraticField,
}

impl BiquadField {
    pub fn new(d: u64) -> Result<Self> {
        Self::from_factored(factor_squarefree(d)?)
    }

    pub fn from_factored(d: FactoredSquarefree) -> Result<Self> {
        if !d.is_odd() {
            return Err(Error::EvenRadicand(d.value()));
        }
        if d.value() < 3 {
            return Err(Error::InvalidInput(format!("radicand must be at least 3, got {}", d.value())));
        }
        let doubled = d.doubled().ok_or_else(|| Error::InvalidInput(format!("2 * {} overflows", d.value())))?;
        Ok(BiquadField {
            q2: QuadraticField::new(2)?,
            k: QuadraticField::from_factored(d.clone())?,
            k_prime: QuadraticField::from_factored(doubled)?,
            d,
        })
    }

    pub fn d(&self) -> u64 {
        self.d.value()
    }

    pub fn radicand(&self) -> &FactoredSquarefree {
        &self.d
    }

    /// Q(√2).
    pub fn q_sqrt2(&self) -> &QuadraticField {
        &self.q2
    }

    /// K = Q(√d).
    pub fn k(&self) -> &QuadraticField {
        &self.k
    }

    /// K' = Q(√2d).
    pub fn k_prime(&self) -> &QuadraticField {
        &self.k_prime
    }

    /// The fundamental units of Q(√2), K and K' embedded in K1.
    pub fn units(&self) -> [BiquadNumber; 3] {
        [&self.q2, &self.k, &self.k_prime]
            .map(|f| BiquadNumber::from_quadratic(self, &f.unit().value).expect("subfield element"))
    }

    pub fn unit_norms(&self) -> [i8; 3] {
        [self.q2.unit().norm, self.k.unit().norm, self.k_prime.unit().norm]
    }
}

/// `(x0 + x1√2 + x2√d + x3√2d) / den` with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiquadNumber {
    d: u64,
    num: [BigInt; 4],
    den: BigInt,
}

impl BiquadNumber {
    pub fn new(field: &BiquadField, num: [BigInt; 4], den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::normalized(field.d(), num, den))
    }

    pub fn from_integers(field: &BiquadField, coords: [i64; 4]) -> Self {
        Self::normalized(field.d(), coords.map(BigInt::from), BigInt::one())
    }

    fn normalized(d: u64, mut num: [BigInt; 4], mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
            den /= g;
        }
        BiquadNumber { d, num, den }
    }

    /// Embeds an element of Q(√2), K or K'.
    pub fn from_quadratic(field: &BiquadField, x: &QuadInteger) -> Result<Self> {
        let (a, b) = x.halves();
        let z = BigInt::zero();
        let num = if x.d() == 2 {
            [a.clone(), b.clone(), z.clone(), z]
        } else if x.d() == field.d() {
            [a.clone(), z.clone(), b.clone(), z]
        } else if x.d() == 2 * field.d() {
            [a.clone(), z.clone(), z, b.clone()]
        } else {
            return Err(Error::InvalidInput(format!("Q(√{}) is not a subfield of K1", x.d())));
        };
        Ok(Self::normalized(field.d(), num, BigInt::from(2)))
    }

    pub fn numerators(&self) -> &[BigInt; 4] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        BiquadNumber { d: self.d, num: self.num.clone().map(|x| -x), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "elements of different fields");
        let d = BigInt::from(self.d);
        let [x0, x1, x2, x3] = &self.num;
        let [y0, y1, y2, y3] = &other.num;
        let z0 = x0 * y0 + 2 * x1 * y1 + &d * x2 * y2 + 2 * &d * x3 * y3;
        let z1 = x0 * y1 + x1 * y0 + &d * (x2 * y3 + x3 * y2);
        let z2 = x0 * y2 + x2 * y0 + 2 * (x1 * y3 + x3 * y1);
        let z3 = x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1;
        Self::normalized(self.d, [z0, z1, z2, z3], &self.den * &other.den)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Sign of the embedding `√2 -> s1 √2`, `√d -> s2 √d`.
    pub fn embedding_sign(&self, s1: i8, s2: i8) -> Ordering {
        let s1 = BigInt::from(s1);
        let [x0, x1, x2, x3] = &self.num;
        // X + s2 Y √d with X = x0 + s1 x1 √2 and Y = x2 + s1 x3 √2.
        let sx = sign_of_surd(x0, &(&s1 * x1), 2);
        let sy = sign_of_surd(x2, &(&s1 * x3), 2);
        let sy = if s2 < 0 { sy.reverse() } else { sy };
        if sx == sy || sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal {
            return sy;
        }
        // Compare X^2 with d Y^2, both in Q(√2).
        let d = BigInt::from(self.d);
        let r = x0 * x0 + 2 * x1 * x1 - &d * (x2 * x2 + 2 * x3 * x3);
        let s = &s1 * (2 * x0 * x1 - 2 * &d * x2 * x3);
        let diff = sign_of_surd(&r, &s, 2);
        if sx == Ordering::Greater {
            diff
        } else {
            diff.reverse()
        }
    }

    pub fn is_totally_positive(&self) -> bool {
        SIGN_PATTERNS.iter().all(|&(s1, s2)| self.embedding_sign(s1, s2) == Ordering::Greater)
    }
}

const SIGN_PATTERNS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Whether `x` is a square in K1, escalating precision as needed.
pub fn is_square_in_k1(x: &BiquadNumber, field: &BiquadField) -> Result<bool> {
    Ok(sqrt_in_k1(x, field)?.is_some())
}

/// A square root of `x` in K1, if one exists.
pub fn sqrt_in_k1(x: &BiquadNumber, field: &BiquadField) -> Result<Option<BiquadNumber>> {
    let mut extra = INITIAL_EXTRA_BITS;
    loop {
        match sqrt_in_k1_at(x, field, extra) {
            Err(Error::PrecisionExhausted { .. }) if extra < MAX_EXTRA_BITS => extra *= 2,
            other => return other,
        }
    }
}

/// One attempt at a fixed number of extra bits of precision.
pub fn sqrt_in_k1_at(x: &BiquadNumber, field: &BiquadField, extra_bits: u32) -> Result<Option<BiquadNumber>> {
    assert_eq!(x.d, field.d(), "element of a different field");
    assert!(!x.is_zero(), "square test of zero");
    if !x.is_totally_positive() {
        return Ok(None);
    }
    // y^2 = x  <=>  (den y)^2 = den * num, an algebraic integer with integer coordinates.
    let n: Vec<BigInt> = x.num.iter().map(|c| c * &x.den).collect();
    let d = BigInt::from(x.d);
    let max_bits = n.iter().map(|c| c.bits()).max().unwrap_or(0) + d.bits() + 2;
    let f = 3 * max_bits + extra_bits as u64;
    let scale = BigInt::one() << f;
    let s2 = (&scale * &scale * 2u32).sqrt();
    let sd = (&scale * &scale * &d).sqrt();
    let s2d = (&scale * &scale * &d * 2u32).sqrt();

    // Error of each scaled embedding value, in units of 2^-f.
    let delta: BigInt = n.iter().map(|c| c.abs()).sum::<BigInt>() + 1;
    let mut roots = Vec::with_capacity(4);
    let mut eta = BigInt::zero();
    for &(a, b) in &SIGN_PATTERNS {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let v = &n[0] * &scale + &a * &n[1] * &s2 + &b * &n[2] * &sd + &a * &b * &n[3] * &s2d;
        let lower = &v - &delta;
        if lower.sign() != Sign::Plus {
            return Err(Error::PrecisionExhausted { bits: extra_bits });
        }
        let root = (&v * &scale).sqrt();
        let root_lower = (&lower * &scale).sqrt();
        if root_lower.is_zero() {
            return Err(Error::PrecisionExhausted { bits: extra_bits });
        }
        // |sqrt(v + e) - sqrt(v)| <= delta / sqrt(lower), plus one unit for the floor.
        eta += (&delta * &scale) / &root_lower + 2;
        roots.push(root);
    }
    // Coordinates 4 y_i are sums of the four roots, divided by √2, √d or √2d.
    let total: BigInt = roots.iter().sum();
    let divisor_error = &total / s2.clone().min(sd.clone()) + 4;
    let eta = 4 * (&eta + divisor_error);
    if 4 * &eta >= scale {
        return Err(Error::PrecisionExhausted { bits: extra_bits });
    }

    let target = BiquadNumber::normalized(x.d, n.clone().try_into().expect("four"), BigInt::one());
    let round = |num: BigInt, den: &BigInt| -> BigInt {
        // nearest integer to num / den
        let twice: BigInt = 2 * num + den;
        twice.div_floor(&(2 * den))
    };
    // Fix the sign of the first embedding; y and -y are both roots.
    for mask in 0u8..8 {
        let signs: Vec<i8> =
            std::iter::once(1).chain((0..3).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })).collect();
        let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (k, &(a, b)) in SIGN_PATTERNS.iter().enumerate() {
            let r = &roots[k] * signs[k];
            sums[0] += &r;
            sums[1] += &r * a;
            sums[2] += &r * b;
            sums[3] += &r * (a * b);
        }
        // 4 y_0 = sum, 4 y_1 = sum / √2, ...
        let y = [
            round(sums[0].clone(), &scale),
            round(&sums[1] * &scale, &(&s2 * &scale)),
            round(&sums[2] * &scale, &(&sd * &scale)),
            round(&sums[3] * &scale, &(&s2d * &scale)),
        ];
        let cand = BiquadNumber::normalized(x.d, y, BigInt::from(4));
        if cand.square() == target {
            let root = BiquadNumber::normalized(x.d, cand.num.clone(), &cand.den * &x.den);
            debug_assert_eq!(root.square(), *x);
            return Ok(Some(root));
        }
    }
    Ok(None)
}

/// Number of places of Q(√2) ramified in K1.
pub fn t1_count(d: &FactoredSquarefree) -> Result<u32> {
    if !d.is_odd() {
        return Err(Error::EvenRadicand(d.value()));
    }
    let odd: u32 = d.primes().iter().map(|p| if matches!(p % 8, 1 | 7) { 2 } else { 1 }).sum();
    Ok(odd + u32::from(d.value() % 4 == 3))
}

/// The same count obtained by splitting primes in Q(√2) and checking
/// ramification of the prime above 2.
pub fn t1_by_splitting(field: &BiquadField) -> u32 {
    let odd: u32 = field
        .radicand()
        .primes()
        .iter()
        .map(|&p| if splitting_in(p, field.q_sqrt2()) == SplitType::Split { 2 } else { 1 })
        .sum();
    // e(2) = 4 in K1 exactly when 2 ramifies in all three quadratic subfields.
    let two =
        splitting_in(2, field.k()) == SplitType::Ramified && splitting_in(2, field.k_prime()) == SplitType::Ramified;
    odd + u32::from(two)
}

/// 2-rank of the class group of K1.
pub fn rank_a_k1(d: &FactoredSquarefree) -> Result<u32> {
    let t1 = t1_count(d)?;
    if d.has_prime_congruent(3, 4) {
        Ok(if d.has_prime_congruent(7, 8) { t1 - 3 } else { t1 - 2 })
    } else {
        let mut obstructed = false;
        for &p in d.primes() {
            if p % 8 == 1 && two_power_residue_test(p)? {
                obstructed = true;
            }
        }
        Ok(if obstructed { t1 - 2 } else { t1 - 1 })
    }
}

/// Exponent vectors `(a, b, c)` over F2 for which `±ε1^a ε2^b ε3^c` is a
/// square in K1, with ε1, ε2, ε3 the units of Q(√2), K and K'.
/// Always contains the zero vector.
pub fn unit_square_classes(field: &BiquadField) -> Result<Vec<[u8; 3]>> {
    let units = field.units();
    let mut out = vec![[0u8; 3]];
    for mask in 1u8..8 {
        let v = [mask & 1, mask >> 1 & 1, mask >> 2 & 1];
        let mut prod = BiquadNumber::from_integers(field, [1, 0, 0, 0]);
        for (i, u) in units.iter().enumerate() {
            if v[i] == 1 {
                prod = prod.mul(u);
            }
        }
        let candidate = if prod.is_totally_positive() {
            Some(prod)
        } else if prod.neg().is_totally_positive() {
            Some(prod.neg())
        } else {
            None
        };
        if let Some(c) = candidate {
            if is_square_in_k1(&c, field)? {
                out.push(v);
            }
        }
    }
    // Square classes form a subgroup.
    for a in &out {
        for b in &out {
            let s = [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2]];
            assert!(out.contains(&s), "unit square classes are not closed: {out:?}");
        }
    }
    Ok(out)
}

/// Hasse unit index `[E(K1) : <-1, ε1, ε2, ε3>]`.
pub fn hasse_unit_index(field: &BiquadField) -> Result<u64> {
    Ok(unit_square_classes(field)?.len() as u64)
}

/// The unit systems of a real biquadratic field, as F2 spans of exponent
/// vectors whose square roots join the units, with the norm hypotheses under
/// which each arises. Labels refer to three subfields in some order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitSystem {
    /// {ε1, ε2, ε3}, N(ε1) = 1.
    Plain,
    /// {√ε1, ε2, ε3}, N(ε1) = 1.
    RootOne,
    /// {√ε1, √ε2, ε3}, N(ε1) = N(ε2) = 1.
    RootTwo,
    /// {√(ε1ε2), ε2, ε3}, N(ε1) = N(ε2) = 1.
    RootProduct,
    /// {√(ε1ε2), ε2, √ε3}, all norms 1.
    RootProductAndOne,
    /// {√(ε1ε2), √(ε2ε3), √(ε3ε1)}, all norms 1.
    PairwiseRoots,
    /// {√(ε1ε2ε3), ε2, ε3}, all norms equal.
    RootOfAll,
}

impl UnitSystem {
    pub const ALL: [UnitSystem; 7] = [
        UnitSystem::Plain,
        UnitSystem::RootOne,
        UnitSystem::RootTwo,
        UnitSystem::RootProduct,
        UnitSystem::RootProductAndOne,
        UnitSystem::PairwiseRoots,
        UnitSystem::RootOfAll,
    ];

    fn generators(self) -> &'static [[u8; 3]] {
        match self {
            UnitSystem::Plain => &[],
            UnitSystem::RootOne => &[[1, 0, 0]],
            UnitSystem::RootTwo => &[[1, 0, 0], [0, 1, 0]],
            UnitSystem::RootProduct => &[[1, 1, 0]],
            UnitSystem::RootProductAndOne => &[[1, 1, 0], [0, 0, 1]],
            UnitSystem::PairwiseRoots => &[[1, 1, 0], [0, 1, 1]],
            UnitSystem::RootOfAll => &[[1, 1, 1]],
        }
    }

    fn norms_allow(self, n: [i8; 3]) -> bool {
        match self {
            UnitSystem::Plain | UnitSystem::RootOne => n[0] == 1,
            UnitSystem::RootTwo | UnitSystem::RootProduct => n[0] == 1 && n[1] == 1,
            UnitSystem::RootProductAndOne | UnitSystem::PairwiseRoots => n.iter().all(|&x| x == 1),
            UnitSystem::RootOfAll => n[0] == n[1] && n[1] == n[2],
        }
    }

    fn span(self) -> Vec<[u8; 3]> {
        let gens = self.generators();
        let mut out = Vec::new();
        for mask in 0u32..(1 << gens.len()) {
            let mut v = [0u8; 3];
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for j in 0..3 {
                        v[j] ^= g[j];
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// The Hasse unit index this system realizes.
    pub fn index(self) -> u64 {
        1 << self.generators().len()
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The first listed unit system matching the computed square classes and
/// unit norms under some labelling of the subfields.
pub fn matching_unit_system(classes: &[[u8; 3]], norms: [i8; 3]) -> Option<UnitSystem> {
    let mut ours: Vec<[u8; 3]> = classes.to_vec();
    ours.sort_unstable();
    for system in UnitSystem::ALL {
        for perm in &PERMUTATIONS {
            // listed label i is our subfield perm[i]
            let n = [norms[perm[0]], norms[perm[1]], norms[perm[2]]];
            if !system.norms_allow(n) {
                continue;
            }
            let mut mapped: Vec<[u8; 3]> = system
                .span()
                .into_iter()
                .map(|v| {
                    let mut w = [0u8; 3];
                    for i in 0..3 {
                        w[perm[i]] = v[i];
                    }
                    w
                })
                .collect();
            mapped.sort_unstable();
            if mapped == ours {
                return Some(system);
            }
        }
    }
    None
}

/// `#A(K1) = Q * h1 * h2 * h3 / 4`.
pub fn kuroda_order(q: u64, h_k: u64, h_k_prime: u64, h_q_sqrt2: u64) -> Result<u64> {
    let product = q
        .checked_mul(h_k)
        .and_then(|x| x.checked_mul(h_k_prime))
        .and_then(|x| x.checked_mul(h_q_sqrt2))
        .ok_or_else(|| Error::InvalidInput("Kuroda product overflows".into()))?;
    if product % 4 != 0 {
        return Err(Error::NonIntegral(product));
    }
    Ok(product / 4)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum K1Structure {
    Determined { group: Abelian2Group },
    Ambiguous { rank: u32, order: u64, candidates: Vec<Abelian2Group> },
}

/// Partitions of `n` into exactly `r` positive parts, each non-decreasing.
fn partitions(n: u32, r: u32, min: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first * r <= n {
        for mut rest in partitions(n - first, r - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// The abelian 2-groups of the given rank and order; determined when unique.
pub fn structure_a_k1(rank: u32, order: u64) -> Result<K1Structure> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::InvalidInput(format!("{order} is not a power of 2")));
    }
    let n = order.trailing_zeros();
    let candidates: Vec<Abelian2Group> = partitions(n, rank, 1)
        .into_iter()
        .map(|p| Abelian2Group::new(p.into_iter().map(|e| 1u64 << e).collect()).expect("valid"))
        .collect();
    match candidates.len() {
        0 => Err(Error::Inconsistent { rank, order }),
        1 => Ok(K1Structure::Determined { group: candidates.into_iter().next().expect("one") }),
        _ => Ok(K1Structure::Ambiguous { rank, order, candidates }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(d: u64) -> FactoredSquarefree {
        factor_squarefree(d).unwrap()
    }

    #[test]
    fn t1_examples() {
        assert_eq!(t1_count(&sf(1365)), Ok(5));
        assert_eq!(t1_count(&sf(5 * 13 * 3 * 11)), Ok(4));
        assert_eq!(t1_count(&sf(1885)), Ok(3));
        assert_eq!(t1_count(&sf(2730)), Err(Error::EvenRadicand(2730)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_a_k1(&sf(1365)), Ok(2));
        assert_eq!(rank_a_k1(&sf(1885)), Ok(2));
        assert_eq!(rank_a_k1(&sf(2730)), Err(Error::EvenRadicand(2730)));
    }

    #[test]
    fn kuroda_examples() {
        assert_eq!(kuroda_order(1, 4, 8, 1), Ok(8));
        assert_eq!(kuroda_order(4, 1, 1, 1), Ok(1));
        assert_eq!(kuroda_order(1, 1, 1, 1), Err(Error::NonIntegral(1)));
    }

    #[test]
    fn structure_examples() {
        let det = |v: Vec<u64>| K1Structure::Determined { group: Abelian2Group::new(v).unwrap() };
        assert_eq!(structure_a_k1(2, 8), Ok(det(vec![2, 4])));
        assert_eq!(structure_a_k1(2, 4), Ok(det(vec![2, 2])));
        assert_eq!(structure_a_k1(1, 16), Ok(det(vec![16])));
        assert_eq!(structure_a_k1(0, 1), Ok(det(vec![])));
        assert!(matches!(structure_a_k1(2, 16), Ok(K1Structure::Ambiguous { .. })));
        assert_eq!(structure_a_k1(3, 4), Err(Error::Inconsistent { rank: 3, order: 4 }));
        assert_eq!(structure_a_k1(0, 2), Err(Error::Inconsistent { rank: 0, order: 2 }));
    }

    #[test]
    fn squares() {
        let f = BiquadField::new(1365).unwrap();
        let x = BiquadNumber::from_integers(&f, [3, 2, 0, 0]);
        assert!(is_square_in_k1(&x, &f).unwrap());
        assert!(!is_square_in_k1(&BiquadNumber::from_integers(&f, [-1, 0, 0, 0]), &f).unwrap());
        assert!(is_square_in_k1(&BiquadNumber::from_integers(&f, [2, 0, 0, 0]), &f).unwrap());
        assert!(is_square_in_k1(&BiquadNumber::from_integers(&f, [1365, 0, 0, 0]), &f).unwrap());
        assert!(is_square_in_k1(&BiquadNumber::from_integers(&f, [2730, 0, 0, 0]), &f).unwrap());
        assert!(!is_square_in_k1(&BiquadNumber::from_integers(&f, [3, 0, 0, 0]), &f).unwrap());
        let [_, eps, _] = f.units();
        assert!(!is_square_in_k1(&eps, &f).unwrap());
        // a square with a denominator: ((1 + √1365)/2)^2
        let y = BiquadNumber::new(&f, [1, 0, 1, 0].map(BigInt::from), BigInt::from(2)).unwrap();
        assert!(is_square_in_k1(&y.square(), &f).unwrap());
    }

    #[test]
    fn embedding_signs() {
        let f = BiquadField::new(5).unwrap();
        // 1 + √2 - √5 ~ 0.18, 1 + √2 + √5 ~ 4.65, 1 - √2 - √5 ~ -2.65, 1 - √2 + √5 ~ 1.82
        let x = BiquadNumber::from_integers(&f, [1, 1, -1, 0]);
        assert_eq!(x.embedding_sign(1, 1), Ordering::Greater);
        assert_eq!(x.embedding_sign(1, -1), Ordering::Greater);
        assert_eq!(x.embedding_sign(-1, 1), Ordering::Less);
        assert_eq!(x.embedding_sign(-1, -1), Ordering::Greater);
        assert!(!x.is_totally_positive());
    }

    #[test]
    fn hasse_index_1365() {
        let f = BiquadField::new(1365).unwrap();
        assert_eq!(hasse_unit_index(&f), Ok(1));
    }

    #[test]
    fn unit_systems() {
        assert_eq!(UnitSystem::PairwiseRoots.index(), 4);
        assert_eq!(matching_unit_system(&[[0, 0, 0]], [-1, 1, 1]), Some(UnitSystem::Plain));
        assert_eq!(matching_unit_system(&[[0, 0, 0]], [-1, -1, -1]), None);
        assert_eq!(matching_unit_system(&[[0, 0, 0], [0, 1, 1]], [-1, 1, 1]), Some(UnitSystem::RootProduct));
        assert_eq!(matching_unit_system(&[[0, 0, 0], [1, 1, 1]], [-1, -1, -1]), Some(UnitSystem::RootOfAll));
    }
}
