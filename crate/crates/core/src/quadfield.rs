//! Real quadratic fields Q(√d): discriminants, splitting of primes,
//! fundamental units from continued fractions, and exact square tests.
//!
//! Elements of the ring of integers are stored as `(A + B√d) / 2` with
//! arbitrary-precision numerators, so fundamental units never overflow.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_squarefree, hilbert_symbol, kron, FactoredSquarefree, Place};
use crate::error::{Error, Result};

/// Discriminant of Q(√d): `d` if d = 1 (mod 4), else `4d`.
pub fn discriminant(d: &FactoredSquarefree) -> u64 {
    let d = d.value();
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticField {
    radicand: FactoredSquarefree,
    discriminant: u64,
    unit: Arc<OnceLock<FundamentalUnit>>,
}

impl PartialEq for QuadraticField {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}

impl Eq for QuadraticField {}

impl QuadraticField {
    pub fn new(d: u64) -> Result<Self> {
        Self::from_factored(factor_squarefree(d)?)
    }

    pub fn from_factored(radicand: FactoredSquarefree) -> Result<Self> {
        if radicand.value() < 2 {
            return Err(Error::InvalidInput(format!("radicand must be at least 2, got {}", radicand.value())));
        }
        if radicand.value() > (i64::MAX as u64) / 4 {
            return Err(Error::InvalidInput(format!("radicand {} is too large", radicand.value())));
        }
        let discriminant = discriminant(&radicand);
        Ok(QuadraticField { radicand, discriminant, unit: Arc::new(OnceLock::new()) })
    }

    pub fn d(&self) -> u64 {
        self.radicand.value()
    }

    pub fn radicand(&self) -> &FactoredSquarefree {
        &self.radicand
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    /// The fundamental unit, computed on first use.
    pub fn unit(&self) -> &FundamentalUnit {
        self.unit.get_or_init(|| compute_fundamental_unit(self))
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.d())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_in(p: u64, field: &QuadraticField) -> SplitType {
    let disc = field.discriminant();
    if disc % p == 0 {
        return SplitType::Ramified;
    }
    match kron(disc as i64, p as i64) {
        1 => SplitType::Split,
        _ => SplitType::Inert,
    }
}

/// An algebraic integer `(A + B√d) / 2` of a real quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInteger {
    d: u64,
    a2: BigInt,
    b2: BigInt,
}

impl QuadInteger {
    /// `a + b√d` with integer coordinates.
    pub fn new(field: &QuadraticField, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInteger { d: field.d(), a2: a.into() * 2, b2: b.into() * 2 }
    }

    /// `(a2 + b2√d) / 2`; fails unless this is an algebraic integer of the field.
    pub fn from_halves(field: &QuadraticField, a2: impl Into<BigInt>, b2: impl Into<BigInt>) -> Result<Self> {
        Self::from_halves_d(field.d(), a2.into(), b2.into())
    }

    pub(crate) fn from_halves_d(d: u64, a2: BigInt, b2: BigInt) -> Result<Self> {
        let ok = if d % 4 == 1 { a2.is_even() == b2.is_even() } else { a2.is_even() && b2.is_even() };
        if !ok {
            return Err(Error::InvalidInput(format!("({a2} + {b2}√{d})/2 is not an integer of Q(√{d})")));
        }
        Ok(QuadInteger { d, a2, b2 })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Numerators `(A, B)` of `(A + B√d) / 2`.
    pub fn halves(&self) -> (&BigInt, &BigInt) {
        (&self.a2, &self.b2)
    }

    pub fn is_zero(&self) -> bool {
        self.a2.is_zero() && self.b2.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        (&self.a2 * &self.a2 - BigInt::from(self.d) * &self.b2 * &self.b2) / 4
    }

    pub fn trace(&self) -> BigInt {
        self.a2.clone()
    }

    pub fn conjugate(&self) -> Self {
        QuadInteger { d: self.d, a2: self.a2.clone(), b2: -&self.b2 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "elements of different fields");
        let d = BigInt::from(self.d);
        let a = &self.a2 * &other.a2 + d * &self.b2 * &other.b2;
        let b = &self.a2 * &other.b2 + &other.a2 * &self.b2;
        QuadInteger { d: self.d, a2: a / 2, b2: b / 2 }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = QuadInteger { d: self.d, a2: BigInt::from(2), b2: BigInt::zero() };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Sign of the real embedding with √d > 0.
    pub fn sign(&self) -> Ordering {
        sign_of_surd(&self.a2, &self.b2, self.d)
    }

    /// Compares with the rational integer `n` under the embedding √d > 0.
    pub fn cmp_integer(&self, n: i64) -> Ordering {
        sign_of_surd(&(&self.a2 - BigInt::from(2 * n)), &self.b2, self.d)
    }
}

/// Exact sign of `x + y√d`.
pub(crate) fn sign_of_surd(x: &BigInt, y: &BigInt, d: u64) -> Ordering {
    let sx = x.sign();
    let sy = y.sign();
    use num_bigint::Sign::*;
    match (sx, sy) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        (Plus, Minus) => (x * x).cmp(&(BigInt::from(d) * y * y)),
        (Minus, Plus) => (BigInt::from(d) * y * y).cmp(&(x * x)),
    }
}

impl fmt::Display for QuadInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = if self.a2.is_even() && self.b2.is_even() {
            (&self.a2 / 2, &self.b2 / 2)
        } else {
            (self.a2.clone(), self.b2.clone())
        };
        let halved = self.a2.is_odd() || self.b2.is_odd();
        let body = if b.is_zero() {
            format!("{a}")
        } else {
            let sign = if b.is_negative() { '-' } else { '+' };
            let mag = b.abs();
            let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
            format!("{a} {sign} {coeff}√{}", self.d)
        };
        if halved {
            write!(f, "({body})/2")
        } else {
            write!(f, "{body}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub value: QuadInteger,
    pub norm: i8,
    pub cf_period: usize,
}

/// Continued-fraction expansion of `(P0 + √d) / Q0`. Returns the period
/// length and the convergent `(p, q)` at index `period - 1`.
fn cf_expand(d: u64, p0: i64, q0: i64) -> (usize, BigInt, BigInt) {
    let s = crate::arith::isqrt(d) as i64;
    let d = d as i64;
    let (mut p, mut q) = (p0, q0);
    // convergents p_{k-1}, p_{k-2}
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut k = 0usize;
    loop {
        let a = (p + s).div_euclid(q);
        let h = &h1 * a + &h2;
        let kk = &k1 * a + &k2;
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, kk);
        p = a * q - p;
        q = (d - p * p) / q;
        k += 1;
        if q == q0 {
            return (k, h1, k1);
        }
    }
}

fn compute_fundamental_unit(field: &QuadraticField) -> FundamentalUnit {
    let d = field.d();
    let (period, value) = if d % 4 == 1 {
        // (1 + √d)/2 = [a0; a1, ..., a_l]; Q returns to 2 at the period.
        let (l, p, q) = cf_expand(d, 1, 2);
        // p - q * (1 - √d)/2
        let a2 = 2 * p - &q;
        (l, QuadInteger { d, a2, b2: q })
    } else {
        let (l, p, q) = cf_expand(d, 0, 1);
        (l, QuadInteger { d, a2: 2 * p, b2: 2 * q })
    };
    let norm = if period % 2 == 0 { 1 } else { -1 };
    debug_assert_eq!(value.norm(), BigInt::from(norm));
    FundamentalUnit { value, norm, cf_period: period }
}

pub fn fundamental_unit(field: &QuadraticField) -> FundamentalUnit {
    field.unit().clone()
}

pub fn unit_norm(field: &QuadraticField) -> i8 {
    field.unit().norm
}

/// The square root of `x` in K, if it exists.
pub fn sqrt_in_k(x: &QuadInteger) -> Option<QuadInteger> {
    let n = x.norm();
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s != n {
        return None;
    }
    let d = BigInt::from(x.d);
    // y = (u + v√d)/2: u^2 + d v^2 = 2A, u v = B, u^2 - d v^2 = +-4s
    for sigma in [1i32, -1] {
        let two_s: BigInt = &s * 2 * sigma;
        let u2 = &x.a2 + &two_s;
        let dv2 = &x.a2 - &two_s;
        if u2.is_negative() || dv2.is_negative() || !dv2.is_multiple_of(&d) {
            continue;
        }
        let v2 = &dv2 / &d;
        let u = u2.sqrt();
        let v = v2.sqrt();
        if &u * &u != u2 || &v * &v != v2 {
            continue;
        }
        for v in [v.clone(), -v] {
            let Ok(y) = QuadInteger::from_halves_d(x.d, u.clone(), v) else {
                continue;
            };
            if y.square() == *x {
                return Some(y);
            }
        }
    }
    None
}

pub fn is_square_in_k(x: &QuadInteger) -> bool {
    assert!(!x.is_zero(), "square test of zero");
    sqrt_in_k(x).is_some()
}

/// Whether -1 is a norm from K, by the local Hilbert symbols (-1, d).
pub fn minus_one_is_norm(field: &QuadraticField) -> bool {
    let d = field.d() as i64;
    if hilbert_symbol(-1, d, Place::Infinity) != 1 || hilbert_symbol(-1, d, Place::Prime(2)) != 1 {
        return false;
    }
    field.radicand().primes().iter().all(|&p| hilbert_symbol(-1, d, Place::Prime(p)) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(field(1365).discriminant(), 1365);
        assert_eq!(field(2730).discriminant(), 10920);
        assert_eq!(field(3).discriminant(), 12);
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(18).is_err());
    }

    #[test]
    fn splitting() {
        let q2 = field(2);
        assert_eq!(splitting_in(7, &q2), SplitType::Split);
        assert_eq!(splitting_in(3, &q2), SplitType::Inert);
        assert_eq!(splitting_in(2, &q2), SplitType::Ramified);
        assert_eq!(splitting_in(5, &field(5)), SplitType::Ramified);
        assert_eq!(splitting_in(2, &field(5)), SplitType::Inert);
        assert_eq!(splitting_in(2, &field(17)), SplitType::Split);
    }

    #[test]
    fn unit_examples() {
        let u = fundamental_unit(&field(2));
        assert_eq!(u.value, QuadInteger::new(&field(2), 1, 1));
        assert_eq!(u.norm, -1);
        let u = fundamental_unit(&field(5));
        assert_eq!(u.value.halves(), (&BigInt::from(1), &BigInt::from(1)));
        assert_eq!(u.norm, -1);
        let u = fundamental_unit(&field(3));
        assert_eq!(u.value, QuadInteger::new(&field(3), 2, 1));
        assert_eq!(u.norm, 1);
        assert_eq!(unit_norm(&field(15)), 1);
        assert_eq!(unit_norm(&field(10)), -1);
        assert_eq!(fundamental_unit(&field(10)).value, QuadInteger::new(&field(10), 3, 1));
        // d = 94 has a famously large unit: 2143295 + 221064 √94
        assert_eq!(fundamental_unit(&field(94)).value, QuadInteger::new(&field(94), 2_143_295, 221_064));
        // d = 61: (39 + 5√61)/2
        assert_eq!(fundamental_unit(&field(61)).value.halves(), (&BigInt::from(39), &BigInt::from(5)));
    }

    #[test]
    fn square_examples() {
        let k5 = field(5);
        assert!(is_square_in_k(&QuadInteger::new(&k5, 9, 0)));
        let k3 = field(3);
        let x = QuadInteger::new(&k3, 7, 4);
        assert!(is_square_in_k(&x));
        let y = sqrt_in_k(&x).unwrap();
        assert_eq!(y.square(), x);
        assert!(!is_square_in_k(&QuadInteger::new(&k3, 2, 1)));
        assert!(!is_square_in_k(&QuadInteger::new(&k3, -1, 0)));
        // ((1+√5)/2)^2 = (3+√5)/2
        let x = QuadInteger::from_halves(&k5, 3, 1).unwrap();
        assert_eq!(sqrt_in_k(&x).unwrap().halves(), (&BigInt::from(1), &BigInt::from(1)));
        // 3 is a square in Q(√3) only up to √3: 3 = (√3)^2
        assert!(is_square_in_k(&QuadInteger::new(&k3, 3, 0)));
    }

    #[test]
    fn minus_one_examples() {
        assert!(minus_one_is_norm(&field(5)));
        assert!(!minus_one_is_norm(&field(3)));
        assert!(minus_one_is_norm(&field(34)));
        assert_eq!(unit_norm(&field(34)), 1);
    }

    #[test]
    fn display() {
        assert_eq!(fundamental_unit(&field(2)).value.to_string(), "1 + √2");
        assert_eq!(fundamental_unit(&field(5)).value.to_string(), "(1 + √5)/2");
        assert_eq!(fundamental_unit(&field(10)).value.to_string(), "3 + √10");
    }
}
