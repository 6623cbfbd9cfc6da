//! Indefinite binary quadratic forms `a x^2 + b xy + c y^2` of positive
//! non-square discriminant: reduction, rho-cycles and composition.
//!
//! Narrow classes correspond one-to-one to rho-cycles of reduced forms, which
//! gives an exact class group oracle with no floating point anywhere.

mod abelian;
mod group;

pub use abelian::Abelian2Group;
pub use group::{invariant_factors, narrow_class_group, ordinary_class_group, two_sylow, FormClassGroup};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, factor, isqrt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndefiniteForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

pub(crate) fn check_discriminant(d: i64) -> Result<()> {
    if d <= 0 || d.rem_euclid(4) > 1 || isqrt(d as u64).pow(2) == d as u64 {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

fn gcd_i(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

impl IndefiniteForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 || c == 0 {
            return Err(Error::InvalidInput(format!("({a}, {b}, {c}) has a zero outer coefficient")));
        }
        let f = IndefiniteForm { a, b, c };
        let d = f.discriminant_wide();
        if d > i64::MAX as i128 {
            return Err(Error::InvalidInput(format!("discriminant of ({a}, {b}, {c}) is too large")));
        }
        check_discriminant(d as i64)?;
        Ok(f)
    }

    fn discriminant_wide(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant_wide() as i64
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i(gcd_i(self.a as i128, self.b as i128), self.c as i128) == 1
    }

    /// `0 < b < √D` and `√D - b < 2|a| < √D + b`.
    pub fn is_reduced(&self) -> bool {
        let s = isqrt(self.discriminant() as u64) as i64;
        let a2 = 2 * self.a.abs();
        0 < self.b && self.b <= s && s < a2 + self.b && a2 - self.b <= s
    }

    /// One reduction step `(a, b, c) -> (c, b', (b'^2 - D) / 4c)` with `b' = -b (mod 2c)`.
    pub fn rho(&self) -> IndefiniteForm {
        let d = self.discriminant_wide();
        let s = isqrt(d as u64) as i128;
        let c = self.c as i128;
        let m = 2 * c.abs();
        let b = self.b as i128;
        let nb = if c.abs() <= s {
            s - (s + b).rem_euclid(m)
        } else {
            let r = (-b).rem_euclid(m);
            if r > c.abs() {
                r - m
            } else {
                r
            }
        };
        let nc = (nb * nb - d) / (4 * c);
        IndefiniteForm { a: self.c, b: nb as i64, c: nc as i64 }
    }

    /// The form `(a, -b, c)`, representing the inverse class.
    pub fn inverse(&self) -> IndefiniteForm {
        IndefiniteForm { a: self.a, b: -self.b, c: self.c }
    }

    /// Evaluates the form at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }
}

impl fmt::Display for IndefiniteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `(1, b0, (b0^2 - D) / 4)` with `b0 = D mod 2`.
pub fn principal_form(d: i64) -> Result<IndefiniteForm> {
    check_discriminant(d)?;
    let b0 = d.rem_euclid(2);
    Ok(IndefiniteForm { a: 1, b: b0, c: (b0 * b0 - d) / 4 })
}

/// `(-1, b0, (D - b0^2) / 4)`, whose class is trivial exactly when the
/// fundamental unit has norm -1.
pub fn sign_form(d: i64) -> Result<IndefiniteForm> {
    check_discriminant(d)?;
    let b0 = d.rem_euclid(2);
    Ok(IndefiniteForm { a: -1, b: b0, c: (d - b0 * b0) / 4 })
}

pub fn reduce(f: &IndefiniteForm) -> IndefiniteForm {
    let mut g = *f;
    // The number of steps is O(log |a| + cycle length); reduced forms are reached
    // well within this bound.
    let limit = 4 * (64 + isqrt(f.discriminant() as u64) as usize);
    for _ in 0..limit {
        if g.is_reduced() {
            return g;
        }
        g = g.rho();
    }
    panic!("rho-reduction of {f} did not terminate");
}

/// Divisors of `n` in `(lo, hi]`, by trial or by factorization, whichever is cheaper.
fn divisors_in(n: u64, lo: u64, hi: u64) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    if hi - lo <= 64 {
        return (lo + 1..=hi).filter(|&a| n % a == 0).collect();
    }
    let mut divs = vec![1u64];
    for (p, e) in factor(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.retain(|&a| lo < a && a <= hi);
    divs.sort_unstable();
    divs
}

/// All primitive reduced forms of discriminant `d`.
pub fn reduced_forms(d: i64) -> Result<Vec<IndefiniteForm>> {
    check_discriminant(d)?;
    let s = isqrt(d as u64) as i64;
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = ((d - b * b) / 4) as u64;
        // s < 2|a| + b and 2|a| - b <= s
        let lo = ((s - b) / 2) as u64;
        let hi = ((s + b) / 2) as u64;
        for a in divisors_in(n, lo, hi) {
            let a = a as i64;
            if s >= 2 * a + b || 2 * a - b > s {
                continue;
            }
            let c = n as i64 / a;
            for f in [IndefiniteForm { a, b, c: -c }, IndefiniteForm { a: -a, b, c }] {
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Composition by united forms; the result is reduced.
pub fn compose(f: &IndefiniteForm, g: &IndefiniteForm) -> Result<IndefiniteForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(Error::DiscriminantMismatch(disc, g.discriminant()));
    }
    let dd = disc as i128;
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);
    let s = (b1 + b2) / 2;
    // d = gcd(a1, a2, s) = u a1 + v a2 + w s
    let (d0, _, y) = ext_gcd(a1, a2);
    let (d, p, w) = ext_gcd(d0, s);
    let v = p * y;
    let a3 = a1 * a2 / (d * d);
    let m = 2 * a3.abs();
    let b3 = (b2 + 2 * (a2 / d) * ((v * (s - b2) - w * c2).rem_euclid(m))).rem_euclid(m);
    let c3 = (b3 * b3 - dd) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, dd);
    let h = IndefiniteForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 };
    Ok(reduce(&h))
}
