//! Exact elementary number theory on machine integers.
//!
//! Primality is deterministic over the whole `u64` range (Miller-Rabin with a
//! witness set proven sufficient below 2^64), factorization is trial division
//! followed by Pollard rho, and the Kronecker and Hilbert symbols follow the
//! usual conventions at 2, -1 and infinity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

// Jaeschke / Sorenson-Webster: these bases decide primality for all n < 3.3e24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid on signed values: returns `(g, x, y)` with `g = x*a + y*b`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Deterministic primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    // n is odd, composite, and free of factors below the trial-division limit.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let f = pollard_brent(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

/// Full factorization as sorted `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    while n % 2 == 0 {
        push(2, &mut out);
        n /= 2;
    }
    let mut p = 3u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= n {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
        p += 2;
    }
    if n > 1 {
        let mut rest = Vec::new();
        factor_into(n, &mut rest);
        rest.sort_unstable();
        for q in rest {
            push(q, &mut out);
        }
    }
    out
}

/// A positive square-free integer together with its prime divisors in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FactoredRepr", into = "FactoredRepr")]
pub struct FactoredSquarefree {
    value: u64,
    primes: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FactoredRepr {
    value: u64,
    primes: Vec<u64>,
}

impl TryFrom<FactoredRepr> for FactoredSquarefree {
    type Error = Error;

    fn try_from(repr: FactoredRepr) -> Result<Self> {
        let f = factor_squarefree(repr.value)?;
        if f.primes != repr.primes {
            return Err(Error::InvalidInput(format!("prime list {:?} does not factor {}", repr.primes, repr.value)));
        }
        Ok(f)
    }
}

impl From<FactoredSquarefree> for FactoredRepr {
    fn from(f: FactoredSquarefree) -> Self {
        FactoredRepr { value: f.value, primes: f.primes }
    }
}

impl FactoredSquarefree {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn is_odd(&self) -> bool {
        self.value % 2 == 1
    }

    pub fn has_prime_congruent(&self, residue: u64, modulus: u64) -> bool {
        self.primes.iter().any(|p| p % modulus == residue)
    }

    /// `2 * self`, for odd values.
    pub fn doubled(&self) -> Option<FactoredSquarefree> {
        if !self.is_odd() {
            return None;
        }
        let value = self.value.checked_mul(2)?;
        let mut primes = Vec::with_capacity(self.primes.len() + 1);
        primes.push(2);
        primes.extend_from_slice(&self.primes);
        Some(FactoredSquarefree { value, primes })
    }
}

impl std::fmt::Display for FactoredSquarefree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn factor_squarefree(n: u64) -> Result<FactoredSquarefree> {
    if n == 0 {
        return Err(Error::InvalidInput("0 has no factorization".into()));
    }
    let mut primes = Vec::new();
    for (p, e) in factor(n) {
        if e > 1 {
            return Err(Error::NotSquarefree { n, prime: p });
        }
        primes.push(p);
    }
    Ok(FactoredSquarefree { value: n, primes })
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// (a/2) for odd a.
#[inline]
fn kronecker_two(a: i64) -> i8 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        _ => -1,
    }
}

/// Jacobi symbol (a/n) for odd positive n.
pub(crate) fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n).
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if a == 0 && n == 0 {
        return Err(Error::Undefined);
    }
    if n == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    let mut sign = 1i8;
    if n < 0 && a < 0 {
        sign = -1;
    }
    let mut m = n.unsigned_abs();
    let v = m.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        if v % 2 == 1 {
            sign *= kronecker_two(a);
        }
        m >>= v;
    }
    Ok(sign * jacobi(a, m))
}

/// Kronecker symbol for arguments known not to be both zero.
#[inline]
pub(crate) fn kron(a: i64, n: i64) -> i8 {
    kronecker(a, n).expect("kronecker symbol with n != 0")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        Ok(ResidueClass { residue: residue % modulus, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.residue
    }
}

/// Chinese remaindering over pairwise coprime moduli.
pub fn crt(congruences: &[ResidueClass]) -> Result<ResidueClass> {
    for (i, a) in congruences.iter().enumerate() {
        for b in &congruences[i + 1..] {
            if gcd(a.modulus, b.modulus) != 1 {
                return Err(Error::NonCoprimeModuli(a.modulus, b.modulus));
            }
        }
    }
    let mut acc = ResidueClass { residue: 0, modulus: 1 };
    for c in congruences {
        let m = acc.modulus as u128 * c.modulus as u128;
        if m > u64::MAX as u128 {
            return Err(Error::ModulusOverflow);
        }
        // x = r1 + m1 * t with m1 * t = r2 - r1 (mod m2)
        let (_, inv, _) = ext_gcd(acc.modulus as i128, c.modulus as i128);
        let m2 = c.modulus as i128;
        let diff = (c.residue as i128 - acc.residue as i128).rem_euclid(m2);
        let t = (diff * inv.rem_euclid(m2)).rem_euclid(m2);
        let x = acc.residue as u128 + acc.modulus as u128 * t as u128;
        acc = ResidueClass { residue: (x % m) as u64, modulus: m as u64 };
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    Infinity,
    Prime(u64),
}

fn split_power(x: i64, p: u64) -> (u32, i64) {
    let mut v = 0;
    let mut u = x;
    while u % p as i64 == 0 {
        u /= p as i64;
        v += 1;
    }
    (v, u)
}

/// Local Hilbert symbol (a, b) at `place`. Both arguments must be non-zero.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_power(a, 2);
            let (beta, v) = split_power(b, 2);
            let eps = |x: i64| u32::from(x.rem_euclid(4) == 3);
            let omega = |x: i64| u32::from(matches!(x.rem_euclid(8), 3 | 5));
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_power(a, p);
            let (beta, v) = split_power(b, p);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= jacobi(u, p);
            }
            if alpha % 2 == 1 {
                s *= jacobi(v, p);
            }
            s
        }
    }
}

/// The residue obstruction for a prime p = 1 (mod 8):
/// true iff 2^((p-1)/4) differs from (-1)^((p-1)/8) modulo p.
pub fn two_power_residue_test(p: u64) -> Result<bool> {
    if p % 8 != 1 {
        return Err(Error::WrongResidueClass { p, expected: 1, modulus: 8 });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let lhs = pow_mod(2, (p - 1) / 4, p);
    let rhs = if ((p - 1) / 8) % 2 == 0 { 1 } else { p - 1 };
    Ok(lhs != rhs)
}

/// Primes below `limit` by a plain sieve.
pub fn primes_below(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
