use serde::{Deserialize, Serialize};

use crate::arith::{crt, is_prime, kron, ResidueClass};
use crate::error::{Error, Result};

/// Default number of progression steps scanned per prime.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// `(p_k / p_j) = value` for 1-based positions `j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolConstraint {
    pub k: usize,
    pub j: usize,
    pub value: i8,
}

/// Target residues mod 8 for a tuple of primes, and prescribed Legendre
/// symbols between them. Pairs without a constraint are free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct SymbolSpec {
    residues: Vec<u64>,
    symbols: Vec<SymbolConstraint>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    residues: Vec<u64>,
    symbols: Vec<SymbolConstraint>,
}

impl TryFrom<SpecRepr> for SymbolSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        SymbolSpec::new(r.residues, r.symbols)
    }
}

impl From<SymbolSpec> for SpecRepr {
    fn from(s: SymbolSpec) -> Self {
        SpecRepr { residues: s.residues, symbols: s.symbols }
    }
}

impl SymbolSpec {
    pub fn new(residues: Vec<u64>, mut symbols: Vec<SymbolConstraint>) -> Result<Self> {
        if let Some(&r) = residues.iter().find(|&&r| !matches!(r, 1 | 3 | 5 | 7)) {
            return Err(Error::InvalidResidue(r));
        }
        let t = residues.len();
        for s in &symbols {
            let (k, j) = (s.k, s.j);
            if j == 0 || j >= k {
                return Err(Error::InvalidSymbol { k, j, reason: "positions must satisfy 1 <= j < k" });
            }
            if k > t {
                return Err(Error::InvalidSymbol { k, j, reason: "position exceeds the tuple length" });
            }
            if s.value != 1 && s.value != -1 {
                return Err(Error::InvalidSymbol { k, j, reason: "symbol value must be 1 or -1" });
            }
        }
        symbols.sort_by_key(|s| (s.k, s.j));
        if let Some(w) = symbols.windows(2).find(|w| (w[0].k, w[0].j) == (w[1].k, w[1].j)) {
            return Err(Error::InvalidSymbol { k: w[0].k, j: w[0].j, reason: "pair given more than once" });
        }
        Ok(SymbolSpec { residues, symbols })
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Constraints sorted by `(k, j)`.
    pub fn symbols(&self) -> &[SymbolConstraint] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Constraints on position `k` (1-based) against earlier positions.
    fn constraints_on(&self, k: usize) -> impl Iterator<Item = &SymbolConstraint> {
        self.symbols.iter().filter(move |s| s.k == k)
    }
}

/// How the next prime of a tuple is looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStrategy {
    /// The least admissible prime: scan `x ≡ a (mod 8)` upward and test each
    /// symbol directly, i.e. the union of all admissible residue classes.
    #[default]
    LeastPrime,
    /// A single progression `y0 + k M` with `M = 8 p1 ... p_{i-1}`, where `y0`
    /// solves `y0 ≡ a (mod 8)`, `y0 ≡ v_j (mod p_j)` for the least `v_j` with
    /// the prescribed symbol.
    SingleProgression,
}

/// Whether `primes` are distinct primes meeting every residue and symbol constraint.
pub fn tuple_satisfies(spec: &SymbolSpec, primes: &[u64]) -> bool {
    if primes.len() != spec.len() {
        return false;
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) || p % 8 != spec.residues[i] || primes[..i].contains(&p) {
            return false;
        }
    }
    spec.symbols.iter().all(|s| kron(primes[s.k - 1] as i64, primes[s.j - 1] as i64) == s.value)
}

/// Primes `(p1, ..., pt)` with `p_i ≡ a_i (mod 8)` and `(p_k / p_j) = ε_kj`,
/// each the least admissible prime given the earlier ones.
pub fn find_prime_tuple(spec: &SymbolSpec, search_bound: u64) -> Result<Vec<u64>> {
    find_prime_tuple_with(spec, search_bound, 0, SearchStrategy::LeastPrime)
}

/// As [`find_prime_tuple`], with the first prime at least `start` and a choice
/// of strategy. At most `search_bound` progression terms are tried per prime.
pub fn find_prime_tuple_with(
    spec: &SymbolSpec,
    search_bound: u64,
    start: u64,
    strategy: SearchStrategy,
) -> Result<Vec<u64>> {
    let mut primes: Vec<u64> = Vec::with_capacity(spec.len());
    for i in 0..spec.len() {
        let lower = if i == 0 { start } else { 0 };
        let p = match strategy {
            SearchStrategy::LeastPrime => next_least(spec, &primes, lower, search_bound),
            SearchStrategy::SingleProgression => next_in_progression(spec, &primes, lower, search_bound)?,
        };
        primes.push(p.ok_or(Error::NotFoundWithinBound { position: i + 1, bound: search_bound })?);
    }
    if !tuple_satisfies(spec, &primes) {
        return Err(Error::InvalidInput(format!("tuple {primes:?} failed re-verification")));
    }
    Ok(primes)
}

fn admissible(spec: &SymbolSpec, earlier: &[u64], x: u64) -> bool {
    let k = earlier.len() + 1;
    !earlier.contains(&x)
        && spec.constraints_on(k).all(|s| kron(x as i64, earlier[s.j - 1] as i64) == s.value)
        && is_prime(x)
}

/// First term `>= lower` of the progression `r + m N`.
fn first_term(r: u64, m: u64, lower: u64) -> Option<u64> {
    if r >= lower {
        return Some(r);
    }
    let steps = (lower - r).div_ceil(m);
    steps.checked_mul(m)?.checked_add(r)
}

fn next_least(spec: &SymbolSpec, earlier: &[u64], lower: u64, bound: u64) -> Option<u64> {
    let a = spec.residues[earlier.len()];
    let mut x = first_term(a, 8, lower)?;
    for _ in 0..bound {
        if admissible(spec, earlier, x) {
            return Some(x);
        }
        x = x.checked_add(8)?;
    }
    None
}

fn next_in_progression(spec: &SymbolSpec, earlier: &[u64], lower: u64, bound: u64) -> Result<Option<u64>> {
    let k = earlier.len() + 1;
    let mut classes = vec![ResidueClass::new(spec.residues[k - 1], 8)?];
    for s in spec.constraints_on(k) {
        let p = earlier[s.j - 1];
        let v = (1..p).find(|&v| kron(v as i64, p as i64) == s.value).expect("both symbol values occur");
        classes.push(ResidueClass::new(v, p)?);
    }
    let base = crt(&classes)?;
    let Some(mut x) = first_term(base.residue(), base.modulus(), lower) else {
        return Ok(None);
    };
    for _ in 0..bound {
        if admissible(spec, earlier, x) {
            return Ok(Some(x));
        }
        match x.checked_add(base.modulus()) {
            Some(y) => x = y,
            None => return Ok(None),
        }
    }
    Ok(None)
}
