use std::collections::HashMap;

use super::{
    check_discriminant, compose, principal_form, reduce, reduced_forms, sign_form, Abelian2Group, IndefiniteForm,
};
use crate::arith::factor;
use crate::error::{Error, Result};

/// Compositions are tabulated up front for groups at most this large.
const TABLE_LIMIT: usize = 64;

fn pow_elem(x: usize, mut e: u64, identity: usize, op: &impl Fn(usize, usize) -> usize) -> usize {
    let mut acc = identity;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = op(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = op(base, base);
        }
    }
    acc
}

/// Invariant factors `d1 | d2 | ... | dk` (all > 1, non-decreasing) of the
/// finite abelian group on `0..order` with the given identity and law.
pub fn invariant_factors(order: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> Vec<u64> {
    let n = order as u64;
    let primes: Vec<(u64, u32)> = factor(n);
    let orders: Vec<u64> = (0..order)
        .map(|x| {
            let mut m = n;
            for &(q, _) in &primes {
                while m % q == 0 && pow_elem(x, m / q, identity, &op) == identity {
                    m /= q;
                }
            }
            m
        })
        .collect();

    // For each prime, the exponents of the cyclic p-factors in decreasing order.
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &(p, e) in &primes {
        let coprime_part = n / p.pow(e);
        let val = |mut m: u64| {
            let mut v = 0;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            v
        };
        // log_p #G[p^k] for k = 0..=e
        let mut logs = vec![0u32; e as usize + 1];
        for k in 1..=e {
            let count = orders.iter().filter(|&&o| val(o) <= k).count() as u64 / coprime_part;
            let mut l = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                l += 1;
            }
            logs[k as usize] = l;
        }
        // r_k = #{i : e_i >= k}
        let r: Vec<u32> = (1..=e as usize).map(|k| logs[k] - logs[k - 1]).collect();
        let mut powers = Vec::new();
        for k in (1..=e as usize).rev() {
            let next = if k < e as usize { r[k] } else { 0 };
            for _ in 0..(r[k - 1] - next) {
                powers.push(p.pow(k as u32));
            }
        }
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> =
        (0..len).map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product()).collect();
    out.reverse();
    out
}

/// A narrow or ordinary form class group of a fixed discriminant.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    discriminant: i64,
    narrow: bool,
    /// Canonical representative of each class.
    classes: Vec<IndefiniteForm>,
    structure: Vec<u64>,
    principal: usize,
    /// Reduced form -> narrow class index.
    cycle_of: HashMap<IndefiniteForm, usize>,
    /// Narrow class index -> class index in this group.
    class_map: Vec<usize>,
    table: Option<Vec<usize>>,
}

fn canonical_key(f: &IndefiniteForm) -> (i64, bool, i64) {
    (f.a.abs(), f.a < 0, f.b)
}

impl FormClassGroup {
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn is_narrow(&self) -> bool {
        self.narrow
    }

    pub fn classes(&self) -> &[IndefiniteForm] {
        &self.classes
    }

    pub fn order(&self) -> usize {
        self.classes.len()
    }

    /// Invariant factors of the full group, non-decreasing.
    pub fn structure(&self) -> &[u64] {
        &self.structure
    }

    pub fn principal(&self) -> usize {
        self.principal
    }

    /// Index of the class containing `f`.
    pub fn class_of(&self, f: &IndefiniteForm) -> Result<usize> {
        if f.discriminant() != self.discriminant {
            return Err(Error::DiscriminantMismatch(self.discriminant, f.discriminant()));
        }
        let r = reduce(f);
        let narrow = *self.cycle_of.get(&r).ok_or_else(|| Error::InvalidInput(format!("{f} is not primitive")))?;
        Ok(self.class_map[narrow])
    }

    /// Index of the product of classes `i` and `j`.
    pub fn compose_classes(&self, i: usize, j: usize) -> usize {
        if let Some(t) = &self.table {
            return t[i * self.order() + j];
        }
        self.compose_uncached(i, j)
    }

    fn compose_uncached(&self, i: usize, j: usize) -> usize {
        let f = &self.classes[i];
        let g = &self.classes[j];
        let h = compose(f, g).expect("same discriminant");
        self.class_map[self.cycle_of[&h]]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.class_of(&self.classes[i].inverse()).expect("same discriminant")
    }

    fn finish(mut self) -> Self {
        let h = self.order();
        if h <= TABLE_LIMIT {
            let table = (0..h * h).map(|k| self.compose_uncached(k / h, k % h)).collect();
            self.table = Some(table);
        }
        self.structure = invariant_factors(h, self.principal, |i, j| self.compose_classes(i, j));
        self
    }
}

pub fn narrow_class_group(d: i64) -> Result<FormClassGroup> {
    check_discriminant(d)?;
    let forms = reduced_forms(d)?;
    let mut cycle_of: HashMap<IndefiniteForm, usize> = HashMap::with_capacity(forms.len());
    let mut reps: Vec<IndefiniteForm> = Vec::new();
    for f in &forms {
        if cycle_of.contains_key(f) {
            continue;
        }
        let id = reps.len();
        let mut best = *f;
        let mut g = *f;
        loop {
            cycle_of.insert(g, id);
            if canonical_key(&g) < canonical_key(&best) {
                best = g;
            }
            g = g.rho();
            if g == *f {
                break;
            }
        }
        reps.push(best);
    }
    let principal = cycle_of[&reduce(&principal_form(d)?)];
    let h = reps.len();
    Ok(FormClassGroup {
        discriminant: d,
        narrow: true,
        classes: reps,
        structure: Vec::new(),
        principal,
        cycle_of,
        class_map: (0..h).collect(),
        table: None,
    }
    .finish())
}

/// The ordinary class group: the narrow group modulo the class of `(-1, b0, *)`.
/// `unit_norm` must agree with whether that class is trivial.
pub fn ordinary_class_group(d: i64, unit_norm: i8) -> Result<FormClassGroup> {
    let narrow = narrow_class_group(d)?;
    let sign = narrow.class_of(&sign_form(d)?)?;
    let sign_trivial = sign == narrow.principal;
    match (unit_norm, sign_trivial) {
        (-1, true) => {
            return Ok(FormClassGroup { narrow: false, ..narrow });
        }
        (1, false) => {}
        _ => return Err(Error::UnitNormMismatch { discriminant: d, given: unit_norm }),
    }
    let h = narrow.order();
    let mut class_map = vec![usize::MAX; h];
    let mut classes = Vec::with_capacity(h / 2);
    for i in 0..h {
        if class_map[i] != usize::MAX {
            continue;
        }
        let j = narrow.compose_classes(i, sign);
        let id = classes.len();
        class_map[i] = id;
        class_map[j] = id;
        let (fi, fj) = (narrow.classes[i], narrow.classes[j]);
        classes.push(if canonical_key(&fj) < canonical_key(&fi) { fj } else { fi });
    }
    let principal = class_map[narrow.principal];
    Ok(FormClassGroup {
        discriminant: d,
        narrow: false,
        classes,
        structure: Vec::new(),
        principal,
        cycle_of: narrow.cycle_of,
        class_map,
        table: None,
    }
    .finish())
}

pub fn two_sylow(g: &FormClassGroup) -> Abelian2Group {
    Abelian2Group::from_invariant_factors(g.structure())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_product(ns: &[usize]) -> (usize, impl Fn(usize, usize) -> usize + '_) {
        let order: usize = ns.iter().product();
        let op = move |x: usize, y: usize| {
            let (mut x, mut y) = (x, y);
            let mut out = 0;
            let mut scale = 1;
            for &n in ns {
                out += ((x % n + y % n) % n) * scale;
                scale *= n;
                x /= n;
                y /= n;
            }
            out
        };
        (order, op)
    }

    #[test]
    fn invariant_factors_of_products_of_cyclics() {
        let cases: &[(&[usize], &[u64])] = &[
            (&[], &[]),
            (&[6], &[6]),
            (&[2, 3], &[6]),
            (&[2, 12], &[2, 12]),
            (&[4, 2, 2], &[2, 2, 4]),
            (&[8, 4, 9, 3], &[12, 72]),
            (&[5, 5], &[5, 5]),
        ];
        for (ns, expected) in cases {
            let (order, op) = cyclic_product(ns);
            assert_eq!(&invariant_factors(order, 0, op), expected, "{ns:?}");
        }
    }

    #[test]
    fn small_discriminants() {
        let g = narrow_class_group(8).unwrap();
        assert_eq!(g.order(), 1);
        assert!(two_sylow(&g).is_trivial());

        let g = narrow_class_group(40).unwrap();
        assert_eq!(g.structure(), &[2]);
        let other = 1 - g.principal();
        assert_eq!(g.compose_classes(other, other), g.principal());

        let o = ordinary_class_group(40, -1).unwrap();
        assert_eq!(o.order(), g.order());

        let n = narrow_class_group(60).unwrap();
        let o = ordinary_class_group(60, 1).unwrap();
        assert_eq!(o.order() * 2, n.order());
        assert_eq!(ordinary_class_group(60, -1).unwrap_err(), Error::UnitNormMismatch { discriminant: 60, given: -1 });
    }

    #[test]
    fn discriminant_1365() {
        let n = narrow_class_group(1365).unwrap();
        assert_eq!(two_sylow(&n).rank(), 3);
        let o = ordinary_class_group(1365, 1).unwrap();
        assert_eq!(o.order(), 4);
        assert_eq!(two_sylow(&o).factors(), &[2, 2]);
    }

    #[test]
    fn group_axioms_on_small_discriminants() {
        for d in 5..600i64 {
            let Ok(g) = narrow_class_group(d) else { continue };
            let h = g.order();
            let e = g.principal();
            for i in 0..h {
                assert_eq!(g.compose_classes(e, i), i);
                assert_eq!(g.compose_classes(i, g.inverse_class(i)), e, "D = {d}");
                for j in 0..h {
                    assert_eq!(g.compose_classes(i, j), g.compose_classes(j, i));
                    for k in 0..h {
                        let l = g.compose_classes(g.compose_classes(i, j), k);
                        let r = g.compose_classes(i, g.compose_classes(j, k));
                        assert_eq!(l, r, "D = {d}");
                    }
                }
            }
            assert_eq!(g.structure().iter().product::<u64>(), h as u64);
        }
    }
}
