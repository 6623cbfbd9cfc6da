use serde::{Deserialize, Serialize};

use super::search::{SymbolConstraint, SymbolSpec};
use crate::arith::{kron, two_power_residue_test, FactoredSquarefree};
use crate::error::{Error, Result};

/// A product of Legendre symbols `(x_i / x_j)` over labelled primes that must equal `value`.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    symbols: &'static [(usize, usize)],
    value: i8,
}

const fn c(symbols: &'static [(usize, usize)], value: i8) -> Constraint {
    Constraint { symbols, value }
}

/// Equality of two symbols, as the product being 1.
const fn eq(x: (usize, usize), y: (usize, usize)) -> [(usize, usize); 2] {
    [x, y]
}

fn holds(conditions: &[Constraint], primes: &[u64]) -> bool {
    conditions.iter().all(|k| {
        let product: i8 = k.symbols.iter().map(|&(i, j)| kron(primes[i] as i64, primes[j] as i64)).product();
        product == k.value
    })
}

/// Residues mod 8 of the labels `(p1, p2, q1, q2)`.
pub const PPQQ_RESIDUES: [u64; 4] = [5, 5, 7, 3];
pub const PPQQ_CONDITION_COUNT: u8 = 3;

// Labels 0, 1, 2, 3 are p1, p2, q1, q2.
const PPQQ: [&[Constraint]; 3] = [
    &[c(&[(0, 1)], -1), c(&[(0, 2)], -1), c(&[(0, 3)], 1), c(&[(2, 1), (3, 1)], 1)],
    &[c(&[(0, 1)], -1), c(&[(2, 0), (3, 0)], 1), c(&[(1, 2)], -1), c(&[(1, 3)], 1)],
    &[c(&[(0, 1)], 1), c(&[(0, 2), (1, 2)], -1), c(&[(0, 3), (1, 3)], -1), c(&eq((0, 2), (1, 3)), 1)],
];

/// Residues mod 8 of the labels `(q1, q2, q3, q4)`.
pub const QQQQ_RESIDUES: [u64; 4] = [7, 3, 3, 3];
pub const QQQQ_CONDITION_COUNT: u8 = 9;

// Labels 0, 1, 2, 3 are q1, q2, q3, q4.
const QQQQ: [&[Constraint]; 9] = [
    &[c(&[(0, 2)], 1), c(&[(1, 2)], 1), c(&[(3, 1)], 1), c(&[(3, 0)], 1), c(&[(3, 2)], -1)],
    &[c(&[(0, 2)], -1), c(&[(1, 2)], -1), c(&[(3, 1)], -1), c(&[(3, 0)], -1), c(&[(3, 2)], 1)],
    &[c(&[(0, 2), (1, 2)], -1), c(&[(0, 3), (1, 3)], -1), c(&eq((1, 2), (0, 3)), 1), c(&eq((0, 3), (2, 3)), 1)],
    &[c(&[(0, 2), (1, 2)], 1), c(&[(0, 3), (1, 3)], -1), c(&eq((1, 2), (1, 3)), 1), c(&eq((0, 1), (3, 2)), 1)],
    &[c(&[(0, 2), (1, 2)], -1), c(&[(0, 3), (1, 3)], 1), c(&eq((1, 2), (0, 3)), 1), c(&eq((0, 1), (2, 3)), 1)],
    &[c(&[(0, 2)], 1), c(&[(1, 2)], 1), c(&[(0, 3)], 1), c(&[(1, 3)], -1), c(&[(0, 1)], -1)],
    &[c(&[(0, 2)], -1), c(&[(1, 2)], -1), c(&[(0, 3)], -1), c(&[(1, 3)], 1), c(&[(0, 1)], 1), c(&[(2, 3)], 1)],
    &[c(&[(0, 2)], 1), c(&[(1, 2)], -1), c(&[(0, 3)], 1), c(&[(1, 3)], 1), c(&[(0, 1)], -1)],
    &[c(&[(0, 2)], -1), c(&[(1, 2)], 1), c(&[(0, 3)], -1), c(&[(1, 3)], -1), c(&[(0, 1)], 1), c(&[(2, 3)], -1)],
];

/// A satisfied condition and the labelling of the primes it was satisfied under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionMatch {
    /// 1-based condition number.
    pub condition: u8,
    pub labeling: Vec<u64>,
}

/// The family of `d` among those whose ranks satisfy
/// `rank A(K) = rank A(K1) = 2`, `rank A(K') = 3` with 2 totally ramified in `K1/K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankStabilityType {
    /// 1: `p1 p2 p3`, 2: `p1 p2 q1 q2`, 3: `q1 q2 q3 q4`.
    pub case: u8,
    /// The primes in label order.
    pub labeling: Vec<u64>,
    /// Set in case 1 when `p1 ≡ 1 (mod 8)` fails the 2-power residue test,
    /// so the biquadratic rank formula gives `rank A(K1) = 3` rather than 2.
    pub residue_tension: bool,
}

fn by_residue(d: &FactoredSquarefree, r: u64) -> Vec<u64> {
    d.primes().iter().copied().filter(|p| p % 8 == r).collect()
}

fn residue_profile(d: &FactoredSquarefree) -> Vec<u64> {
    let mut r: Vec<u64> = d.primes().iter().map(|p| p % 8).collect();
    r.sort_unstable();
    r
}

/// Recognizes the three congruence types from the residues of the primes of `d` mod 8.
pub fn rank_stability_type(d: &FactoredSquarefree) -> Option<RankStabilityType> {
    if !d.is_odd() {
        return None;
    }
    let profile = residue_profile(d);
    let (case, labeling) = match profile.as_slice() {
        [1, 5, 5] | [5, 5, 5] => {
            let ones = by_residue(d, 1);
            let fives = by_residue(d, 5);
            (1, ones.into_iter().chain(fives).collect::<Vec<u64>>())
        }
        [3, 3, 5, 5] | [3, 5, 5, 7] => {
            let mut l = by_residue(d, 5);
            l.extend(by_residue(d, 7));
            l.extend(by_residue(d, 3));
            (2, l)
        }
        [3, 3, 3, 3] | [3, 3, 3, 7] => {
            let mut l = by_residue(d, 7);
            l.extend(by_residue(d, 3));
            (3, l)
        }
        _ => return None,
    };
    let residue_tension =
        case == 1 && labeling[0] % 8 == 1 && !two_power_residue_test(labeling[0]).expect("p1 is a prime = 1 (mod 8)");
    Some(RankStabilityType { case, labeling, residue_tension })
}

fn check_profile(d: &FactoredSquarefree, residues: [u64; 4]) -> Result<()> {
    let mut want = residues.to_vec();
    want.sort_unstable();
    if !d.is_odd() || residue_profile(d) != want {
        return Err(Error::WrongShape(d.value()));
    }
    Ok(())
}

fn check_labeling(labeling: [u64; 4], residues: [u64; 4]) -> Result<()> {
    for (&p, &r) in labeling.iter().zip(&residues) {
        if p % 8 != r {
            return Err(Error::WrongResidueClass { p, expected: r, modulus: 8 });
        }
    }
    Ok(())
}

fn condition_index(condition: u8, count: u8) -> Result<usize> {
    if condition == 0 || condition > count {
        return Err(Error::InvalidInput(format!("condition {condition} is not in 1..={count}")));
    }
    Ok(condition as usize - 1)
}

/// Whether condition `condition` holds for primes labelled `(p1, p2, q1, q2)`.
pub fn ppqq_holds(condition: u8, labeling: [u64; 4]) -> Result<bool> {
    let i = condition_index(condition, PPQQ_CONDITION_COUNT)?;
    check_labeling(labeling, PPQQ_RESIDUES)?;
    Ok(holds(PPQQ[i], &labeling))
}

/// For `d = p1 p2 q1 q2` with `p1 ≡ p2 ≡ 5`, `q1 ≡ 7`, `q2 ≡ 3 (mod 8)`: the first
/// condition under which `A(K) ≅ (Z/2)^2`, `A(K') ≅ (Z/2)^3` and
/// `A(K1) ≅ Z/2 ⊕ Z/4`. Both orders of the p-primes are tried for each condition.
/// The conditions characterize these structures exactly.
pub fn ppqq_condition(d: &FactoredSquarefree) -> Result<Option<ConditionMatch>> {
    check_profile(d, PPQQ_RESIDUES)?;
    let ps = by_residue(d, 5);
    let (q1, q2) = (by_residue(d, 7)[0], by_residue(d, 3)[0]);
    let labelings = [[ps[0], ps[1], q1, q2], [ps[1], ps[0], q1, q2]];
    for (i, cond) in PPQQ.iter().enumerate() {
        for l in &labelings {
            if holds(cond, l) {
                return Ok(Some(ConditionMatch { condition: i as u8 + 1, labeling: l.to_vec() }));
            }
        }
    }
    Ok(None)
}

/// Whether condition `condition` holds for primes labelled `(q1, q2, q3, q4)`.
pub fn qqqq_holds(condition: u8, labeling: [u64; 4]) -> Result<bool> {
    let i = condition_index(condition, QQQQ_CONDITION_COUNT)?;
    check_labeling(labeling, QQQQ_RESIDUES)?;
    Ok(holds(QQQQ[i], &labeling))
}

/// For `d = q1 q2 q3 q4` with `q1 ≡ 7` and the rest `≡ 3 (mod 8)`: the first
/// condition, under any of the six labellings of the primes `≡ 3`, that is
/// sufficient for `A(K) ≅ (Z/2)^2`, `A(K') ≅ (Z/2)^3` and `A(K1) ≅ Z/2 ⊕ Z/4`.
pub fn qqqq_condition(d: &FactoredSquarefree) -> Result<Option<ConditionMatch>> {
    check_profile(d, QQQQ_RESIDUES)?;
    let q1 = by_residue(d, 7)[0];
    let t = by_residue(d, 3);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for (i, cond) in QQQQ.iter().enumerate() {
        for p in &perms {
            let l = [q1, t[p[0]], t[p[1]], t[p[2]]];
            if holds(cond, &l) {
                return Ok(Some(ConditionMatch { condition: i as u8 + 1, labeling: l.to_vec() }));
            }
        }
    }
    Ok(None)
}

/// All symbol specifications `ε_kj = (x_k / x_j)`, `j < k`, whose tuples satisfy
/// the given condition. Symbols with `j > k` follow by quadratic reciprocity.
fn symbol_specs(residues: [u64; 4], conditions: &[Constraint]) -> Vec<SymbolSpec> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|k| (0..k).map(move |j| (k, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut table = [[0i8; 4]; 4];
        for (bit, &(k, j)) in pairs.iter().enumerate() {
            let e = if mask >> bit & 1 == 1 { -1 } else { 1 };
            table[k][j] = e;
            let flip = residues[k] % 4 == 3 && residues[j] % 4 == 3;
            table[j][k] = if flip { -e } else { e };
        }
        let ok = conditions.iter().all(|k| k.symbols.iter().map(|&(i, j)| table[i][j]).product::<i8>() == k.value);
        if ok {
            let symbols =
                pairs.iter().map(|&(k, j)| SymbolConstraint { k: k + 1, j: j + 1, value: table[k][j] }).collect();
            out.push(SymbolSpec::new(residues.to_vec(), symbols).expect("well-formed"));
        }
    }
    out
}

/// Symbol specifications for `(p1, p2, q1, q2)` realizing a ppqq condition.
pub fn ppqq_symbol_specs(condition: u8) -> Result<Vec<SymbolSpec>> {
    let i = condition_index(condition, PPQQ_CONDITION_COUNT)?;
    Ok(symbol_specs(PPQQ_RESIDUES, PPQQ[i]))
}

/// Symbol specifications for `(q1, q2, q3, q4)` realizing a qqqq condition.
pub fn qqqq_symbol_specs(condition: u8) -> Result<Vec<SymbolSpec>> {
    let i = condition_index(condition, QQQQ_CONDITION_COUNT)?;
    Ok(symbol_specs(QQQQ_RESIDUES, QQQQ[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_squarefree;

    fn sf(d: u64) -> FactoredSquarefree {
        factor_squarefree(d).unwrap()
    }

    #[test]
    fn rank_stability_examples() {
        let t = rank_stability_type(&sf(1885)).unwrap();
        assert_eq!((t.case, t.residue_tension), (1, false));
        assert_eq!(rank_stability_type(&sf(26961)).unwrap().case, 3);
        let t = rank_stability_type(&sf(1365)).unwrap();
        assert_eq!((t.case, t.labeling), (2, vec![5, 13, 7, 3]));
        assert_eq!(rank_stability_type(&sf(5 * 13 * 17 * 29)), None);
        assert_eq!(rank_stability_type(&sf(2 * 5 * 13 * 29)), None);
        assert_eq!(rank_stability_type(&sf(3 * 11 * 19 * 23)).unwrap().labeling, vec![23, 3, 11, 19]);
        // 2^64 = 1 = (-1)^32 (mod 257): no residue obstruction
        let t = rank_stability_type(&sf(257 * 5 * 13)).unwrap();
        assert_eq!((t.case, t.labeling[0], t.residue_tension), (1, 257, true));
        // 2^4 = -1 but (-1)^2 = 1 (mod 17)
        assert!(!rank_stability_type(&sf(17 * 5 * 13)).unwrap().residue_tension);
    }

    #[test]
    fn ppqq_examples() {
        let m = ppqq_condition(&sf(1365)).unwrap().unwrap();
        assert_eq!((m.condition, m.labeling.clone()), (1, vec![13, 5, 7, 3]));
        assert!(ppqq_holds(1, [13, 5, 7, 3]).unwrap());
        assert!(!ppqq_holds(1, [5, 13, 7, 3]).unwrap());
        assert_eq!(ppqq_condition(&sf(1885)), Err(Error::WrongShape(1885)));
        assert!(ppqq_holds(4, [13, 5, 7, 3]).is_err());
        assert!(ppqq_holds(1, [5, 13, 3, 7]).is_err());
    }

    #[test]
    fn ppqq_condition_three_verbatim() {
        // (p1/p2) = 1, (p1p2/q1) = -1, (p1p2/q2) = -1, (p1/q1) = (p2/q2)
        let mut found = 0;
        for p1 in [5u64, 13, 29, 37, 53, 61] {
            for p2 in [5u64, 13, 29, 37, 53, 61] {
                for q1 in [7u64, 23, 31, 47] {
                    for q2 in [3u64, 11, 19, 43] {
                        if p1 == p2 {
                            continue;
                        }
                        let l = |a: u64, b: u64| kron(a as i64, b as i64);
                        let want = l(p1, p2) == 1
                            && l(p1, q1) * l(p2, q1) == -1
                            && l(p1, q2) * l(p2, q2) == -1
                            && l(p1, q1) == l(p2, q2);
                        assert_eq!(ppqq_holds(3, [p1, p2, q1, q2]).unwrap(), want);
                        if want {
                            found += 1;
                            let m = ppqq_condition(&sf(p1 * p2 * q1 * q2)).unwrap().unwrap();
                            assert!(ppqq_holds(m.condition, m.labeling.clone().try_into().unwrap()).unwrap());
                        }
                    }
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn qqqq_shapes() {
        assert_eq!(qqqq_condition(&sf(1365)), Err(Error::WrongShape(1365)));
        assert_eq!(qqqq_condition(&sf(26961)), Err(Error::WrongShape(26961)));
        let d = 7 * 3 * 11 * 19;
        if let Some(m) = qqqq_condition(&sf(d)).unwrap() {
            assert!(qqqq_holds(m.condition, m.labeling.clone().try_into().unwrap()).unwrap());
        }
    }

    #[test]
    fn symbol_specs_are_consistent_with_reciprocity() {
        for c in 1..=PPQQ_CONDITION_COUNT {
            let specs = ppqq_symbol_specs(c).unwrap();
            assert!(!specs.is_empty());
            for s in &specs {
                assert_eq!(s.residues(), &PPQQ_RESIDUES);
                assert_eq!(s.symbols().len(), 6);
            }
        }
        for c in 1..=QQQQ_CONDITION_COUNT {
            assert!(!qqqq_symbol_specs(c).unwrap().is_empty(), "condition {c}");
        }
        assert!(ppqq_symbol_specs(0).is_err());
    }
}
