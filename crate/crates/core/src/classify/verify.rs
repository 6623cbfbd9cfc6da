use serde::{Deserialize, Serialize};

use super::predict::{predict, PredictionReport};
use crate::arith::FactoredSquarefree;
use crate::biquad::{
    hasse_unit_index, kuroda_order, matching_unit_system, structure_a_k1, unit_square_classes, BiquadField,
    K1Structure, UnitSystem,
};
use crate::error::{Error, Result};
use crate::forms::{ordinary_class_group, two_sylow, Abelian2Group};
use crate::quadfield::QuadraticField;

/// Largest discriminant handed to the form oracle; the largest one used is `8d`.
pub const ORACLE_DISCRIMINANT_LIMIT: u64 = 4_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub predicted: String,
    pub observed: String,
    pub status: ClaimStatus,
}

impl ClaimCheck {
    fn new(claim: &str, predicted: impl ToString, observed: impl ToString, ok: bool) -> Self {
        ClaimCheck {
            claim: claim.to_string(),
            predicted: predicted.to_string(),
            observed: observed.to_string(),
            status: if ok { ClaimStatus::Match } else { ClaimStatus::Mismatch },
        }
    }
}

/// Oracle data for `K`, `K'`, `Q(√2)` and `K1`, and the per-claim comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub discriminant_k: u64,
    pub discriminant_kprime: u64,
    pub a_k: Abelian2Group,
    pub a_kprime: Abelian2Group,
    pub a_q_sqrt2: Abelian2Group,
    /// Norms of the fundamental units of `Q(√2)`, `K`, `K'`.
    pub unit_norms: [i8; 3],
    pub hasse_unit_index: u64,
    pub unit_system: Option<UnitSystem>,
    /// `#A(K1)` from Kuroda's formula; `None` if the formula was not integral.
    pub kuroda_order: Option<u64>,
    /// The structures of `A(K1)` compatible with the predicted rank and the Kuroda order.
    pub k1_structure: Option<K1Structure>,
    pub checks: Vec<ClaimCheck>,
}

impl OracleComparison {
    pub fn mismatches(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| c.status == ClaimStatus::Mismatch)
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

fn oracle_two_part(field: &QuadraticField) -> Result<Abelian2Group> {
    let d = field.discriminant();
    if d > ORACLE_DISCRIMINANT_LIMIT {
        return Err(Error::OracleRangeExceeded { discriminant: d, limit: ORACLE_DISCRIMINANT_LIMIT });
    }
    let g = ordinary_class_group(d as i64, field.unit().norm)?;
    Ok(two_sylow(&g))
}

/// Predicts and checks every claim for `Q(√d)` against the form oracle.
pub fn verify_against_oracle(d: &FactoredSquarefree) -> Result<OracleComparison> {
    verify_report(&predict(d)?)
}

/// Checks the claims of an existing report against the form oracle.
pub fn verify_report(report: &PredictionReport) -> Result<OracleComparison> {
    let field = BiquadField::from_factored(report.d.clone())?;
    let limit_check = 8 * report.d.value();
    if limit_check > ORACLE_DISCRIMINANT_LIMIT {
        return Err(Error::OracleRangeExceeded { discriminant: limit_check, limit: ORACLE_DISCRIMINANT_LIMIT });
    }
    let a_k = oracle_two_part(field.k())?;
    let a_kprime = oracle_two_part(field.k_prime())?;
    let a_q_sqrt2 = oracle_two_part(field.q_sqrt2())?;
    let classes = unit_square_classes(&field)?;
    let q = hasse_unit_index(&field)?;
    debug_assert_eq!(q, classes.len() as u64);
    let unit_norms = field.unit_norms();
    let unit_system = matching_unit_system(&classes, unit_norms);

    let mut checks = vec![
        ClaimCheck::new("rank_a_k", report.rank_a_k.value, a_k.rank(), report.rank_a_k.value == a_k.rank()),
        ClaimCheck::new(
            "rank_a_kprime",
            report.rank_a_kprime.value,
            a_kprime.rank(),
            report.rank_a_kprime.value == a_kprime.rank(),
        ),
    ];
    if let Some(s) = &report.structure_a_k {
        checks.push(ClaimCheck::new("structure_a_k", &s.group, &a_k, s.group == a_k));
    }
    if let Some(s) = &report.structure_a_kprime {
        checks.push(ClaimCheck::new("structure_a_kprime", &s.group, &a_kprime, s.group == a_kprime));
    }

    let kuroda = kuroda_order(q, a_k.order(), a_kprime.order(), a_q_sqrt2.order());
    let rank_k1 = report.rank_a_k1.value;
    let (kuroda_order, k1_structure) = match kuroda {
        Ok(order) => {
            let structure = structure_a_k1(rank_k1, order);
            checks.push(ClaimCheck::new(
                "rank_a_k1_fits_order",
                format!("rank {rank_k1}"),
                format!("order {order}"),
                structure.is_ok(),
            ));
            if let Some(s) = &report.structure_a_k1 {
                let observed = match &structure {
                    Ok(K1Structure::Determined { group }) => group.to_string(),
                    _ => format!("order {order}"),
                };
                let ok = matches!(&structure, Ok(K1Structure::Determined { group }) if *group == s.group);
                checks.push(ClaimCheck::new("structure_a_k1", &s.group, observed, ok));
            }
            (Some(order), structure.ok())
        }
        Err(e) => {
            checks.push(ClaimCheck::new("kuroda_integral", "integral", e, false));
            (None, None)
        }
    };

    if let Some(t) = &report.tower_claim {
        if t.lambda_vanishes {
            let ok = kuroda_order == Some(a_k.order());
            checks.push(ClaimCheck::new(
                "order_stable",
                a_k.order(),
                kuroda_order.map_or("unknown".to_string(), |o| o.to_string()),
                ok,
            ));
        }
    }

    Ok(OracleComparison {
        discriminant_k: field.k().discriminant(),
        discriminant_kprime: field.k_prime().discriminant(),
        a_k,
        a_kprime,
        a_q_sqrt2,
        unit_norms,
        hasse_unit_index: q,
        unit_system,
        kuroda_order,
        k1_structure,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_squarefree;

    fn sf(d: u64) -> FactoredSquarefree {
        factor_squarefree(d).unwrap()
    }

    #[test]
    fn d_1365_all_claims_match() {
        let v = verify_against_oracle(&sf(1365)).unwrap();
        assert!(v.all_match(), "{:?}", v.checks);
        assert_eq!(v.a_k.factors(), &[2, 2]);
        assert_eq!(v.a_kprime.factors(), &[2, 2, 2]);
        assert!(v.a_q_sqrt2.is_trivial());
        assert_eq!((v.hasse_unit_index, v.kuroda_order), (1, Some(8)));
        assert_eq!(v.k1_structure, Some(K1Structure::Determined { group: Abelian2Group::new(vec![2, 4]).unwrap() }));
        assert_eq!(v.checks.len(), 6);
    }

    #[test]
    fn d_1885_ranks_match() {
        let v = verify_against_oracle(&sf(1885)).unwrap();
        assert!(v.all_match(), "{:?}", v.checks);
        assert_eq!((v.a_k.rank(), v.a_kprime.rank()), (2, 3));
    }

    #[test]
    fn out_of_range() {
        let d = sf(500_000_003);
        assert!(matches!(verify_against_oracle(&d), Err(Error::OracleRangeExceeded { .. })));
    }
}
