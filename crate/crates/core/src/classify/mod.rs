//! Classification of real quadratic fields `K = Q(√d)` by the shape of their
//! discriminant, the congruence and Legendre-symbol criteria for the 2-class
//! groups of `K`, `K' = Q(√2d)` and `K1 = Q(√2, √d)`, the search for prime
//! tuples with prescribed symbols, and the assembled prediction together with
//! its check against the form oracle.
//!
//! In a shape label, `p` stands for a prime `≡ 1 (mod 4)` and `q` for a prime
//! `≡ 3 (mod 4)`.

mod criteria;
mod predict;
mod search;
mod verify;

pub use criteria::{
    ppqq_condition, ppqq_holds, ppqq_symbol_specs, qqqq_condition, qqqq_holds, qqqq_symbol_specs, rank_stability_type,
    ConditionMatch, RankStabilityType, PPQQ_CONDITION_COUNT, PPQQ_RESIDUES, QQQQ_CONDITION_COUNT, QQQQ_RESIDUES,
};
pub use predict::{
    predict, ClaimSource, ConditionStatus, Direction, Finding, PredictionReport, RankClaim, StructureClaim, TowerClaim,
};
pub use search::{
    find_prime_tuple, find_prime_tuple_with, tuple_satisfies, SearchStrategy, SymbolConstraint, SymbolSpec,
    DEFAULT_SEARCH_BOUND,
};
pub use verify::{
    verify_against_oracle, verify_report, ClaimCheck, ClaimStatus, OracleComparison, ORACLE_DISCRIMINANT_LIMIT,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::FactoredSquarefree;
use crate::error::{Error, Result};

/// How a ramified prime enters the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeRole {
    Two,
    /// `p ≡ 1 (mod 4)`.
    P,
    /// `q ≡ 3 (mod 4)`.
    Q,
}

/// The rows of the two tables of real quadratic fields with three or four
/// ramified primes, named after the factorization of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TableRow {
    TwoP1P2,
    P1Q1,
    TwoP1Q1,
    TwoQ1Q2,
    P1P2P3,
    P1Q1Q2,
    TwoP1P2P3,
    P1P2Q1,
    TwoP1P2Q1,
    TwoP1Q1Q2,
    Q1Q2Q3,
    TwoQ1Q2Q3,
    P1P2P3P4,
    P1P2Q1Q2,
    Q1Q2Q3Q4,
}

/// Why a row is or is not part of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    /// The prime above 2 is not totally ramified in `K1/K`.
    TwoNotTotallyRamified,
    /// The genus field forces `rank A(K) = 1`.
    RankOne,
    /// The genus field forces `rank A(K) = 3`.
    RankThree,
    /// Handled by Mizusawa's earlier results.
    PreviouslyStudied,
    /// One of the three families classified here.
    Studied,
}

impl TableRow {
    pub const ALL: [TableRow; 15] = [
        TableRow::TwoP1P2,
        TableRow::P1Q1,
        TableRow::TwoP1Q1,
        TableRow::TwoQ1Q2,
        TableRow::P1P2P3,
        TableRow::P1Q1Q2,
        TableRow::TwoP1P2P3,
        TableRow::P1P2Q1,
        TableRow::TwoP1P2Q1,
        TableRow::TwoP1Q1Q2,
        TableRow::Q1Q2Q3,
        TableRow::TwoQ1Q2Q3,
        TableRow::P1P2P3P4,
        TableRow::P1P2Q1Q2,
        TableRow::Q1Q2Q3Q4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TableRow::TwoP1P2 => "2p1p2",
            TableRow::P1Q1 => "p1q1",
            TableRow::TwoP1Q1 => "2p1q1",
            TableRow::TwoQ1Q2 => "2q1q2",
            TableRow::P1P2P3 => "p1p2p3",
            TableRow::P1Q1Q2 => "p1q1q2",
            TableRow::TwoP1P2P3 => "2p1p2p3",
            TableRow::P1P2Q1 => "p1p2q1",
            TableRow::TwoP1P2Q1 => "2p1p2q1",
            TableRow::TwoP1Q1Q2 => "2p1q1q2",
            TableRow::Q1Q2Q3 => "q1q2q3",
            TableRow::TwoQ1Q2Q3 => "2q1q2q3",
            TableRow::P1P2P3P4 => "p1p2p3p4",
            TableRow::P1P2Q1Q2 => "p1p2q1q2",
            TableRow::Q1Q2Q3Q4 => "q1q2q3q4",
        }
    }

    /// 1 for three ramified primes, 2 for four.
    pub fn table(self) -> u8 {
        if self.ramified_prime_count() == 3 {
            1
        } else {
            2
        }
    }

    pub fn ramified_prime_count(self) -> u32 {
        self.pattern().len() as u32
    }

    /// Roles of the primes dividing the discriminant, the 2-part first.
    pub fn pattern(self) -> &'static [PrimeRole] {
        use PrimeRole::{Two, P, Q};
        match self {
            TableRow::TwoP1P2 => &[Two, P, P],
            TableRow::P1Q1 | TableRow::TwoP1Q1 => &[Two, P, Q],
            TableRow::TwoQ1Q2 => &[Two, Q, Q],
            TableRow::P1P2P3 => &[P, P, P],
            TableRow::P1Q1Q2 => &[P, Q, Q],
            TableRow::TwoP1P2P3 => &[Two, P, P, P],
            TableRow::P1P2Q1 | TableRow::TwoP1P2Q1 => &[Two, P, P, Q],
            TableRow::TwoP1Q1Q2 => &[Two, P, Q, Q],
            TableRow::Q1Q2Q3 | TableRow::TwoQ1Q2Q3 => &[Two, Q, Q, Q],
            TableRow::P1P2P3P4 => &[P, P, P, P],
            TableRow::P1P2Q1Q2 => &[P, P, Q, Q],
            TableRow::Q1Q2Q3Q4 => &[Q, Q, Q, Q],
        }
    }

    /// `d mod 4` for fields in this row.
    pub fn d_mod_4(self) -> u8 {
        match self {
            TableRow::P1Q1 | TableRow::P1P2Q1 | TableRow::Q1Q2Q3 => 3,
            TableRow::P1P2P3 | TableRow::P1Q1Q2 | TableRow::P1P2P3P4 | TableRow::P1P2Q1Q2 | TableRow::Q1Q2Q3Q4 => 1,
            _ => 2,
        }
    }

    pub fn disposition(self) -> Disposition {
        match self {
            TableRow::TwoP1P2 | TableRow::TwoQ1Q2 | TableRow::TwoP1P2P3 | TableRow::TwoP1Q1Q2 => {
                Disposition::TwoNotTotallyRamified
            }
            TableRow::TwoP1Q1 | TableRow::P1Q1 | TableRow::P1Q1Q2 => Disposition::RankOne,
            TableRow::P1P2P3P4 => Disposition::RankThree,
            TableRow::Q1Q2Q3 | TableRow::TwoQ1Q2Q3 | TableRow::P1P2Q1 | TableRow::TwoP1P2Q1 => {
                Disposition::PreviouslyStudied
            }
            TableRow::P1P2P3 | TableRow::P1P2Q1Q2 | TableRow::Q1Q2Q3Q4 => Disposition::Studied,
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl From<TableRow> for String {
    fn from(r: TableRow) -> Self {
        r.label().to_string()
    }
}

impl TryFrom<String> for TableRow {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for TableRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        TableRow::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown table row '{s}'")))
    }
}

/// The table row of a field together with the data it was read from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldShape {
    pub ramified_prime_count: u32,
    pub table: u8,
    pub row: TableRow,
    pub pattern: Vec<PrimeRole>,
    pub disposition: Disposition,
}

impl From<TableRow> for FieldShape {
    fn from(row: TableRow) -> Self {
        FieldShape {
            ramified_prime_count: row.ramified_prime_count(),
            table: row.table(),
            row,
            pattern: row.pattern().to_vec(),
            disposition: row.disposition(),
        }
    }
}

/// Number of primes dividing the discriminant of `Q(√d)`.
pub fn ramified_prime_count(d: &FactoredSquarefree) -> u32 {
    d.prime_count() as u32 + u32::from(d.value() % 4 == 3)
}

/// The table row of `Q(√d)`; `OutOfTable` unless 3 or 4 primes ramify.
pub fn shape_of(d: &FactoredSquarefree) -> Result<FieldShape> {
    let t = ramified_prime_count(d);
    let odd = d.primes().iter().filter(|&&p| p != 2);
    let np = odd.clone().filter(|&&p| p % 4 == 1).count();
    let nq = odd.filter(|&&p| p % 4 == 3).count();
    let row = match (d.value() % 4, np, nq) {
        (2, 2, 0) => TableRow::TwoP1P2,
        (3, 1, 1) => TableRow::P1Q1,
        (2, 1, 1) => TableRow::TwoP1Q1,
        (2, 0, 2) => TableRow::TwoQ1Q2,
        (1, 3, 0) => TableRow::P1P2P3,
        (1, 1, 2) => TableRow::P1Q1Q2,
        (2, 3, 0) => TableRow::TwoP1P2P3,
        (3, 2, 1) => TableRow::P1P2Q1,
        (2, 2, 1) => TableRow::TwoP1P2Q1,
        (2, 1, 2) => TableRow::TwoP1Q1Q2,
        (3, 0, 3) => TableRow::Q1Q2Q3,
        (2, 0, 3) => TableRow::TwoQ1Q2Q3,
        (1, 4, 0) => TableRow::P1P2P3P4,
        (1, 2, 2) => TableRow::P1P2Q1Q2,
        (1, 0, 4) => TableRow::Q1Q2Q3Q4,
        _ => return Err(Error::OutOfTable(t as usize)),
    };
    debug_assert_eq!(row.ramified_prime_count(), t);
    Ok(row.into())
}
