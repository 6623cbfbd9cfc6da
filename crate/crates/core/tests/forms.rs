use rayon::prelude::*;
use twoclass_core::arith::{factor, is_squarefree};
use twoclass_core::forms::{narrow_class_group, ordinary_class_group, reduced_forms, two_sylow};
use twoclass_core::quadfield::{unit_norm, QuadraticField};

fn is_valid_discriminant(d: i64) -> bool {
    let s = (d as f64).sqrt() as i64;
    d > 0 && d % 4 <= 1 && !(s - 1..=s + 1).any(|r| r >= 0 && r * r == d)
}

fn is_fundamental(d: i64) -> bool {
    let d = d as u64;
    match d % 4 {
        1 => is_squarefree(d),
        0 => matches!((d / 4) % 4, 2 | 3) && is_squarefree(d / 4),
        _ => false,
    }
}

#[test]
fn group_axioms_below_5000() {
    (5..5000i64).into_par_iter().filter(|&d| is_valid_discriminant(d)).for_each(|d| {
        let g = narrow_class_group(d).unwrap();
        let h = g.order();
        let e = g.principal();
        for i in 0..h {
            assert_eq!(g.compose_classes(e, i), i, "D = {d}");
            assert_eq!(g.compose_classes(i, g.inverse_class(i)), e, "D = {d}");
            for j in 0..h {
                let ij = g.compose_classes(i, j);
                assert_eq!(ij, g.compose_classes(j, i), "D = {d}");
                for k in 0..h {
                    assert_eq!(g.compose_classes(ij, k), g.compose_classes(i, g.compose_classes(j, k)), "D = {d}");
                }
            }
        }
    });
}

#[test]
fn cycle_count_matches_structure_below_50000() {
    (5..50_000i64).into_par_iter().filter(|&d| is_valid_discriminant(d)).for_each(|d| {
        let g = narrow_class_group(d).unwrap();
        let forms = reduced_forms(d).unwrap();
        assert_eq!(g.structure().iter().product::<u64>(), g.order() as u64, "D = {d}");
        assert!(g.order() <= forms.len());
        assert!(g.structure().windows(2).all(|w| w[1] % w[0] == 0), "D = {d}");
    });
}

#[test]
fn narrow_two_rank_is_genus_count_minus_one() {
    (5..50_000i64).into_par_iter().filter(|&d| is_fundamental(d)).for_each(|d| {
        let t = factor(d as u64).len() as u32;
        let g = narrow_class_group(d).unwrap();
        assert_eq!(two_sylow(&g).rank(), t - 1, "D = {d}");
    });
}

#[test]
fn ordinary_order_halves_exactly_for_positive_norm() {
    (2..20_000u64).into_par_iter().filter(|&d| is_squarefree(d)).for_each(|d| {
        let k = QuadraticField::new(d).unwrap();
        let disc = k.discriminant() as i64;
        let norm = unit_norm(&k);
        let narrow = narrow_class_group(disc).unwrap();
        let ordinary = ordinary_class_group(disc, norm).unwrap();
        if norm == 1 {
            assert_eq!(2 * ordinary.order(), narrow.order(), "d = {d}");
        } else {
            assert_eq!(ordinary.order(), narrow.order(), "d = {d}");
        }
        assert!(ordinary_class_group(disc, -norm).is_err());
    });
}
