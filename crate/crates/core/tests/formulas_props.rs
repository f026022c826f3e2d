use num_bigint::BigInt;
use proptest::prelude::*;

use detrep::formulas::{binomial, chi_bound, factorial, fgh, fgh_sum, verdict, wild_criterion, wild_polynomial, Classification};

proptest! {
    #[test]
    fn sum_and_closed_forms_agree(t in 2usize..40, c in 1usize..40) {
        prop_assert!(fgh(t, c).unwrap().agree());
    }

    /// The wild polynomial is 2(c+2)!(t−1)!/(c+t−1)! times the ν = 0 bound.
    #[test]
    fn wild_polynomial_is_a_positive_multiple(t in 2usize..25, c in 2usize..25, d in 2usize..60) {
        let lhs = wild_polynomial(t, c, d) * factorial((c + t - 1) as u64);
        let rhs = chi_bound(t, c, d, 0).unwrap() * factorial((c + 2) as u64) * factorial((t - 1) as u64) * 2;
        prop_assert_eq!(lhs, rhs);
    }

    /// χ(ν) from the sum form, straight from the definition of the bound.
    #[test]
    fn bound_from_sums(t in 2usize..12, c in 2usize..12, d in 2usize..30) {
        let s = fgh_sum(t, c).unwrap();
        let d = d as i64;
        prop_assert_eq!(chi_bound(t, c, d as usize, -2).unwrap(), s.h.clone());
        prop_assert_eq!(chi_bound(t, c, d as usize, -1).unwrap(), (d - 2) * &s.h + &s.g);
        prop_assert_eq!(chi_bound(t, c, d as usize, 0).unwrap(), binomial(d - 1, 2) * &s.h + (d - 2) * &s.g + &s.f);
    }

    #[test]
    fn verdict_is_total(t in 1usize..12, c in 1usize..12, d in 1usize..12) {
        let v = verdict(t, c, c + d).unwrap();
        prop_assert!(!v.justification.is_empty());
        if t >= 3 && d >= 2 {
            prop_assert!(matches!(v.classification, Classification::UlrichWild | Classification::Wild));
        }
    }
}

/// The ν = 0 bound is quadratic in d: its third differences vanish.
#[test]
fn bound_is_quadratic_in_d() {
    for (t, c) in [(3, 2), (3, 7), (5, 4), (9, 2)] {
        let v: Vec<BigInt> = (2..6).map(|d| chi_bound(t, c, d, 0).unwrap()).collect();
        let d1: Vec<BigInt> = v.windows(2).map(|w| &w[1] - &w[0]).collect();
        let d2: Vec<BigInt> = d1.windows(2).map(|w| &w[1] - &w[0]).collect();
        assert_eq!(&d2[1] - &d2[0], BigInt::from(0));
    }
}

#[test]
fn criterion_boundary_rows() {
    assert!(wild_criterion(3, 2, 16) && !wild_criterion(3, 2, 17));
    assert!(wild_criterion(17, 2, 2) && !wild_criterion(18, 2, 2));
    assert!(wild_criterion(3, 26, 5) && !wild_criterion(3, 27, 5));
}

#[test]
fn out_of_range_twist_is_refused() {
    assert!(chi_bound(3, 2, 4, 1).is_err());
    assert!(chi_bound(3, 2, 4, -3).is_err());
    assert!(chi_bound(3, 1, 4, 0).is_err());
}
