//! Property tests for the series engine: ring axioms on common windows,
//! inversion, Frobenius/pow agreement, and normalization transparency.

use proptest::prelude::*;
use qmodl::{QSeries, SeriesError};

fn series_mod(l: u32) -> impl Strategy<Value = QSeries> {
    (-5i64..5, proptest::collection::vec(0u32..1000, 1..40))
        .prop_map(move |(offset, coeffs)| QSeries::from_coeffs(l, offset, &coeffs).unwrap())
}

fn series_pair() -> impl Strategy<Value = (QSeries, QSeries)> {
    proptest::sample::select(&[2u32, 3, 5][..])
        .prop_flat_map(|l| (series_mod(l), series_mod(l)))
}

fn series_triple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    proptest::sample::select(&[2u32, 3, 5][..])
        .prop_flat_map(|l| (series_mod(l), series_mod(l), series_mod(l)))
}

/// Coefficientwise equality on the overlap of the two windows.
fn agree_on_common_window(a: &QSeries, b: &QSeries) -> bool {
    let lo = a.offset().max(b.offset());
    let hi = a.end().min(b.end());
    (lo..hi).all(|e| a.coeff(e) == b.coeff(e))
}

proptest! {
    #[test]
    fn mul_commutes((f, g) in series_pair()) {
        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        prop_assert_eq!(fg, gf);
    }

    #[test]
    fn mul_associates((f, g, h) in series_triple()) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert!(agree_on_common_window(&left, &right));
    }

    #[test]
    fn mul_distributes_over_add((f, g, h) in series_triple()) {
        // windows of g and h must overlap for g + h to exist
        prop_assume!(g.offset().min(h.offset()) < g.end().min(h.end()));
        let sum = g.add(&h).unwrap();
        let left = f.mul(&sum).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert!(agree_on_common_window(&left, &right));
    }

    #[test]
    fn inverse_multiplies_to_one((f, _) in series_pair()) {
        prop_assume!(f.coeff(f.offset()) != Some(0));
        let g = f.inv().unwrap();
        let prod = f.mul(&g).unwrap();
        prop_assert_eq!(prod.offset(), 0);
        prop_assert_eq!(prod.coeff(0), Some(1));
        prop_assert_eq!(prod.nnz(), 1);
    }

    #[test]
    fn frobenius_matches_pow((f, _) in series_pair(), m in 0u32..7) {
        let l = f.modulus();
        // keep l^m <= 125
        let m = match l {
            2 => m.min(6),
            3 => m.min(4),
            _ => m.min(3),
        };
        let frob = f.frobenius_pow(m).unwrap();
        let plain = f.pow((l as u64).pow(m)).unwrap();
        prop_assert!(agree_on_common_window(&frob, &plain));
    }

    #[test]
    fn product_offset_adds_for_nonzero_leads((f, g) in series_pair()) {
        let nf = f.normalize();
        let ng = g.normalize();
        prop_assume!(!nf.is_empty() && !ng.is_empty());
        let prod = f.mul(&g).unwrap();
        let lead = nf.offset() + ng.offset();
        // the leading product term must lie inside the truncated window
        prop_assume!(lead < prod.end());
        // F_l[[q]] has no zero divisors: the product's first nonzero
        // exponent is the sum of the factors' first nonzero exponents
        prop_assert_eq!(prod.normalize().offset(), lead);
    }

    #[test]
    fn normalize_is_value_transparent((f, _) in series_pair()) {
        let n = f.normalize();
        for e in f.offset()..f.end() {
            if e >= n.offset() && e < n.end() {
                prop_assert_eq!(f.coeff(e), n.coeff(e));
            }
        }
        // and idempotent
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn add_uses_min_offset_min_end_window((f, g) in series_pair()) {
        prop_assume!(f.offset().min(g.offset()) < f.end().min(g.end()));
        let l = f.modulus();
        let s = f.add(&g).unwrap();
        prop_assert_eq!(s.offset(), f.offset().min(g.offset()));
        prop_assert_eq!(s.end(), f.end().min(g.end()));
        for e in s.offset()..s.end() {
            let expected = (f.coeff_or_zero(e) + g.coeff_or_zero(e)) % l;
            prop_assert_eq!(s.coeff(e), Some(expected));
        }
    }

    #[test]
    fn csv_and_json_roundtrip((f, _) in series_pair()) {
        prop_assert_eq!(&QSeries::from_csv(&f.to_csv(), f.modulus()).unwrap(), &f);
        prop_assert_eq!(&QSeries::from_json(&f.to_json()).unwrap(), &f);
    }
}

#[test]
fn empty_series_rejected_by_arithmetic() {
    let empty = QSeries::zeros(3, 0, 0).unwrap();
    let f = QSeries::from_coeffs(3, 0, &[1, 2]).unwrap();
    assert_eq!(f.add(&empty).unwrap_err(), SeriesError::EmptySeries);
    assert_eq!(f.mul(&empty).unwrap_err(), SeriesError::EmptySeries);
    assert_eq!(empty.inv().unwrap_err(), SeriesError::EmptySeries);
    assert_eq!(empty.frobenius_pow(1).unwrap_err(), SeriesError::EmptySeries);
    assert_eq!(empty.pow(2).unwrap_err(), SeriesError::EmptySeries);
}
