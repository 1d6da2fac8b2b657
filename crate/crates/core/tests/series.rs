use num_bigint::BigInt;
use proptest::prelude::*;

use signed_poset::fibonacci::build_fib_poset;
use signed_poset::series::{
    empirical_tau_ratio, kappa, kappa_series, product_formula, rank_series, tau, tau_series,
    verify_series_identity, ProductFormula, SeriesIdentity, TruncatedSeries,
};
use signed_poset::young::build_young;
use signed_poset::{PosetError, Variant};

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

/// Partition numbers by the usual coin-change recurrence.
fn partition_numbers(order: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); order + 1];
    p[0] = BigInt::from(1);
    for part in 1..=order {
        for n in part..=order {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    p
}

#[test]
fn rank_series_examples() {
    let ya = build_young(Variant::Alpha, 12);
    let f = rank_series(&ya, false, 12).unwrap();
    assert_eq!(f.coeffs(), partition_numbers(12).as_slice());
    assert_eq!(f, product_formula(ProductFormula::Partition, 12));

    let yb = build_young(Variant::Beta, 10);
    let g = rank_series(&yb, true, 10).unwrap();
    assert_eq!(&g.coeffs()[..5], ints(&[1, 1, 0, -1, 1]).as_slice());
    assert_eq!(g, product_formula(ProductFormula::GYoung { l: 0 }, 10));

    let fb = build_fib_poset(Variant::Beta, 14);
    let g = rank_series(&fb, true, 14).unwrap();
    assert_eq!(&g.coeffs()[..7], ints(&[1, 1, 0, -1, -1, 0, 1]).as_slice());
    assert_eq!(g, product_formula(ProductFormula::FibSigned, 14));

    assert!(matches!(rank_series(&yb, true, 11), Err(PosetError::Truncation { .. })));
}

#[test]
fn kappa_and_tau_basics() {
    let ya = build_young(Variant::Alpha, 8);
    for n in 0..=8 {
        assert_eq!(kappa(&ya, n, 0).unwrap(), BigInt::from(ya.rank_size(n)));
        let vsum: BigInt = ya.vertex_signs(n).iter().map(|s| s.to_bigint()).sum();
        assert_eq!(tau(&ya, n, 0).unwrap(), vsum);
    }
    assert_eq!(kappa(&ya, 0, 1).unwrap(), BigInt::from(1));
    assert!(kappa(&ya, 5, 4).is_err());

    let yb = build_young(Variant::Beta, 10);
    for n in 2..=10 {
        assert_eq!(tau(&yb, 0, n).unwrap(), BigInt::from(1u32 << (n / 2)));
    }
}

#[test]
fn kappa_series_on_young() {
    let ya = build_young(Variant::Alpha, 13);
    let report = verify_series_identity(&ya, SeriesIdentity::Kappa { k: 1 }, 12).unwrap();
    assert!(report.passed(), "{:?}", report.first_mismatch);
    let f2 = kappa_series(&ya, 2, 10).unwrap();
    assert_eq!(f2, TruncatedSeries::zero(10));
}

#[test]
fn tau_series_on_young() {
    let ya = build_young(Variant::Alpha, 11);
    let g = rank_series(&ya, true, 10).unwrap();
    let g1 = tau_series(&ya, 1, 10).unwrap();
    assert_eq!(&g1 * &TruncatedSeries::from_i64(&[1, 1], 10), g);

    let yb = build_young(Variant::Beta, 14);
    let report = verify_series_identity(&yb, SeriesIdentity::Tau { variant: Variant::Beta, k: 2 }, 12).unwrap();
    assert!(report.passed(), "{:?}", report.first_mismatch);

    let g = rank_series(&yb, true, 10).unwrap();
    let g4 = tau_series(&yb, 4, 10).unwrap();
    let square = TruncatedSeries::from_i64(&[1, 0, 1], 10).pow(2);
    assert_eq!(&g4 * &square, g.scale(&BigInt::from(4)));
}

#[test]
fn odd_beta_ratios_are_data_only() {
    let yb = build_young(Variant::Beta, 11);
    assert!(matches!(
        verify_series_identity(&yb, SeriesIdentity::Tau { variant: Variant::Beta, k: 1 }, 8),
        Err(PosetError::NoClosedForm(_))
    ));
    let ratio = empirical_tau_ratio(&yb, 1, 8).unwrap();
    let fb = build_fib_poset(Variant::Beta, 11);
    // the ratio depends only on k and the variant
    assert_eq!(ratio, empirical_tau_ratio(&fb, 1, 8).unwrap());
}

#[test]
fn identities_on_fibonacci_posets() {
    for variant in [Variant::Alpha, Variant::Beta] {
        let p = build_fib_poset(variant, 14);
        for k in 0..=4 {
            let r = verify_series_identity(&p, SeriesIdentity::Kappa { k }, 10).unwrap();
            assert!(r.passed(), "{}", r.name);
        }
    }
}

#[test]
fn mismatch_is_reported() {
    let ya = build_young(Variant::Alpha, 10);
    // Y_alpha does not satisfy the beta ratio
    let r = verify_series_identity(&ya, SeriesIdentity::Tau { variant: Variant::Beta, k: 2 }, 8).unwrap();
    assert!(!r.passed());
    assert!(r.first_mismatch.is_some());
}

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-20i64..20, order + 1).prop_map(move |c| TruncatedSeries::from_i64(&c, order))
}

fn unit_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (prop::bool::ANY, series_strategy(order)).prop_map(|(neg, s)| {
        let mut c = s.coeffs().to_vec();
        c[0] = BigInt::from(if neg { -1 } else { 1 });
        TruncatedSeries::from_coeffs(c, s.order())
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(f in series_strategy(9), g in series_strategy(9), h in series_strategy(9)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn multiplication_distributes(f in series_strategy(7), g in series_strategy(7), h in series_strategy(7)) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn units_have_inverses(f in unit_strategy(10)) {
        let inv = f.inverse().unwrap();
        prop_assert_eq!(&f * &inv, TruncatedSeries::one(10));
        prop_assert_eq!(inv.inverse().unwrap(), f);
    }
}
