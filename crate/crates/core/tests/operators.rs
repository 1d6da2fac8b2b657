use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use signed_poset::fibonacci::build_fib_poset;
use signed_poset::operators::{
    commutation_relations, g_poly, skew_relation, verify_g_poly, verify_operator_identity, IntPoly,
    Letter,
};
use signed_poset::young::build_young;
use signed_poset::{
    apply_down, apply_up, apply_word, inner, inner_v, normal_order, verify_axioms, word_vanishes,
    Axiom, DownMode, ElementId, GradedSignedPoset, OperatorWord, PosetError, RankVector, Variant,
};

fn w(s: &str) -> OperatorWord {
    s.parse().unwrap()
}

fn basis(p: &GradedSignedPoset, rank: usize, label: &str) -> RankVector {
    RankVector::basis(p.find(rank, label).unwrap())
}

fn posets() -> Vec<(Variant, GradedSignedPoset)> {
    vec![
        (Variant::Alpha, build_young(Variant::Alpha, 10)),
        (Variant::Beta, build_young(Variant::Beta, 10)),
        (Variant::Alpha, build_fib_poset(Variant::Alpha, 12)),
        (Variant::Beta, build_fib_poset(Variant::Beta, 12)),
    ]
}

#[test]
fn up_and_down_on_figure_shapes() {
    let yb = build_young(Variant::Beta, 3);
    let u = apply_up(&yb, &basis(&yb, 1, "1")).unwrap();
    assert_eq!(u.coeff(yb.find(2, "1,1").unwrap().index), BigInt::from(1));
    assert_eq!(u.coeff(yb.find(2, "2").unwrap().index), BigInt::from(-1));

    let ya = build_young(Variant::Alpha, 3);
    let d = apply_down(&ya, &basis(&ya, 2, "2"), DownMode::Strict).unwrap();
    assert_eq!(d, RankVector::from_coeffs(1, [(0, BigInt::from(1))]));
    assert_eq!(apply_up(&ya, &RankVector::basis(ElementId::BOTTOM)).unwrap().coeff(0), BigInt::from(1));
}

#[test]
fn down_at_the_bottom() {
    let y = build_young(Variant::Alpha, 2);
    let bottom = RankVector::basis(ElementId::BOTTOM);
    assert!(apply_down(&y, &bottom, DownMode::Annihilate).unwrap().is_zero());
    assert!(matches!(
        apply_down(&y, &bottom, DownMode::Strict),
        Err(PosetError::RankUnderflow)
    ));
}

#[test]
fn pairings() {
    let y = build_young(Variant::Alpha, 3);
    for r in 0..=3 {
        for x in y.elements(r) {
            let bx = RankVector::basis(x);
            assert_eq!(inner(&bx, &bx).unwrap(), BigInt::from(1));
            assert_eq!(inner_v(&y, &bx, &bx).unwrap(), y.vertex_sign(x).to_bigint());
        }
    }
    let two = y.find(2, "2").unwrap().index;
    let one_one = y.find(2, "1,1").unwrap().index;
    let f = RankVector::from_coeffs(2, [(two, BigInt::from(1)), (one_one, BigInt::from(1))]);
    let g = RankVector::from_coeffs(2, [(two, BigInt::from(1)), (one_one, BigInt::from(-1))]);
    assert_eq!(inner_v(&y, &f, &g).unwrap(), BigInt::from(-2));
    assert!(inner(&f, &RankVector::zero(3)).is_err());
}

#[test]
fn small_words_on_the_bottom() {
    let bottom = RankVector::basis(ElementId::BOTTOM);
    for (_, p) in posets() {
        assert_eq!(apply_word(&p, &w("DU"), &bottom).unwrap(), bottom);
        assert!(apply_word(&p, &w("UDUU"), &bottom).unwrap().is_zero());
    }
    let y = build_young(Variant::Alpha, 4);
    let e = y.signed_chain_sums();
    let image = apply_word(&y, &OperatorWord::ups(4), &bottom).unwrap();
    for x in y.elements(4) {
        assert_eq!(image.coeff(x.index), e[4][x.index]);
    }
    assert!(matches!(
        apply_word(&y, &OperatorWord::ups(5), &bottom),
        Err(PosetError::WordOutOfRange { .. })
    ));
    assert!(matches!(apply_word(&y, &w("D"), &bottom), Err(PosetError::NegativeRank(-1))));
}

#[test]
fn word_parsing_and_order() {
    let word = w("UDD");
    assert_eq!(word.letters(), &[Letter::U, Letter::D, Letter::D]);
    assert_eq!(word.rho(), -1);
    assert_eq!(word.to_string(), "UDD");
    assert!("UXD".parse::<OperatorWord>().is_err());
    assert_eq!(OperatorWord::all_of_length(4).count(), 16);
}

#[test]
fn axioms_hold_on_all_four_posets() {
    for (variant, p) in posets() {
        let top = p.max_rank() - 1;
        for axiom in [Axiom::Weak, Axiom::for_variant(variant), Axiom::Adjoint] {
            let report = verify_axioms(&p, axiom, top).unwrap();
            assert!(report.passed(), "{}: {:?}", axiom.name(), report.failures.first());
            assert_eq!(report.certified_rank, top);
        }
    }
}

#[test]
fn wrong_variant_fails_at_rank_one() {
    let y = build_young(Variant::Alpha, 10);
    let report = verify_axioms(&y, Axiom::Beta, 9).unwrap();
    assert!(!report.passed());
    // (D - U)P at rank 1: D contributes v(1)(s(1<2)v(2) + s(1<11)v(11)) = (+1) + (-1) = 0,
    // U contributes s(0<1) = 1, so the coefficient is -1.
    let first = &report.failures[0];
    assert_eq!(first.element, [1, 0]);
    assert_eq!(first.expected, "1");
    assert_eq!(first.got, "-1");
    assert!(verify_axioms(&y, Axiom::Weak, 10).is_err());
}

/// `(UD + DU)x` recomputed from the cover lists alone.
fn weak_defect(p: &GradedSignedPoset, x: ElementId) -> Vec<(usize, i64)> {
    let r = x.rank;
    let mut acc = vec![0i64; p.rank_size(r)];
    let v = |id: ElementId| i64::from(p.vertex_sign(id).to_i8());
    for &(yi, s) in p.upper_covers(x) {
        let y = ElementId::new(r + 1, yi);
        for &(zi, t) in p.lower_covers(y) {
            let z = ElementId::new(r, zi);
            acc[zi] += i64::from(s.to_i8()) * i64::from(t.to_i8()) * v(y) * v(z);
        }
    }
    if r > 0 {
        for &(yi, s) in p.lower_covers(x) {
            let y = ElementId::new(r - 1, yi);
            for &(zi, t) in p.upper_covers(y) {
                acc[zi] += i64::from(s.to_i8()) * v(x) * v(y) * i64::from(t.to_i8());
            }
        }
    }
    acc[x.index] -= 1;
    acc.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
}

#[test]
fn flipped_edge_breaks_the_weak_axiom() {
    let y = build_young(Variant::Alpha, 6);
    // (2,1) has two lower covers, so the flip shows up in cross terms
    let a = y.find(2, "2").unwrap();
    let b = y.find(3, "2,1").unwrap();
    let s = y.cover_sign(a, b).unwrap();
    let broken = y.with_cover_sign(a, b, -s).unwrap();

    let report = verify_axioms(&broken, Axiom::Weak, 5).unwrap();
    assert!(!report.passed());
    let failing: Vec<[usize; 2]> = report.failures.iter().map(|f| f.element).collect();
    let mut oracle = Vec::new();
    for r in 0..=5 {
        for x in broken.elements(r) {
            if !weak_defect(&broken, x).is_empty() {
                oracle.push([x.rank, x.index]);
            }
            assert!(weak_defect(&y, x).is_empty());
        }
    }
    let mut distinct = failing.clone();
    distinct.dedup();
    assert_eq!(distinct, oracle);
    assert!(oracle.iter().any(|e| e[0] == 3));
}

#[test]
fn normal_order_examples() {
    let t = normal_order(&w("U"));
    assert_eq!(t.coeffs.len(), 1);
    assert_eq!(t.coeff(1, 0), BigInt::from(1));
    let t = normal_order(&w("DU"));
    assert_eq!(t.coeff(0, 0), BigInt::from(1));
    assert_eq!(t.coeff(1, 1), BigInt::from(-1));
    assert_eq!(t.coeffs.len(), 2);
    assert!(!word_vanishes(&OperatorWord::ups(5)));
    assert!(word_vanishes(&w("UDUU")));
    assert_eq!(normal_order(&w("UDUU")).coeff(2, 0), BigInt::zero());
}

#[test]
fn commutation_lemmas_on_all_posets() {
    for (_, p) in posets() {
        for k in 1..=5 {
            for (name, lhs, rhs) in commutation_relations(k) {
                let report = verify_operator_identity(&p, &name, &lhs, &rhs).unwrap();
                assert!(report.passed(), "{name}: {:?}", report.failures.first());
            }
            let (name, lhs, rhs) = skew_relation(k);
            let report = verify_operator_identity(&p, &name, &lhs, &rhs).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.failures.first());
        }
    }
}

#[test]
fn g_polynomials() {
    for variant in [Variant::Alpha, Variant::Beta] {
        assert_eq!(g_poly(variant, 0), IntPoly::from_i64(&[1]));
    }
    assert_eq!(g_poly(Variant::Beta, 2), IntPoly::from_i64(&[2, 0, -1]));
    assert_eq!(g_poly(Variant::Beta, 2).to_string(), "2 - z^2");
    assert_eq!(g_poly(Variant::Beta, 3), IntPoly::from_i64(&[2, 2, -1, -1]));
    assert_eq!(g_poly(Variant::Alpha, 1), IntPoly::from_i64(&[1, -1]));
    assert_eq!(g_poly(Variant::Alpha, 6), IntPoly::monomial(-1, 6));

    let y = build_young(Variant::Beta, 12);
    for k in 0..=5 {
        let report = verify_g_poly(&y, Variant::Beta, k).unwrap();
        assert!(report.passed());
        assert_eq!(report.certified_rank, 12 - k);
    }
    // the other variant's polynomials do not describe Y_beta
    assert!(!verify_g_poly(&y, Variant::Alpha, 1).unwrap().passed());
}

#[test]
fn report_json_shape() {
    let y = build_young(Variant::Alpha, 3);
    let json = verify_axioms(&y, Axiom::Beta, 2).unwrap().to_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["axiom"], "beta");
    assert_eq!(value["certified_rank"], 2);
    assert_eq!(value["failures"][0]["element"], serde_json::json!([1, 0]));
    assert_eq!(value["failures"][0]["got"], "-1");
}

fn vector_on(p: &GradedSignedPoset, rank: usize, coeffs: &[i64]) -> RankVector {
    RankVector::from_coeffs(
        rank,
        coeffs
            .iter()
            .take(p.rank_size(rank))
            .enumerate()
            .map(|(i, &c)| (i, BigInt::from(c))),
    )
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = OperatorWord> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
        OperatorWord::new(bits.into_iter().map(|b| if b { Letter::U } else { Letter::D }).collect())
    })
}

proptest! {
    #[test]
    fn adjointness(rank in 0usize..6, f in prop::collection::vec(-5i64..5, 11), g in prop::collection::vec(-5i64..5, 11)) {
        for (_, p) in [
            (Variant::Alpha, build_young(Variant::Alpha, 7)),
            (Variant::Beta, build_fib_poset(Variant::Beta, 7)),
        ] {
            let f = vector_on(&p, rank, &f);
            let g = vector_on(&p, rank + 1, &g);
            let lhs = inner_v(&p, &apply_up(&p, &f).unwrap(), &g).unwrap();
            let rhs = inner_v(&p, &f, &apply_down(&p, &g, DownMode::Strict).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn linearity(rank in 0usize..6, f in prop::collection::vec(-9i64..9, 11), g in prop::collection::vec(-9i64..9, 11)) {
        let p = build_young(Variant::Beta, 7);
        let (f, g) = (vector_on(&p, rank, &f), vector_on(&p, rank, &g));
        let sum = &f + &g;
        prop_assert_eq!(apply_up(&p, &sum).unwrap(), &apply_up(&p, &f).unwrap() + &apply_up(&p, &g).unwrap());
        if rank > 0 {
            let d = |v: &RankVector| apply_down(&p, v, DownMode::Strict).unwrap();
            prop_assert_eq!(d(&sum), &d(&f) + &d(&g));
        }
    }

    #[test]
    fn normal_order_matches_direct_application(word in word_strategy(8), rank in 0usize..3, f in prop::collection::vec(-4i64..4, 3)) {
        let p = build_young(Variant::Alpha, 10);
        prop_assume!(word.rho() + rank as i64 >= 0);
        let f = vector_on(&p, rank, &f);
        let direct = apply_word(&p, &word, &f).unwrap();
        let via = normal_order(&word)
            .to_expr()
            .apply(&p, &f)
            .unwrap()
            .unwrap_or_else(|| RankVector::zero(direct.rank()));
        prop_assert_eq!(via, direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn vanishing_three_ways(word in word_strategy(10)) {
        prop_assume!((0..=10).contains(&word.rho()));
        let p = build_young(Variant::Alpha, 10);
        let image = apply_word(&p, &word, &RankVector::basis(ElementId::BOTTOM)).unwrap();
        let vanishes = word_vanishes(&word);
        prop_assert_eq!(vanishes, normal_order(&word).leading().is_zero());
        prop_assert_eq!(vanishes, image.is_zero());
    }
}
