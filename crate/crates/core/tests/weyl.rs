use cremona_core::lattice::rational;
use cremona_core::weyl::*;
use cremona_core::{BubbleSpace, ClassVector, IntMatrix, PointId};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn elem(text: &str, s: &mut BubbleSpace) -> WeylElement {
    WeylElement::parse(text, s).unwrap()
}

#[test]
fn quadratic_involution() {
    let mut s = BubbleSpace::new();
    let h = elem("q(p1,p2,p3)", &mut s);
    assert_eq!(h.degree(), BigInt::from(2));
    assert!(h.compose(&h).is_identity());
    let p1 = s.lookup("p1").unwrap();
    let want = ClassVector::parse("e0 - e(p2) - e(p3)", &mut s).unwrap();
    assert_eq!(h.apply(&ClassVector::e(p1)), want);
}

#[test]
fn leftmost_letter_applied_last() {
    let mut s = BubbleSpace::new();
    let h = elem("t(p1,p4)*q(p1,p2,p3)", &mut s);
    let want = ClassVector::parse("2*e0 - e(p4) - e(p2) - e(p3)", &mut s).unwrap();
    assert_eq!(h.image_of_e0(), want);
}

#[test]
fn cycle_notation_permutation() {
    let mut s = BubbleSpace::new();
    let h = elem("s(p1 p2 p3)", &mut s);
    let p: Vec<PointId> = ["p1", "p2", "p3"].iter().map(|n| s.lookup(n).unwrap()).collect();
    assert_eq!(h.apply(&ClassVector::e(p[0])), ClassVector::e(p[1]));
    assert!(h.pow(3).is_identity());
    assert_eq!(h.degree(), BigInt::from(1));
}

#[test]
fn parse_errors() {
    let mut s = BubbleSpace::new();
    assert!(WeylWord::parse("q(p1,p1,p2)", &mut s).is_err());
    assert!(WeylWord::parse("q(p1,p2)", &mut s).is_err());
    assert!(WeylWord::parse("x(p1)", &mut s).is_err());
    let e = WeylWord::parse("q(p1,p2,p3) *", &mut s).unwrap_err();
    assert!(e.pos >= 13, "{e}");
}

#[test]
fn word_round_trip() {
    let mut s = BubbleSpace::new();
    let w = WeylWord::parse("q(a,b,c) * t(a,d) * s(a b)(c d e)", &mut s).unwrap();
    let again = WeylWord::parse(&w.render(&s), &mut s).unwrap();
    assert_eq!(WeylElement::realize(&w), WeylElement::realize(&again));
    assert_eq!(
        WeylElement::realize(&w.inverse()),
        WeylElement::realize(&w).inverse()
    );
}

#[test]
fn from_matrix_rejects_non_isometries() {
    let mut s = BubbleSpace::new();
    let p = s.points("p", 2);
    let m = IntMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert_eq!(
        WeylElement::from_matrix(p.clone(), m),
        Err(WeylError::NotAnIsometry)
    );
    // e0 -> 2e0 - e(p1) - ... has wrong canonical image when only two points move
    let ok = WeylElement::realize(&WeylWord::parse("t(p1,p2)", &mut s).unwrap());
    assert!(WeylElement::from_matrix(ok.support().to_vec(), ok.matrix().clone()).is_ok());
}

#[test]
fn coxeter_relations() {
    let mut s = BubbleSpace::new();
    let n = 10;
    let gens: Vec<WeylElement> = coxeter_generators(n, &mut s)
        .unwrap()
        .iter()
        .map(WeylElement::realize)
        .collect();
    // s0 is joined to s3; s_i to s_{i+1}
    let adjacent = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        (a == 0 && b == 3) || (a >= 1 && b == a + 1)
    };
    for i in 0..gens.len() {
        assert!(gens[i].compose(&gens[i]).is_identity());
        for j in i + 1..gens.len() {
            let prod = gens[i].compose(&gens[j]);
            let order = if adjacent(i, j) { 3 } else { 2 };
            assert!(prod.pow(order).is_identity(), "({i},{j})");
            assert!(!prod.pow(order - 1).is_identity(), "({i},{j})");
        }
    }
}

#[test]
fn sigma_omega_shape() {
    let mut s = BubbleSpace::new();
    let p = s.points("p", 7);
    let h = sigma_omega(p[0], &p[1..]).unwrap();
    // m = 4
    let want = ClassVector::from_ints(4, &[(p[0], -3), (p[1], -1), (p[2], -1), (p[3], -1), (p[4], -1), (p[5], -1), (p[6], -1)]);
    assert_eq!(h.image_of_e0(), want);
    assert!(h.compose(&h).is_identity());
    assert_eq!(jonquieres_center(&h), Some(p[0]));
    assert_eq!(sigma_omega(p[0], &p[1..4]), Err(WeylError::OddOmega(3)));
    assert_eq!(sigma_omega(p[0], &p[0..2]), Err(WeylError::BasePointInOmega));
}

#[test]
fn jonquieres_center_absent_for_generic_quadratic_product() {
    let mut s = BubbleSpace::new();
    let h = elem("q(p1,p2,p3)*q(p4,p5,p6)", &mut s);
    assert_eq!(jonquieres_center(&h), None);
}

#[test]
fn halphen_certificate_on_nine_points() {
    let mut s = BubbleSpace::new();
    let h = elem("q(p1,p2,p3)*s(p1 p4 p7)(p2 p5 p8)(p3 p6 p9)", &mut s);
    let cert = halphen_test(&h, None, &mut s).unwrap().expect("nine-point support");
    assert_eq!(h.apply(&cert.class), cert.class);
    assert_eq!(cert.points.len(), 9);
    let pts: Vec<PointId> = (1..=9).map(|i| s.lookup(&format!("p{i}")).unwrap()).collect();
    assert!(halphen_test(&h, Some(&pts), &mut s).unwrap().is_some());
    assert_eq!(halphen_test(&h, Some(&pts[..8]), &mut s), Err(WeylError::TooFewPoints(9)));
}

#[test]
fn halphen_absent_for_lehmer_element() {
    let mut s = BubbleSpace::new();
    let h = WeylElement::realize(&coxeter_element(10, &mut s).unwrap());
    assert!(halphen_test(&h, None, &mut s).unwrap().is_none());
}

#[test]
fn quadratic_decomposition() {
    let mut s = BubbleSpace::new();
    let h = elem("s(p1 p4)(p2 p5)*q(p1,p2,p3)", &mut s);
    let (perm, sigma, right) = quadratic_decompose(&h).unwrap();
    let back = WeylElement::from_generator(&perm)
        .compose(&WeylElement::from_generator(&sigma))
        .compose(&WeylElement::from_generator(&right));
    assert_eq!(back, h);
    let cubic = elem("q(p1,p2,p3)*q(p1,p4,p5)", &mut s);
    assert!(quadratic_decompose(&cubic).is_err());
}

#[test]
fn normalize_into_increasing_form() {
    let mut s = BubbleSpace::new();
    let w = WeylWord::parse("q(p1,p2,p3)*q(p1,p2,p3)*q(p1,p4,p5)*t(p2,p6)*q(p2,p4,p6)", &mut s).unwrap();
    for text in ["e0", "e(p1)", "e0 - e(p2)"] {
        let v = ClassVector::parse(text, &mut s).unwrap();
        let n = normalize_increasing(&w, &v, &mut s).unwrap();
        assert_eq!(WeylElement::realize(&n).apply(&v), WeylElement::realize(&w).apply(&v), "{text}");
        let d = partial_degrees(&n, &v);
        let mut letters = n.letters.iter().rev();
        for pair in d.windows(2) {
            if matches!(letters.next(), Some(WeylGenerator::Sigma0(_))) {
                assert!(pair[1] > pair[0], "{text}: {d:?}");
            } else {
                assert_eq!(pair[1], pair[0]);
            }
        }
    }
}

#[test]
fn normalize_rejects_unsupported_start() {
    let mut s = BubbleSpace::new();
    let w = WeylWord::parse("q(p1,p2,p3)", &mut s).unwrap();
    let v = ClassVector::parse("2*e0", &mut s).unwrap();
    assert!(matches!(normalize_increasing(&w, &v, &mut s), Err(WeylError::UnsupportedShape(_))));
}

#[test]
fn noether_fails_on_hand_made_vector() {
    let mut s = BubbleSpace::new();
    let h = elem("q(p1,p2,p3)*q(p1,p4,p5)", &mut s);
    let rep = noether_report(&h);
    assert!(rep.passed(), "{:?}", rep.checks);
    assert_eq!(rep.degree, "3");
    let prof = multiplicity_profile(&h);
    assert_eq!(prof.sorted_a(), vec![BigInt::from(2), 1.into(), 1.into(), 1.into(), 1.into()]);
}

fn random_elements(seed: u64, count: usize, max_len: usize, npts: usize) -> Vec<WeylElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = BubbleSpace::new();
    let pts = s.points("p", npts);
    (0..count)
        .map(|i| WeylElement::realize(&random_word(&mut rng, &pts, 1 + i % max_len)))
        .collect()
}

#[test]
fn random_words_satisfy_noether_and_form() {
    for h in random_elements(11, 200, 10, 12) {
        h.check().unwrap();
        let r = noether_report(&h);
        if h.degree() > BigInt::from(1) {
            assert!(r.passed(), "{:?}", r.checks);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_inverse_is_identity(seed in 0u64..10_000, len in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 8);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, len));
        prop_assert!(h.compose(&h.inverse()).is_identity());
        prop_assert!(h.check().is_ok());
    }

    #[test]
    fn apply_preserves_intersection_and_canonical(seed in 0u64..10_000, len in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 9);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, len));
        let u = ClassVector::from_ints(3, &[(pts[0], -1), (pts[3], 2), (pts[8], -1)]);
        let v = ClassVector::from_ints(-1, &[(pts[1], 4), (pts[3], -1)]);
        let (hu, hv) = (h.apply(&u), h.apply(&v));
        prop_assert_eq!(hu.intersect(&hv), u.intersect(&v));
        prop_assert_eq!(hu.canonical_form(), u.canonical_form());
        prop_assert_eq!(h.apply(&ClassVector::anticanonical(&pts)), ClassVector::anticanonical(&pts));
    }

    #[test]
    fn conjugation_keeps_degree_of_square_trace(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 7);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, 6));
        let g = WeylElement::realize(&random_word(&mut rng, &pts, 4));
        let c = h.conjugate_by(&g);
        prop_assert_eq!(c.matrix().charpoly().len(), c.dim() + 1);
        let hc = cremona_core::spectral::classify(&h);
        let cc = cremona_core::spectral::classify(&c);
        prop_assert_eq!(hc.kind, cc.kind);
        prop_assert_eq!(hc.remainder, cc.remainder);
    }

    #[test]
    fn image_of_e0_has_rational_degree_at_least_one(seed in 0u64..10_000, len in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 6);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, len));
        prop_assert!(h.image_of_e0().e0_coeff() >= &rational(1));
    }
}
