use cremona_core::numbers::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c).unwrap()
}

const LEHMER: [i64; 11] = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];

#[test]
fn named_constants_values() {
    let k = named_constants();
    assert!((k.lehmer.value - 1.176280818259917).abs() < 1e-12);
    assert!((k.plastic.value - 1.324717957244746).abs() < 1e-12);
    assert!((k.golden.value - 1.618033988749895).abs() < 1e-12);
}

#[test]
fn classification_examples() {
    let cases: &[(&str, NumberKind)] = &[
        ("x^3 - x - 1", NumberKind::Pisot),
        ("x^2 - x - 1", NumberKind::Pisot),
        ("x^2 - 3x + 1", NumberKind::ReciprocalQuadratic),
        ("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1", NumberKind::Salem),
        ("x^4 - x^3 - x^2 - x + 1", NumberKind::Salem),
        ("x^3 - 1", NumberKind::CyclotomicProduct),
        ("x^2 - x - 3", NumberKind::OtherPerron),
        ("x^2 + 3x + 1", NumberKind::OtherPerron),
    ];
    for (text, want) in cases {
        let p = IntPolynomial::parse(text).unwrap();
        assert_eq!(classify_number(&p, 1e-9).kind, *want, "{text}");
    }
}

#[test]
fn classification_strips_cyclotomic_and_x() {
    // x^2 (x + 1)(x^2 + x + 1)(x^3 - x - 1)
    let p = poly(&[0, 0, 1])
        .mul(&poly(&[1, 1]))
        .mul(&poly(&[1, 1, 1]))
        .mul(&poly(&[-1, -1, 0, 1]));
    let c = classify_number(&p, 1e-9);
    assert_eq!(c.kind, NumberKind::Pisot);
    assert_eq!(c.x_power, 2);
    assert_eq!(c.stripped, poly(&[-1, -1, 0, 1]));
    let mut orders: Vec<u64> = c.cyclotomic_factors.iter().map(|(n, _)| *n).collect();
    orders.sort();
    assert_eq!(orders, vec![2, 3]);
}

#[test]
fn repeated_factor_is_flagged() {
    let p = poly(&LEHMER).pow(2);
    let c = classify_number(&p, 1e-9);
    assert_eq!(c.kind, NumberKind::Salem);
    assert!(c.repeated_factor);
}

#[test]
fn non_monic_rejected() {
    assert!(matches!(IntPolynomial::from_i64(&[1, 2]), Err(NumbersError::NotMonic(_))));
    assert!(IntPolynomial::parse("2x^2 + 1").is_err());
}

#[test]
fn parse_positions() {
    let e = IntPolynomial::parse("x^2 + + 1").unwrap_err();
    assert_eq!(e.pos, 6);
    assert_eq!(IntPolynomial::parse("x^2 - 3*x + 1").unwrap(), poly(&[1, -3, 1]));
}

#[test]
fn cyclotomic_degrees() {
    for n in 1..60u64 {
        assert_eq!(cyclotomic(n).degree() as u64, euler_phi(n), "n = {n}");
    }
    assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
}

#[test]
fn x_pow_minus_one_factors_into_cyclotomics() {
    let st = strip_cyclotomic_detailed(&IntPolynomial::x_pow_minus_one(30));
    assert!(st.remainder.is_one());
    assert_eq!(st.cyclotomic.len(), 8);
}

#[test]
fn sturm_counts() {
    // (x - 1)(x - 2)(x + 3)
    let p = poly(&[6, -7, 0, 1]);
    let s = Sturm::new(p.coeffs());
    assert_eq!(s.count_real(), 3);
    let r = |n: i64| BigRational::from_integer(BigInt::from(n));
    assert_eq!(s.count_in(&r(0), &r(5)), 2);
    assert_eq!(s.count_above(&r(-10)), 3);
}

#[test]
fn squarefree_decomposition_multiplicities() {
    // (x - 1)^3 (x + 2)
    let p = poly(&[-1, 1]).pow(3).mul(&poly(&[2, 1]));
    let d = squarefree_decomposition(&p);
    assert!(d.contains(&(poly(&[2, 1]), 1)));
    assert!(d.contains(&(poly(&[-1, 1]), 3)));
    assert_eq!(squarefree_part(&p), poly(&[-1, 1]).mul(&poly(&[2, 1])));
}

#[test]
fn trace_polynomial_of_lehmer() {
    let q = trace_polynomial(&poly(&LEHMER)).unwrap();
    assert_eq!(from_trace_polynomial(&q), poly(&LEHMER));
    assert!(is_salem_squarefree(&poly(&LEHMER)));
    assert!(trace_polynomial(&poly(&[-1, -1, 0, 1])).is_none());
}

#[test]
fn refine_root_brackets() {
    let p = poly(&[-1, -1, 0, 1]);
    let (lo, hi) = refine_real_root(&p, 1.3247, 1e-12).unwrap();
    assert!(lo < hi);
    let l: f64 = num_traits::ToPrimitive::to_f64(&lo).unwrap();
    assert!((l - 1.324717957244746).abs() < 1e-11);
}

#[test]
fn vieta_consistency() {
    let (s, p) = vieta_residuals(&poly(&LEHMER));
    assert!(s < 1e-10 && p < 1e-10, "{s} {p}");
}

#[test]
fn salem_degree_six() {
    let found = enumerate_salem(6, 1.5).unwrap();
    assert!(found.iter().any(|e| e.poly == poly(&[1, 0, -1, -1, -1, 0, 1])));
    assert!(found.windows(2).all(|w| w[0].root <= w[1].root));
    for e in &found {
        assert_eq!(classify_number(&e.poly, 1e-9).kind, NumberKind::Salem);
        assert!(e.root > 1.0 && e.root <= 1.5);
    }
}

#[test]
fn salem_degree_eight_smallest() {
    let found = enumerate_salem(8, 1.29).unwrap();
    assert_eq!(found[0].poly, poly(&[1, 0, 0, -1, -1, -1, 0, 0, 1]));
}

#[test]
fn salem_arguments_checked() {
    assert!(matches!(enumerate_salem(5, 1.3), Err(NumbersError::InvalidArgument(_))));
    assert!(matches!(enumerate_salem(6, 0.9), Err(NumbersError::InvalidArgument(_))));
    assert!(matches!(
        enumerate_salem_with_limit(10, 1.18, 10),
        Err(NumbersError::SearchTooLarge(10))
    ));
}

#[test]
fn spectral_gap_predicate() {
    assert!(spectral_gap_assert(1.0, 1e-9));
    assert!(spectral_gap_assert(lehmer_number(), 1e-9));
    assert!(!spectral_gap_assert(1.1, 1e-9));
}

proptest! {
    #[test]
    fn cyclotomic_factors_do_not_change_class(n in 1u64..25, e in 1usize..3) {
        let base = poly(&[-1, -1, 0, 1]);
        let p = base.mul(&cyclotomic(n).pow(e));
        let c = classify_number(&p, 1e-9);
        prop_assert_eq!(c.kind, NumberKind::Pisot);
        prop_assert_eq!(c.stripped, base);
    }

    #[test]
    fn trace_round_trip(q in proptest::collection::vec(-5i64..5, 1..6)) {
        let mut q: Vec<BigInt> = q.into_iter().map(BigInt::from).collect();
        q.push(BigInt::from(1));
        let p = from_trace_polynomial(&q);
        prop_assert!(p.is_reciprocal());
        prop_assert_eq!(trace_polynomial(&p).unwrap(), q);
    }

    #[test]
    fn largest_root_is_a_root(c in proptest::collection::vec(-6i64..6, 2..7)) {
        let mut c = c;
        c.push(1);
        let p = poly(&c);
        if let Some(r) = largest_real_root(&p) {
            let scale: f64 = c.iter().map(|x| (*x as f64).abs()).sum::<f64>() * r.abs().max(1.0).powi(c.len() as i32);
            prop_assert!(p.eval_f64(r).abs() <= 1e-8 * scale);
        }
    }
}
