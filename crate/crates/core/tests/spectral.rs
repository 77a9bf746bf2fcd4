use cremona_core::numbers::{lehmer_number, spectral_gap_assert};
use cremona_core::spectral::*;
use cremona_core::weyl::{coxeter_element, random_word};
use cremona_core::{BubbleSpace, ClassVector, WeylElement};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coxeter(n: usize) -> WeylElement {
    let mut s = BubbleSpace::new();
    WeylElement::realize(&coxeter_element(n, &mut s).unwrap())
}

#[test]
fn coxeter_elements_across_the_e_series() {
    // E8 is finite, E9 affine, E10 hyperbolic
    let c8 = classify(&coxeter(8));
    assert_eq!(c8.kind, IsometryKind::Elliptic);
    assert_eq!(c8.order, Some(30));
    assert_eq!(classify(&coxeter(9)).kind, IsometryKind::ParabolicQuadratic);
    let h = coxeter(10);
    assert_eq!(classify(&h).kind, IsometryKind::Loxodromic);
    assert!((dynamical_degree(&h, 1e-9) - lehmer_number()).abs() < 1e-10);
}

#[test]
fn parabolic_growth_is_quadratic() {
    let d = degree_sequence(&coxeter(9), 40);
    // second differences are eventually periodic, with period 10 from the roots of unity
    let n = d.len();
    let sec = |i: usize| &d[i + 2] - BigInt::from(2) * &d[i + 1] + &d[i];
    let p = 10;
    assert_eq!(sec(n - 3), sec(n - 3 - p));
    assert!(d[n - 1] > d[n / 2]);
}

#[test]
fn elliptic_quadratic_involution() {
    let mut s = BubbleSpace::new();
    let h = WeylElement::parse("q(p1,p2,p3)", &mut s).unwrap();
    let c = classify(&h);
    assert_eq!((c.kind, c.order), (IsometryKind::Elliptic, Some(2)));
    assert_eq!(dynamical_degree(&h, 1e-9), 1.0);
    assert!(matches!(axis_data(&h, 1e-9), Err(SpectralError::NotLoxodromic(_))));
}

#[test]
fn products_of_quadratic_maps() {
    let mut s = BubbleSpace::new();
    // sharing one point: order 2; disjoint: order 3
    let a = WeylElement::parse("q(p1,p2,p3)*q(p1,p4,p5)", &mut s).unwrap();
    assert_eq!(classify(&a).order, Some(2));
    let b = WeylElement::parse("q(p1,p2,p3)*q(p4,p5,p6)", &mut s).unwrap();
    assert_eq!(classify(&b).order, Some(3));
}

#[test]
fn lehmer_axis() {
    let h = coxeter(10);
    let data = axis_data(&h, 1e-9).unwrap();
    assert!((data.lambda - lehmer_number()).abs() < 1e-10);
    assert!(data.residual_plus < 1e-9 && data.residual_minus < 1e-9);
    assert!(data.cosh_axis_distance >= 1.0);
    for c in axis_estimates(&h, &data) {
        assert!(c.holds, "{c:?}");
    }
    let rep = axis_displacement_check(&h, &ClassVector::e0(), 1e-9).unwrap();
    assert!(rep.holds && rep.translation_bound, "{rep:?}");
    let on_axis = axis_displacement_check_real(&h, &data.e, 1e-9).unwrap();
    assert!(on_axis.dist_to_axis < 1e-5);
}

#[test]
fn displacement_check_rejects_off_hyperboloid() {
    let h = coxeter(10);
    let x = ClassVector::from_ints(2, &[]);
    assert!(matches!(axis_displacement_check(&h, &x, 1e-9), Err(SpectralError::NotOnHyperboloid)));
}

#[test]
fn loxodromy_criterion_on_known_cases() {
    assert!(loxodromy_criterion(&coxeter(10)));
    assert!(!loxodromy_criterion(&coxeter(9)));
    assert!(!loxodromy_criterion(&coxeter(8)));
    let (d200, d400) = degrees_200_400(&coxeter(8));
    assert_eq!(d200, d400);
}

#[test]
fn report_fields() {
    let r = spectrum_report(&coxeter(10), 1e-9);
    assert_eq!(r.kind, IsometryKind::Loxodromic);
    assert!(r.cosh_axis_distance.is_some());
    assert!(r.spectral_gap && r.loxodromy_criterion);
    assert!(!r.axis_estimates.is_empty());
    let e = spectrum_report(&coxeter(8), 1e-9);
    assert_eq!(e.order, Some(30));
    assert!(e.cosh_axis_distance.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gap_and_criterion_agree(seed in 0u64..1_000_000, len in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 11);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, len));
        let c = classify(&h);
        let l = dynamical_degree(&h, 1e-9);
        prop_assert!(spectral_gap_assert(l, 1e-9), "lambda = {}", l);
        prop_assert_eq!(c.kind == IsometryKind::Loxodromic, l > 1.0);
        prop_assert_eq!(loxodromy_criterion(&h), c.kind == IsometryKind::Loxodromic);
    }

    #[test]
    fn inverse_has_same_spectrum(seed in 0u64..1_000_000, len in 1usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = BubbleSpace::new();
        let pts = s.points("p", 10);
        let h = WeylElement::realize(&random_word(&mut rng, &pts, len));
        let a = dynamical_degree(&h, 1e-9);
        let b = dynamical_degree(&h.inverse(), 1e-9);
        prop_assert!((a - b).abs() <= 1e-9 * a);
    }
}
