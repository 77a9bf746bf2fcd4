use cremona_core::numbers::NumberKind;
use cremona_core::orbits::*;
use cremona_core::{BubbleSpace, IntMatrix, WeylElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn samples() -> Vec<BigRational> {
    vec![r(2, 1), r(3, 1), r(5, 2)]
}

/// `(p1 q1)(p2 q2)(p3 q3) ∘ σ0(p1,p2,p3)` with all three `q_i` declared of infinite length.
fn quadratic_model() -> OrbitModel {
    let mut space = BubbleSpace::new();
    let h = WeylElement::parse("s(p1 q1)(p2 q2)(p3 q3)*q(p1,p2,p3)", &mut space).unwrap();
    let ann = OrbitAnnotation {
        c_points: ["p1", "p2", "p3"].iter().map(|n| space.lookup(n).unwrap()).collect(),
        a_points: vec![],
        b0_points: ["q1", "q2", "q3"].iter().map(|n| space.lookup(n).unwrap()).collect(),
    };
    OrbitModel::from_weyl(&h, ann).unwrap()
}

#[test]
fn extracted_blocks() {
    let m = quadratic_model();
    assert_eq!(m.n_inf(), 3);
    assert_eq!(m.dim_a(), 1);
    assert_eq!(m.n, IntMatrix::from_i64(&[vec![2]]).unwrap());
    assert_eq!(m.m, IntMatrix::from_i64(&[vec![1, 1, 1]]).unwrap());
    assert_eq!(m.q, IntMatrix::from_i64(&[vec![-1], vec![-1], vec![-1]]).unwrap());
    assert_eq!(
        m.p,
        IntMatrix::from_i64(&[vec![0, -1, -1], vec![-1, 0, -1], vec![-1, -1, 0]]).unwrap()
    );
}

#[test]
fn fk_size_grows_by_n() {
    let m = quadratic_model();
    for k in 0..6 {
        assert_eq!(m.build_fk(k).rows(), 1 + 3 * (k + 1));
    }
}

#[test]
fn fk_preserves_form_and_noether() {
    let m = quadratic_model();
    for k in 0..8 {
        let f = m.build_fk(k);
        assert!(preserves_diagonal_form(&f, &m.minkowski_form(k)), "k = {k}");
        assert!(noether_on_e0(&m, k), "k = {k}");
    }
}

#[test]
fn p_identity_holds_exactly() {
    let m = quadratic_model();
    for k in 1..8 {
        let rep = verify_p_identity(&m, k, &samples(), 1e-9).unwrap();
        assert!(rep.samples.iter().all(|s| s.equal), "k = {k}: {:?}", rep.samples);
        assert!(rep.p_zero_power.is_some());
    }
}

#[test]
fn single_power_form_fails_for_several_orbits() {
    // with n = 3 the exponent of the prefactor is kn, not k
    let rep = verify_p_identity(&quadratic_model(), 4, &samples(), 1e-9).unwrap();
    assert!(rep.samples.iter().any(|s| !s.single_power_equal));
}

#[test]
fn p_at_zero_is_power_times_char_n() {
    let m = quadratic_model();
    // det(tI - N) = t - 2, and P(0,t) = t^3 (t - 2)
    let p0 = m.p_at_zero();
    let want: Vec<BigInt> = [0, 0, 0, -2, 1].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(p0, want);
}

#[test]
fn spectral_radii_tend_to_two() {
    let m = quadratic_model();
    let mut prev = 0.0;
    for k in [4usize, 8, 16, 24] {
        let rep = verify_p_identity(&m, k, &samples(), 1e-9).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert!(rep.lambda_k > prev && rep.lambda_k < 2.0);
        prev = rep.lambda_k;
    }
    assert!(2.0 - prev < 1e-6);
}

#[test]
fn model_rejects_bad_dims() {
    let z = |r, c| IntMatrix::zeros(r, c);
    assert!(matches!(
        OrbitModel::new(z(1, 2), z(1, 1), z(3, 3), z(3, 1)),
        Err(OrbitsError::DimensionMismatch(_))
    ));
}

#[test]
fn from_weyl_rejects_leaking_images() {
    let mut space = BubbleSpace::new();
    let h = WeylElement::parse("q(p1,p2,p3)", &mut space).unwrap();
    let p: Vec<_> = ["p1", "p2", "p3"].iter().map(|n| space.lookup(n).unwrap()).collect();
    let ann = OrbitAnnotation {
        c_points: vec![p[0]],
        a_points: vec![],
        b0_points: vec![p[1]],
    };
    assert!(matches!(OrbitModel::from_weyl(&h, ann), Err(OrbitsError::NotInvariant(_))));
}

#[test]
fn quadratic_matrix_2_2() {
    let s = QuadraticOrbitSpec::new(2, 2).unwrap();
    let h = quadratic_orbit_matrix(s);
    assert_eq!(h.rows(), 8);
    let cp = quadratic_charpoly(s);
    assert!(cp.matches);
}

#[test]
fn quadratic_2_3_coefficients() {
    let cp = quadratic_charpoly(QuadraticOrbitSpec::new(2, 3).unwrap());
    // x^8(x²-x+1) + x^4(x²-4x+1) + (x²-x+1)
    let want = [1, -1, 1, 0, 1, -4, 1, 0, 1, -1, 1];
    assert_eq!(cp.charpoly.coeffs_i64().unwrap(), want);
    assert_eq!(cp.closed_form.coeffs_i64().unwrap(), want);
}

#[test]
fn quadratic_rejects_small_parameters() {
    assert!(QuadraticOrbitSpec::new(1, 3).is_err());
    assert!(QuadraticOrbitSpec::new(3, 1).is_err());
}

#[test]
fn quadratic_matrix_preserves_form_and_canonical_class() {
    for m in 2..7 {
        for k in 2..7 {
            let s = QuadraticOrbitSpec::new(m, k).unwrap();
            let h = quadratic_orbit_matrix(s);
            assert!(preserves_diagonal_form(&h, &quadratic_form(s)), "m = {m}, k = {k}");
            assert!(preserves_functional(&h, &quadratic_canonical_functional(s)), "m = {m}, k = {k}");
        }
    }
}

#[test]
fn limit_of_leading_block() {
    // the dominant term x^{2k+2}(x² − (m−1)x + 1) governs the limit
    for m in 4..8u32 {
        let ks: Vec<u32> = (2..=40).collect();
        let seq = lambda_sequence(m, &ks, 1e-9).unwrap();
        let last = seq.entries.last().unwrap();
        assert!((last.lambda - seq.leading_block_root).abs() < 1e-6, "m = {m}: {}", last.lambda);
        assert_eq!(last.class, NumberKind::Salem);
    }
}

#[test]
fn stated_limits() {
    let s2 = lambda_sequence(2, &[2, 3], 1e-9).unwrap();
    assert!((s2.stated_limit - 2.618034).abs() < 1e-6);
    let s3 = lambda_sequence(3, &[2, 3], 1e-9).unwrap();
    assert!((s3.stated_limit - 3.732051).abs() < 1e-6);
}

proptest! {
    #[test]
    fn closed_form_and_reciprocity(m in 2u32..12, k in 2u32..14) {
        let s = QuadraticOrbitSpec::new(m, k).unwrap();
        let cp = quadratic_charpoly(s);
        prop_assert!(cp.matches);
        prop_assert!(cp.charpoly.is_reciprocal());
        prop_assert_eq!(cp.charpoly.degree(), 2 * k as usize + 4);
        prop_assert_eq!(cp.charpoly.coeffs()[0].clone(), BigInt::from(1));
    }
}
