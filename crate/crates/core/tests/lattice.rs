use cremona_core::lattice::{rational, LatticeError};
use cremona_core::{BubbleSpace, ClassVector};
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn intersection_form_on_basis() {
    let mut s = BubbleSpace::new();
    let p = s.point("p");
    let q = s.point("q");
    assert_eq!(ClassVector::e0().self_intersection(), rational(1));
    assert_eq!(ClassVector::e(p).self_intersection(), rational(-1));
    assert_eq!(ClassVector::e(p).intersect(&ClassVector::e(q)), rational(0));
    assert_eq!(ClassVector::e0().intersect(&ClassVector::e(p)), rational(0));
}

#[test]
fn canonical_form_values() {
    let mut s = BubbleSpace::new();
    let pts = s.points("p", 9);
    assert_eq!(ClassVector::e0().canonical_form(), rational(3));
    assert_eq!(ClassVector::e(pts[0]).canonical_form(), rational(1));
    let k = ClassVector::anticanonical(&pts);
    assert_eq!(k.canonical_form(), rational(0));
    assert_eq!(k.self_intersection(), rational(0));
}

#[test]
fn parse_and_render() {
    let mut s = BubbleSpace::new();
    let v = ClassVector::parse("3*e0 - e(p1) - 1/2*e(p2)", &mut s).unwrap();
    assert_eq!(v.e0_coeff(), &rational(3));
    let p2 = s.lookup("p2").unwrap();
    assert_eq!(v.coeff(p2), BigRational::new(1.into(), (-2).into()));
    assert!(!v.is_integral());
    let again = ClassVector::parse(&v.render(&s), &mut s).unwrap();
    assert_eq!(again, v);
}

#[test]
fn parse_errors_carry_positions() {
    let mut s = BubbleSpace::new();
    let e = ClassVector::parse("2*e0 -", &mut s).unwrap_err();
    assert_eq!(e.pos, 6);
    assert!(ClassVector::parse("e0 e(p)", &mut s).is_err());
    assert!(ClassVector::parse("e(", &mut s).is_err());
}

#[test]
fn cosh_distance_requires_hyperboloid() {
    let mut s = BubbleSpace::new();
    let p = s.point("p");
    let v = ClassVector::from_ints(2, &[(p, 1)]);
    assert!(matches!(
        v.cosh_distance(&ClassVector::e0()),
        Err(LatticeError::NotOnHyperboloid(_))
    ));
    let neg = ClassVector::from_ints(-1, &[]);
    assert!(matches!(neg.cosh_distance(&ClassVector::e0()), Err(LatticeError::WrongSheet(_))));
    assert_eq!(ClassVector::e0().cosh_distance(&ClassVector::e0()).unwrap(), rational(1));
}

#[test]
fn annotations() {
    let mut s = BubbleSpace::new();
    let p = s.point("p");
    let q = s.point("q");
    let r = s.point("r");
    s.annotate_proper(p, [rational(1), rational(0), rational(1)]).unwrap();
    s.annotate_infinitely_near(q, p).unwrap();
    s.annotate_infinitely_near(r, q).unwrap();
    assert_eq!(s.root_of(r), Some(p));
    assert_eq!(s.parent(r), Some(q));
    assert_eq!(s.is_proper(q), Some(false));
    assert!(matches!(
        s.annotate_proper(p, [rational(0), rational(1), rational(1)]),
        Err(LatticeError::AlreadyAnnotated(_))
    ));
    let t = s.point("t");
    assert!(matches!(
        s.annotate_proper(t, [rational(0), rational(0), rational(0)]),
        Err(LatticeError::ZeroCoordinates)
    ));
    assert!(matches!(s.annotate_infinitely_near(t, t), Err(LatticeError::SelfParent)));
}

#[test]
fn cyclic_parents_rejected() {
    let mut s = BubbleSpace::new();
    let a = s.point("a");
    let b = s.point("b");
    s.annotate_infinitely_near(b, a).unwrap();
    assert!(matches!(s.annotate_infinitely_near(a, b), Err(LatticeError::CyclicParents(_))));
}

#[test]
fn fresh_points_are_distinct() {
    let mut s = BubbleSpace::new();
    let a = s.fresh();
    let b = s.fresh();
    assert_ne!(a, b);
    assert_eq!(s.point("x"), s.point("x"));
}

fn class(e0: i64, cs: Vec<i64>, s: &mut BubbleSpace) -> ClassVector {
    let pts = s.points("p", cs.len());
    ClassVector::from_ints(e0, &pts.into_iter().zip(cs).collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn form_is_symmetric_and_bilinear(
        a in -20i64..20, b in -20i64..20,
        xs in proptest::collection::vec(-9i64..9, 6),
        ys in proptest::collection::vec(-9i64..9, 6),
    ) {
        let mut s = BubbleSpace::new();
        let u = class(a, xs, &mut s);
        let v = class(b, ys, &mut s);
        prop_assert_eq!(u.intersect(&v), v.intersect(&u));
        let two = rational(2);
        prop_assert_eq!(u.scale(&two).intersect(&v), &two * u.intersect(&v));
    }

    #[test]
    fn real_and_exact_forms_agree(a in -20i64..20, xs in proptest::collection::vec(-9i64..9, 5)) {
        let mut s = BubbleSpace::new();
        let u = class(a, xs, &mut s);
        let exact: f64 = num_traits::ToPrimitive::to_f64(&u.self_intersection()).unwrap();
        let r = u.to_real();
        prop_assert!((r.intersect(&r) - exact).abs() < 1e-9);
    }
}
