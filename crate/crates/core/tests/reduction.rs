use cremona_core::reduction::*;
use cremona_core::spectral::{axis_data, classify, IsometryKind};
use cremona_core::weyl::{coxeter_element, sigma_omega};
use cremona_core::{BubbleSpace, ClassVector, WeylElement};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[test]
fn constants() {
    let d = decrease_quantum(1e6).unwrap();
    // 5 - 2√6 loses about two digits to cancellation in f64
    let naive = (5.0 - 2.0 * 6f64.sqrt()) / (2f64.sqrt() * (1e6 + 1.0));
    assert!(((d - naive) / naive).abs() < 1e-13);
    let small = decrease_quantum(3.0).unwrap();
    assert!(((small - 0.017_858_072_698_745_76) / small).abs() < 1e-15);
    assert_eq!(degree_threshold(2.0).unwrap(), 192.0);
    assert_eq!(conjugator_degree_bound(2, 2).unwrap(), BigInt::from(2).pow(115));
    assert_eq!(loxodromy_constant(), BigInt::from(1_162_261_467u64));
    assert_eq!(
        mcdeg_bound_exact(1e6).unwrap(),
        num_rational::BigRational::from_integer(BigInt::from(4700) * BigInt::from(10).pow(30))
    );
}

#[test]
fn cosh_bound_log_is_finite_where_cosh_overflows() {
    let r = bounds(Some(1e6), None).unwrap();
    assert!(r.cosh_bound.is_none());
    let lg = r.cosh_bound_log10.unwrap();
    let want = (18.0 + 345.0 * 1e6f64.ln()) / std::f64::consts::LN_10 - 2f64.log10();
    assert!((lg - want).abs() < 1e-9);
    let small = bounds(Some(2.0), None).unwrap();
    let c = small.cosh_bound.unwrap();
    assert!((c.log10() - small.cosh_bound_log10.unwrap()).abs() < 1e-9);
}

#[test]
fn invalid_bound_inputs() {
    assert!(matches!(bounds(Some(1.0), None), Err(ReductionError::InvalidLambda(_))));
    assert!(matches!(bounds(None, Some((1, 4))), Err(ReductionError::InvalidDegree)));
    assert!(bounds(None, None).is_err());
}

#[test]
fn averaged_noether_on_lehmer() {
    let mut s = BubbleSpace::new();
    let h = WeylElement::realize(&coxeter_element(10, &mut s).unwrap());
    let rep = noetherci_check(&h).unwrap();
    assert!(rep.passed(), "{:?}", rep.checks);
    let q = WeylElement::parse("q(p1,p2,p3)", &mut s).unwrap();
    assert!(matches!(noetherci_check(&q), Err(ReductionError::NotLoxodromic(_))));
}

#[test]
fn axis_point_is_positive_on_effective_classes() {
    let mut s = BubbleSpace::new();
    let h = WeylElement::realize(&coxeter_element(10, &mut s).unwrap());
    let data = axis_data(&h, 1e-9).unwrap();
    let pts: Vec<_> = (1..=10).map(|i| s.lookup(&format!("p{i}")).unwrap()).collect();
    let mut classes = vec![ClassVector::e0()];
    for &p in &pts {
        classes.push(ClassVector::e(p));
        classes.push(ClassVector::from_ints(1, &[(p, -1)]));
    }
    classes.push(ClassVector::anticanonical(&pts[..9]));
    for v in axis_positivity(&data, &classes) {
        assert!(v > 0.0, "{v}");
    }
}

#[test]
fn reduce_inflated_instances() {
    for seed in 0..3 {
        let mut s = BubbleSpace::new();
        let inst = inflated_instance(seed, 10, &mut s);
        assert_eq!(classify(&inst.element).kind, IsometryKind::Loxodromic);
        let threshold = degree_threshold(inst.lambda).unwrap();
        assert!(inst.element.degree().to_f64().unwrap() > threshold, "seed {seed}");
        let t = reduce(&inst.element, 10_000, &mut s).unwrap();
        assert_eq!(t.terminal, Terminal::ReachedDegreeThreshold, "seed {seed}");
        assert!(t.final_element.degree().to_f64().unwrap() <= threshold);
        assert!(t.steps.len() as f64 <= t.step_bound.ceil());
        let mut prev = inst.element.clone();
        for st in &t.steps {
            let g = WeylElement::realize(&st.conjugator);
            assert_eq!(g.compose(&prev).compose(&g.inverse()), st.element);
            assert!(st.cosh_before - st.cosh_after >= t.delta - 1e-9);
            prev = st.element.clone();
        }
        let c = WeylElement::realize(&t.conjugator);
        assert_eq!(c.compose(&inst.element).compose(&c.inverse()), t.final_element);
    }
}

#[test]
fn decreasing_step_on_inflated_element() {
    let mut s = BubbleSpace::new();
    let inst = inflated_instance(7, 6, &mut s);
    let st = decreasing_step(&inst.element, &mut s).unwrap().expect("a decreasing triple");
    assert!(st.cosh_after < st.cosh_before);
    assert!(st.achieved > 0.0);
}

#[test]
fn reduce_rejects_non_loxodromic() {
    let mut s = BubbleSpace::new();
    let h = sigma_omega(s.point("p1"), &s.points("q", 4)).unwrap();
    assert!(matches!(reduce(&h, 10, &mut s), Err(ReductionError::NotLoxodromic(_))));
}

const GENERAL5: &str = r#"{"points":[{"name":"p1","coords":[0,0,1]},{"name":"p2","coords":[1,0,1]},
{"name":"p3","coords":[0,1,1]},{"name":"p4","coords":[2,3,1]},{"name":"p5","coords":[5,7,1]}]}"#;

#[test]
fn realizability_general_and_degenerate() {
    let mut s = BubbleSpace::new();
    let cfg = PointConfiguration::from_json(GENERAL5, &mut s).unwrap();
    assert!(realizable_jonquieres(&cfg, 3, &s).unwrap().passed());
    assert!(matches!(realizable_jonquieres(&cfg, 4, &s), Err(ReductionError::BadConfig(_))));

    let mut s = BubbleSpace::new();
    let text = r#"{"points":[{"name":"a","coords":[0,0,1]},{"name":"b","parent":"a"},
        {"name":"c","parent":"b"}]}"#;
    let cfg = PointConfiguration::from_json(text, &mut s).unwrap();
    let r = realizable_jonquieres(&cfg, 2, &s).unwrap();
    assert_eq!(r.p1.as_deref(), Some("a"));
}

#[test]
fn realizability_undecidable_without_annotations() {
    let mut s = BubbleSpace::new();
    let text = r#"{"points":[{"name":"a"},{"name":"b"},{"name":"c"}]}"#;
    let cfg = PointConfiguration::from_json(text, &mut s).unwrap();
    let r = realizable_jonquieres(&cfg, 2, &s).unwrap();
    assert!(matches!(r.verdict, RealizabilityVerdict::Undecidable { .. }), "{r:?}");
}

#[test]
fn declared_line_must_match_coordinates() {
    let mut s = BubbleSpace::new();
    let text = r#"{"points":[{"name":"a","coords":[0,0,1]},{"name":"b","coords":[1,0,1]},
        {"name":"c","coords":[0,1,1]}],"lines":[["a","b","c"]]}"#;
    assert!(matches!(
        PointConfiguration::from_json(text, &mut s),
        Err(ReductionError::InconsistentFacts(_))
    ));
}
