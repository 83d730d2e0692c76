use proptest::prelude::*;

use dgex::comparison::{canonical_comparison, cone_acyclicity_report, is_strict_iso, DroppedCoordinate};
use dgex::dgcat::DgCat;
use dgex::exact::canonical_exact;
use dgex::exec::Sampler;
use dgex::families::algebra::{additive_hull, TAlgebra};
use dgex::families::Family;
use dgex::twisted::{TwObj, Twisted};
use dgex::Field;
use dgex::twisted::generators::build_generators;

fn point_pool<C: DgCat<Obj = usize>>(tw: &Twisted<C>) -> Vec<TwObj<usize>> {
    let x = tw.yoneda(0);
    vec![
        x.clone(),
        tw.shift_obj(&x, 1),
        tw.shift_obj(&x, -2),
        tw.cone_obj(&x, &x, &tw.identity(&x)).unwrap(),
    ]
}

#[test]
fn singleton_comparison_is_the_identity() {
    let g = build_generators(Field::Rational);
    let e = canonical_exact(g.point.cat.clone());
    let x = e.tw().yoneda(0);
    let sc = canonical_comparison(&e.sums, std::slice::from_ref(&x)).unwrap();
    let tw = Twisted::new(e.tw());
    assert_eq!(sc.source, sc.target);
    assert_eq!(sc.morphism, tw.identity(&sc.source));
    let report = cone_acyclicity_report(&e.sums, &sc, &point_pool(e.tw()), &Sampler::new(3, 10));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn empty_comparison_starts_at_zero() {
    let g = build_generators(Field::Rational);
    let e = canonical_exact(g.morphism.cat.clone());
    let sc = canonical_comparison(&e.sums, &[]).unwrap();
    assert!(sc.source.is_empty());
    assert_eq!(sc.cone, sc.target);
    assert!(is_strict_iso(&e.sums, &sc));
}

#[test]
fn doubled_point_comparison_is_an_isomorphism() {
    let g = build_generators(Field::Rational);
    let e = canonical_exact(g.point.cat.clone());
    let x = e.tw().yoneda(0);
    let sc = canonical_comparison(&e.sums, &[x.clone(), x]).unwrap();
    assert!(is_strict_iso(&e.sums, &sc));
    let report = cone_acyclicity_report(&e.sums, &sc, &point_pool(e.tw()), &Sampler::new(5, 12));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert_eq!(report.failures_of("cone-acyclic").count(), 0);
    assert_eq!(report.checks.iter().filter(|c| c.law == "cone-acyclic").count(), 12);
}

#[test]
fn length_three_family_over_the_morphism_category() {
    let g = build_generators(Field::Prime(5));
    let e = canonical_exact(g.morphism.cat.clone());
    let tw = e.tw();
    let (x, y) = (tw.yoneda(0), tw.yoneda(1));
    let c = tw.cone_obj(&x, &y, &tw.identity(&x).scale(&Field::Prime(5).zero())).unwrap();
    let family = vec![x.clone(), tw.shift_obj(&y, 1), c];
    let sc = canonical_comparison(&e.sums, &family).unwrap();
    assert!(is_strict_iso(&e.sums, &sc));
    let report = cone_acyclicity_report(&e.sums, &sc, &[x, y], &Sampler::new(9, 10));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn comparisons_in_the_additive_hull() {
    let g = build_generators(Field::Rational);
    let hull = additive_hull(g.morphism.cat.clone());
    let family = vec![Family(vec![0]), Family(vec![1, 0]), Family(vec![])];
    let sc = canonical_comparison(&hull, &family).unwrap();
    assert!(is_strict_iso(&hull, &sc));
    let report = cone_acyclicity_report(&hull, &sc, &family, &Sampler::new(1, 10));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn dropped_coordinate_leaves_homology() {
    let g = build_generators(Field::Rational);
    let e = canonical_exact(g.point.cat.clone());
    let bad = DroppedCoordinate { inner: e.sums.clone() };
    let x = e.tw().yoneda(0);
    let sc = canonical_comparison(&bad, &[x.clone(), x.clone()]).unwrap();
    assert!(!is_strict_iso(&bad, &sc));
    let report = cone_acyclicity_report(&bad, &sc, &point_pool(e.tw()), &Sampler::new(5, 12));
    let failure = report.failures_of("cone-acyclic").next().expect("a nonzero homology witness");
    assert!(failure.witness["dim"].as_u64().unwrap() > 0);
    assert!(failure.witness["cycle"].as_array().is_some_and(|v| !v.is_empty()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_comparisons_are_invertible(shifts in proptest::collection::vec(-2i32..=2, 0..=3)) {
        let g = build_generators(Field::Rational);
        let e = canonical_exact(g.point.cat.clone());
        let x = e.tw().yoneda(0);
        let family: Vec<_> = shifts.iter().map(|&s| e.tw().shift_obj(&x, s)).collect();
        let sc = canonical_comparison(&e.sums, &family).unwrap();
        prop_assert!(is_strict_iso(&e.sums, &sc));
        prop_assert_eq!(e.sums.sum_obj(&family).len(), family.len());
    }
}
