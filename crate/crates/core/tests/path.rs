use std::collections::BTreeMap;
use std::sync::Arc;

use dgex::dgcat::functor::validate_functor;
use dgex::dgcat::validate::validate_dgcat;
use dgex::dgcat::{DgCat, Elem, FiniteDgCategory};
use dgex::exec::Sampler;
use dgex::families::algebra::{additive_hull, check_algebra, check_algebra_morphism, product_algebra};
use dgex::families::Family;
use dgex::lattice::Lattice;
use dgex::path::{
    build_path, check_cone_matrix, check_cycle_law, cone_in_path, factorization_report, path_algebra_structure,
    path_objects, phi_corner, PathCategory, PathEnds, PathMorphism, PathObj, PathUnit,
};
use dgex::twisted::generators::build_generators;
use dgex::twisted::{TwObj, Twisted};
use dgex::Field;

type Tw = Twisted<Arc<FiniteDgCategory>>;

#[test]
fn point_path_category() {
    let g = build_generators(Field::Rational);
    let fact = build_path(g.point.cat.clone(), &Lattice::default());
    assert_eq!(fact.objects.len(), 1);
    let end = fact.path.hom_complex(0, 0);
    assert_eq!(end.dims(), &BTreeMap::from([(0, 2), (1, 1)]));
    assert_eq!(end.d(0).rank(), 1);
    assert_eq!(end.betti(), BTreeMap::from([(0, 1)]));
    assert!(factorization_report(&fact, &Lattice::default()).passed());
}

#[test]
fn morphism_path_category_has_only_identities() {
    for field in [Field::Rational, Field::Prime(3)] {
        let g = build_generators(field);
        let fact = build_path(g.morphism.cat.clone(), &Lattice::default());
        let ends: Vec<(usize, usize)> = fact.objects.iter().map(|p| (p.source, p.target)).collect();
        if field == Field::Rational {
            assert_eq!(ends, vec![(0, 0), (1, 1)]);
        } else {
            assert!(ends.iter().all(|(x, y)| x == y));
        }
        let report = factorization_report(&fact, &Lattice::default());
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn cone_path_factorization() {
    let g = build_generators(Field::Rational);
    let lattice = Lattice::default();
    let fact = build_path(g.cone.cat.clone(), &lattice);
    assert!(fact.objects.len() >= 3);
    let generic = PathCategory::new(g.cone.cat.clone());
    let report = validate_dgcat(&generic, &fact.objects);
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let report = factorization_report(&fact, &lattice);
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.checks.iter().any(|c| c.law == "q/hom-surjective"));
    assert!(validate_functor(&fact.q, &(0..fact.objects.len()).collect::<Vec<_>>()).passed());
}

#[test]
fn cycle_law() {
    let g = build_generators(Field::Rational);
    let objs = path_objects(&g.cone.cat, &[0, 1, 2], &Lattice::default());
    let path = PathCategory::new(g.cone.cat.clone());
    let report = check_cycle_law(&path, &objs, &Sampler::new(42, 200));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn identity_composition() {
    let g = build_generators(Field::Prime(5));
    let objs = path_objects(&g.cone.cat, &[0, 1, 2], &Lattice::default());
    let path = PathCategory::new(g.cone.cat.clone());
    for p in &objs {
        for q in &objs {
            for e in dgex::dgcat::basis_elements(&path, p, q) {
                assert_eq!(path.compose(p, p, q, &e, &path.identity(p)), e);
                assert_eq!(path.compose(p, q, q, &path.identity(q), &e), e);
            }
        }
    }
}

fn fam(xs: &[usize]) -> Family<usize> {
    Family(xs.to_vec())
}

#[test]
fn path_algebra() {
    let g = build_generators(Field::Rational);
    let alg = path_algebra_structure(additive_hull(g.point.cat.clone()));
    let hull = &alg.alg.carrier;
    let x = PathObj {
        source: fam(&[0]),
        target: fam(&[0]),
        map: hull.identity(&fam(&[0])),
    };
    let sum = dgex::families::algebra::TAlgebra::sum_obj(&alg, &[x.clone(), x.clone()]);
    assert_eq!(sum, alg.carrier.identity_object(&fam(&[0, 0])));

    let two = Field::Rational.from_i64(2);
    let scaled = PathObj {
        map: x.map.scale(&two),
        ..x.clone()
    };
    let pool = vec![x.clone(), scaled, alg.carrier.identity_object(&fam(&[])), sum];
    let r = check_algebra(&alg, &pool, &Sampler::new(42, 100));
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());

    let unit = PathUnit::new(hull.clone());
    let base_pool = vec![fam(&[0]), fam(&[]), fam(&[0, 0])];
    let r = check_algebra_morphism(&unit, &additive_hull(g.point.cat.clone()), &alg, &base_pool, &Sampler::new(1, 50));
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let ends = PathEnds::new(hull.clone());
    let pair = product_algebra(additive_hull(g.point.cat.clone()), additive_hull(g.point.cat.clone()));
    let r = check_algebra_morphism(&ends, &alg, &pair, &pool, &Sampler::new(2, 50));
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

fn tw_pool(tw: &Tw) -> Vec<PathObj<TwObj<usize>>> {
    let path = PathCategory::new(tw.clone());
    let (x, y) = (tw.yoneda(0), tw.yoneda(1));
    let one = tw.field().one();
    let f = Elem::new(0, vec![one]);
    let cone = tw.cone_obj(&x, &y, &f).unwrap();
    let contractible = tw.cone_obj(&x, &x, &tw.identity(&x)).unwrap();
    let with_junk = tw.direct_sum(&[contractible.clone(), y.clone()]);
    let project = tw.sum_projection(&[contractible, y.clone()], 1);
    let xy = tw.direct_sum(&[x.clone(), y.clone()]);
    let yx = tw.direct_sum(&[y.clone(), x.clone()]);
    let swap = tw.sum_cotuple(
        &[x.clone(), y.clone()],
        &yx,
        0,
        &[tw.sum_injection(&[y.clone(), x.clone()], 1), tw.sum_injection(&[y.clone(), x.clone()], 0)],
    );
    let two = tw.field().from_i64(2);
    vec![
        path.identity_object(&x),
        path.identity_object(&y),
        path.identity_object(&tw.shift_obj(&x, 1)),
        path.identity_object(&cone),
        path.object(x.clone(), x.clone(), tw.identity(&x).scale(&two)).unwrap(),
        path.object(with_junk, y.clone(), project).unwrap(),
        path.object(xy, yx, swap).unwrap(),
    ]
}

#[test]
fn path_category_over_twisted_complexes() {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let pool = tw_pool(&tw);
    let path = PathCategory::new(tw.clone());
    let report = validate_dgcat(&path, &pool[..5]);
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(path.object(tw.yoneda(0), tw.yoneda(1), Elem::new(0, vec![tw.field().one()])).is_err());
}

#[test]
fn cone_matrix() {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let pool = tw_pool(&tw);
    let path = PathCategory::new(tw.clone());
    let report = check_cone_matrix(&path, &pool, 3, &Sampler::new(7, 12));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn cone_of_identity_and_zero() {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let pool = tw_pool(&tw);
    let path = PathCategory::new(tw.clone());
    let p = &pool[5];
    let id = path.identity(p);
    let k = cone_in_path(&path, p, p, &id).unwrap();
    for z in &pool {
        assert!(path.hom(&k.object, z).is_acyclic());
    }
    let q = &pool[3];
    let zero = Elem::zero(tw.field(), 0, path.hom_dim(p, q, 0));
    let k = cone_in_path(&path, p, q, &zero).unwrap();
    assert_eq!(k.object.source, tw.direct_sum(&[tw.shift_obj(&p.source, 1), q.source.clone()]));
    assert_eq!(k.object.target, tw.direct_sum(&[tw.shift_obj(&p.target, 1), q.target.clone()]));
    for z in &pool {
        let split: usize = [path.hom(&tw_shift(&path, p), z), path.hom(q, z)]
            .iter()
            .map(|c| c.betti().values().sum::<usize>())
            .sum();
        assert_eq!(path.hom(&k.object, z).betti().values().sum::<usize>(), split);
    }
    let not_closed = Elem::new(0, vec![tw.field().one(); path.hom_dim(p, q, 0)]);
    assert!(path.differential(p, q, &not_closed).is_zero() || cone_in_path(&path, p, q, &not_closed).is_err());
}

fn tw_shift(path: &PathCategory<Tw>, p: &PathObj<TwObj<usize>>) -> PathObj<TwObj<usize>> {
    let tw = &path.base;
    PathObj {
        source: tw.shift_obj(&p.source, 1),
        target: tw.shift_obj(&p.target, 1),
        map: p.map.clone(),
    }
}

#[test]
fn cone_corner_is_h() {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let path = PathCategory::new(tw.clone());
    let y = tw.yoneda(1);
    let c = tw.cone_obj(&y, &y, &tw.identity(&y)).unwrap();
    let p = path.identity_object(&y);
    let q = path.identity_object(&c);
    let mut found = 0;
    for h in dgex::dgcat::basis_elements(&tw, &y, &c) {
        if h.degree != -1 {
            continue;
        }
        let m = PathMorphism {
            mx: Elem::zero(tw.field(), 0, tw.hom_dim(&y, &c, 0)),
            my: tw.differential(&y, &c, &h),
            h: h.clone(),
        };
        let e = PathCategory::<Tw>::join(&m);
        assert!(path.differential(&p, &q, &e).is_zero());
        let k = cone_in_path(&path, &p, &q, &e).unwrap();
        assert_eq!(phi_corner(&tw, &p, &q, &k), h);
        assert!(tw.differential(&k.object.source, &k.object.target, &k.object.map).is_zero());
        found += 1;
    }
    assert!(found > 0);
}
