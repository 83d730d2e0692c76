use std::collections::BTreeMap;
use std::sync::Arc;

use dgex::dgcat::functor::{functor_difference, validate_functor};
use dgex::dgcat::validate::validate_dgcat;
use dgex::dgcat::{materialize, DgCat, DgFunctor, Elem, FiniteDgCategory};
use dgex::exec::Sampler;
use dgex::twisted::generators::{
    build_generators, classify_functor_from_cone, classify_functor_from_shift, cone_functor, rebuild_from_cone,
    rebuild_from_shift, shift_functor, Generator,
};
use dgex::twisted::pretriangulated::{check_pretriangulated, corepresentability_defects};
use dgex::twisted::{tw_map, TwObj, Twisted};
use dgex::Field;

type Tw = Twisted<Arc<FiniteDgCategory>>;

fn over(gen: &Generator) -> Tw {
    Twisted::new(gen.cat.clone())
}

fn f_hat(tw: &Tw) -> Elem {
    let (x, y) = (tw.yoneda(0), tw.yoneda(1));
    Elem::new(0, vec![tw.field().one(); tw.hom_dim(&x, &y, 0)])
}

/// Representables, their shifts, the cone of `f`, a direct sum and a
/// twisted object with two twist entries.
fn pool(tw: &Tw) -> Vec<TwObj<usize>> {
    let (x, y) = (tw.yoneda(0), tw.yoneda(1));
    let c = tw.cone_obj(&x, &y, &f_hat(tw)).unwrap();
    let iota = tw.sum_injection(&[y.clone(), tw.shift_obj(&x, 1)], 0);
    let to_sum = tw.compose(&x, &y, &tw.direct_sum(&[y.clone(), tw.shift_obj(&x, 1)]), &iota, &f_hat(tw));
    let sum = tw.direct_sum(&[y.clone(), tw.shift_obj(&x, 1)]);
    let c2 = tw.cone_obj(&x, &sum, &to_sum).unwrap();
    vec![
        x.clone(),
        y.clone(),
        tw.shift_obj(&x, 1),
        tw.shift_obj(&y, -1),
        c.clone(),
        tw.shift_obj(&c, 1),
        tw.direct_sum(&[x, c]),
        c2,
    ]
}

#[test]
fn twisted_model_is_a_dg_category() {
    for field in [Field::Rational, Field::Prime(5)] {
        let g = build_generators(field);
        let tw = over(&g.morphism);
        let objs = pool(&tw);
        for m in &objs {
            tw.check_object(m).unwrap();
        }
        let report = validate_dgcat(&tw, &objs);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn yoneda_is_fully_faithful() {
    let g = build_generators(Field::Rational);
    let tw = over(&g.morphism);
    let reps = [tw.yoneda(0), tw.yoneda(1)];
    assert!(materialize(&tw, &reps).table_difference(&g.morphism.cat).is_none());
    let p = over(&g.point);
    assert_eq!(p.hom_dims(&p.yoneda(0), &p.yoneda(0)), BTreeMap::from([(0, 1)]));
}

#[test]
fn generator_tables_match_the_engine() {
    for field in [Field::Rational, Field::Prime(7)] {
        let g = build_generators(field);
        let p = over(&g.point);
        let x = p.yoneda(0);
        let s = materialize(&p, &[x.clone(), p.shift_obj(&x, 1)]);
        assert_eq!(s.table_difference(&g.suspension.cat), None);
        let si = materialize(&p, &[x.clone(), p.shift_obj(&x, -1)]);
        assert_eq!(si.table_difference(&g.cosuspension.cat), None);
        let m = over(&g.morphism);
        let (a, b) = (m.yoneda(0), m.yoneda(1));
        let k = m.cone_obj(&a, &b, &f_hat(&m)).unwrap();
        let c = materialize(&m, &[a, b, k]);
        assert_eq!(c.table_difference(&g.cone.cat), None);
    }
}

#[test]
fn shifts() {
    let g = build_generators(Field::Rational);
    let p = over(&g.point);
    let x = p.yoneda(0);
    let x1 = p.shift_obj(&x, 1);
    assert_eq!(p.hom_dims(&x1, &x), BTreeMap::from([(1, 1)]));
    assert_eq!(p.hom_dims(&x, &x1), BTreeMap::from([(-1, 1)]));
    let m = over(&g.morphism);
    for obj in pool(&m) {
        assert_eq!(m.shift_obj(&m.shift_obj(&obj, 1), -1), obj);
        let shifted = m.shift_obj(&obj, 1);
        for z in pool(&m) {
            let (a, b) = (m.hom(&shifted, &z), m.hom(&obj, &z));
            for n in -3..=3 {
                assert_eq!(a.dim(n), b.dim(n - 1));
            }
        }
    }
}

#[test]
fn cones() {
    let g = build_generators(Field::Rational);
    let m = over(&g.morphism);
    let (x, y) = (m.yoneda(0), m.yoneda(1));
    let cid = m.cone_obj(&x, &x, &m.identity(&x)).unwrap();
    for z in [&x, &y] {
        assert!(m.hom(z, &cid).is_acyclic());
        assert!(m.hom(&cid, z).is_acyclic());
    }
    let zero = Elem::zero(m.field(), 0, m.hom_dim(&x, &y, 0));
    let c0 = m.cone_obj(&x, &y, &zero).unwrap();
    assert_eq!(c0, m.direct_sum(&[m.shift_obj(&x, 1), y.clone()]));
    let not_closed = Elem::new(-1, vec![]);
    assert!(m.cone_obj(&x, &y, &not_closed).is_err());

    let mut bad = m.cone_obj(&x, &y, &f_hat(&m)).unwrap();
    bad.twist.insert((1, 0), vec![m.field().one()]);
    assert!(m.check_object(&bad).is_ok());
    let one = m.field().one();
    let bad2 = TwObj::new(
        vec![(0, 2), (1, 1), (1, 0)],
        BTreeMap::from([((1, 0), vec![one.clone()]), ((2, 1), vec![one])]),
    );
    assert!(m.check_object(&bad2).is_err());
}

#[test]
fn shift_functors_classify() {
    let q = Field::Rational;
    let g = build_generators(q);
    let p = over(&g.point);
    let x = p.yoneda(0);
    for (gen, e) in [(&g.suspension, 1), (&g.cosuspension, -1)] {
        let h = shift_functor(gen, &p, &x, e);
        assert!(validate_functor(&h, &[0, 1]).passed());
        let data = classify_functor_from_shift(gen, &h, e).unwrap();
        assert_eq!(data.witness, p.identity(&data.y));
        let back = rebuild_from_shift(gen, &p, &data, e).unwrap();
        assert_eq!(functor_difference(&h, &back, &[0, 1]), None);

        // Scaling s by 2 and t by 1/2 is again a functor; the witness is 2.
        let two = q.from_i64(2);
        let half = two.inverse().unwrap();
        let scaled = dgex::dgcat::TableFunctor::from_fn(gen.cat.clone(), p.clone(), vec![h.map_obj(&0), h.map_obj(&1)], |a, b, el| {
            let img = h.map_elem(&a, &b, el);
            match el.degree {
                d if d == -e => img.scale(&two),
                d if d == e && a != b => img.scale(&half),
                _ => img,
            }
        });
        assert!(validate_functor(&scaled, &[0, 1]).passed());
        let data = classify_functor_from_shift(gen, &scaled, e).unwrap();
        assert_eq!(data.witness, p.identity(&data.y).scale(&two));
        let back = rebuild_from_shift(gen, &p, &data, e).unwrap();
        assert_eq!(functor_difference(&scaled, &back, &[0, 1]), None);
    }
}

#[test]
fn cone_functors_classify() {
    for field in [Field::Rational, Field::Prime(5)] {
        let g = build_generators(field);
        let m = over(&g.morphism);
        let (x, y) = (m.yoneda(0), m.yoneda(1));
        let r = cone_functor(&g.cone, &m, &x, &y, &f_hat(&m)).unwrap();
        assert!(validate_functor(&r, &[0, 1, 2]).passed());
        let data = classify_functor_from_cone(&g.cone, &r).unwrap();
        assert_eq!(data.witness, m.identity(&data.z));
        let back = rebuild_from_cone(&g.cone, &m, &data).unwrap();
        assert_eq!(functor_difference(&r, &back, &[0, 1, 2]), None);

        // A cone functor for a map between larger twisted complexes.
        let objs = pool(&m);
        let (a, b) = (&objs[4], &objs[6]);
        let f = m.sum_injection(&[x.clone(), a.clone()], 1);
        let r = cone_functor(&g.cone, &m, a, b, &f).unwrap();
        assert!(validate_functor(&r, &[0, 1, 2]).passed());
        let data = classify_functor_from_cone(&g.cone, &r).unwrap();
        let back = rebuild_from_cone(&g.cone, &m, &data).unwrap();
        assert_eq!(functor_difference(&r, &back, &[0, 1, 2]), None);
    }
}

#[test]
fn twisted_functoriality() {
    let g = build_generators(Field::Rational);
    let tg = tw_map(g.c_inclusion.clone());
    let m = over(&g.morphism);
    let objs = pool(&m);
    assert!(validate_functor(&tg, &objs).passed());
    let c = Twisted::new(g.cone.cat.clone());
    for o in &objs {
        c.check_object(&tg.map_obj(o)).unwrap();
    }
}

#[test]
fn pretriangulated() {
    let g = build_generators(Field::Rational);
    let m = over(&g.morphism);
    let objs = pool(&m);
    let report = check_pretriangulated(&m, &objs, &Sampler::new(11, 50));
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());

    let x = m.yoneda(0);
    let id = m.identity(&x);
    for z in &objs {
        let star = dgex::dgcat::precomposition(&m, &x, &x, z, &id);
        let c = m.cone_obj(&x, &x, &id).unwrap();
        assert!(m.hom(&c, z).is_acyclic());
        assert!(corepresentability_defects(&m.hom(&c, z), &star).unwrap().is_empty());
    }
}
