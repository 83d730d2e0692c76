use std::collections::BTreeMap;
use std::sync::Arc;

use dgex::complexes::Complex;
use dgex::dgcat::functor::{validate_functor, Identity};
use dgex::dgcat::h0::{h0, h0_inverse, is_h0_invertible};
use dgex::dgcat::predicates::{is_fibration, is_quasi_equivalence};
use dgex::dgcat::product::{Diagonal, Product, Projection, ToTerminal};
use dgex::dgcat::validate::validate_dgcat;
use dgex::dgcat::{DgCat, DgFunctor, Elem, Enumerable, FiniteDgCategory, TableFunctor};
use dgex::lattice::Lattice;
use dgex::matrix::Matrix;
use dgex::twisted::generators::{build_generators, codiscrete, morphism, point};
use dgex::{Field, Error};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(5)];

#[test]
fn generators_are_valid() {
    for field in FIELDS {
        let g = build_generators(field);
        for gen in [&g.point, &g.suspension, &g.cosuspension, &g.morphism, &g.cone] {
            let objs = gen.cat.objects();
            let report = validate_dgcat(&gen.cat, &objs);
            assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        }
        for incl in [&g.s_inclusion, &g.s_inv_inclusion] {
            assert!(validate_functor(incl, &[0]).passed());
        }
        assert!(validate_functor(&g.c_inclusion, &[0, 1]).passed());
    }
}

#[test]
fn corrupt_point_is_rejected() {
    let p = point(Field::Rational);
    let mut bad = (*p.cat).clone();
    let d = Matrix::from_i64_rows(Field::Rational, &[&[1]]);
    bad.set_hom(0, 0, Complex::new(Field::Rational, BTreeMap::from([(0, 1)]), BTreeMap::from([(0, d)])));
    let report = validate_dgcat(&bad, &[0]);
    assert!(!report.passed());
    assert!(report.failures_of("identity-closed").count() > 0);
    assert!(report.failures_of("hom-complex").count() > 0);
}

#[test]
fn homotopy_categories() {
    let p = point(Field::Rational);
    let h = h0(&p.cat, &[0]);
    assert_eq!(h.dim(0, 0), 1);

    let m = morphism(Field::Rational);
    let h = h0(&m.cat, &[0, 1]);
    assert_eq!((h.dim(0, 1), h.dim(1, 0), h.dim(0, 0), h.dim(1, 1)), (1, 0, 1, 1));
    let one = vec![Field::Rational.one()];
    assert_eq!(h.compose(0, 0, 1, &one, &one), one);

    // Hom(X, Y) = (k --id--> k) in degrees -1, 0 kills the degree-0 class.
    let mut a = FiniteDgCategory::new(Field::Rational);
    a.add_object("X");
    a.add_object("Y");
    let q = Field::Rational;
    for x in 0..2 {
        a.set_hom(x, x, Complex::concentrated(q, 0, 1));
        a.set_identity(x, vec![q.one()]);
        a.set_product((x, x, x), (0, 0), (0, 0), vec![q.one()]);
    }
    a.set_hom(
        0,
        1,
        Complex::new(
            q,
            BTreeMap::from([(-1, 1), (0, 1)]),
            BTreeMap::from([(-1, Matrix::from_i64_rows(q, &[&[1]]))]),
        ),
    );
    for n in [-1, 0] {
        a.set_product((0, 1, 1), (0, 0), (n, 0), vec![q.one()]);
        a.set_product((0, 0, 1), (n, 0), (0, 0), vec![q.one()]);
    }
    assert!(validate_dgcat(&a, &[0, 1]).passed());
    assert_eq!(h0(&a, &[0, 1]).dim(0, 1), 0);
}

#[test]
fn invertibility() {
    let g = build_generators(Field::Rational);
    let m = &g.morphism;
    assert!(is_h0_invertible(&m.cat, &0, &0, &m.cat.identity(&0)).unwrap());
    let (x, y, f) = m.elem("f");
    assert!(!is_h0_invertible(&m.cat, &x, &y, &f).unwrap());
    let s = &g.suspension;
    assert!(is_h0_invertible(&s.cat, &1, &1, &s.cat.identity(&1)).unwrap());
    let (x, y, sg) = s.elem("s");
    assert!(matches!(is_h0_invertible(&s.cat, &x, &y, &sg), Err(Error::NotClosedDegreeZero(_))));
    let c = &g.cone;
    let id = c.cat.identity(&2);
    let inv = h0_inverse(&c.cat, &2, &2, &id).unwrap().unwrap();
    assert_eq!(inv.degree, 0);
}

#[test]
fn quasi_equivalences() {
    let g = build_generators(Field::Rational);
    let lattice = Lattice::default();
    let id = Identity(g.cone.cat.clone());
    assert!(is_quasi_equivalence(&id, &lattice).passed());
    let report = is_quasi_equivalence(&g.s_inclusion, &lattice);
    assert!(!report.passed());
    assert!(report.failures_of("essentially-surjective").count() == 1);

    let pair = codiscrete(Field::Rational, &["X", "Y"]);
    let p = point(Field::Rational);
    let incl = TableFunctor::from_fn(p.cat.clone(), pair.cat.clone(), vec![0], |_, _, e| e.clone());
    assert!(validate_functor(&incl, &[0]).passed());
    assert!(is_quasi_equivalence(&incl, &lattice).passed());
}

#[test]
fn fibrations() {
    let g = build_generators(Field::Prime(3));
    let lattice = Lattice::default();
    assert!(is_fibration(&Identity(g.cone.cat.clone()), &lattice).passed());
    let to_point = ToTerminal::new(g.cone.cat.clone());
    assert!(validate_functor(&to_point, &[0, 1, 2]).passed());
    assert!(is_fibration(&to_point, &lattice).passed());
    // No closed degree-0 isomorphism leaves X, so only Hom surjectivity on
    // End(X) is at stake and it holds.
    assert!(is_fibration(&g.s_inclusion, &lattice).passed());

    let pair = codiscrete(Field::Prime(3), &["X", "Y"]);
    let arrow = TableFunctor::from_fn(g.morphism.cat.clone(), pair.cat.clone(), vec![0, 1], |_, _, e| e.clone());
    assert!(validate_functor(&arrow, &[0, 1]).passed());
    let report = is_fibration(&arrow, &lattice);
    assert_eq!(report.failures_of("hom-surjective").count(), 1);
}

#[test]
fn products() {
    let g = build_generators(Field::Rational);
    let (a, b) = (g.cone.cat.clone(), g.suspension.cat.clone());
    let prod = Product::new(a.clone(), b.clone());
    let objs = prod.objects();
    assert_eq!(objs.len(), 6);
    for x in &objs {
        for y in &objs {
            for n in -2..=2 {
                assert_eq!(prod.hom_dim(x, y, n), a.hom_dim(&x.0, &y.0, n) + b.hom_dim(&x.1, &y.1, n));
            }
        }
    }
    assert!(validate_dgcat(&prod, &objs).passed());

    let diag = Diagonal::new(a.clone());
    let square = Product::new(a.clone(), a.clone());
    for first in [true, false] {
        let proj = Projection { product: &square, first };
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(proj.map_obj(&diag.map_obj(&x)), x);
                for e in dgex::dgcat::basis_elements(&*a, &x, &y) {
                    let back = proj.map_elem(&diag.map_obj(&x), &diag.map_obj(&y), &diag.map_elem(&x, &y, &e));
                    assert_eq!(back, e);
                }
            }
        }
    }

    let with_point = Product::new(a.clone(), Arc::new(FiniteDgCategory::terminal(Field::Rational)));
    let proj = ProjectLeft(&with_point);
    assert!(is_quasi_equivalence(&proj, &Lattice::default()).passed());
}

struct ProjectLeft<'a>(&'a Product<Arc<FiniteDgCategory>, Arc<FiniteDgCategory>>);

impl DgFunctor for ProjectLeft<'_> {
    type Source = Product<Arc<FiniteDgCategory>, Arc<FiniteDgCategory>>;
    type Target = Arc<FiniteDgCategory>;
    fn source(&self) -> &Self::Source {
        self.0
    }
    fn target(&self) -> &Self::Target {
        &self.0.left
    }
    fn map_obj(&self, x: &(usize, usize)) -> usize {
        x.0
    }
    fn map_elem(&self, x: &(usize, usize), y: &(usize, usize), f: &Elem) -> Elem {
        self.0.split(x, y, f).0
    }
}
