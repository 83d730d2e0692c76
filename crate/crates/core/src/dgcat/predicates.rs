//! Quasi-equivalences and fibrations of dg categories, decided by exact
//! linear algebra and finite search over `H⁰` classes.
//!
//! The fibration test is the standard characterization for the model
//! structure on dg categories: surjective on Hom complexes in every degree,
//! and every `H⁰`-isomorphism out of an image object lifts to an
//! `H⁰`-isomorphism with the prescribed source mapping onto it exactly.

use serde_json::json;

use crate::dgcat::functor::Obj;
use crate::dgcat::h0::is_h0_invertible;
use crate::dgcat::{DgCat, DgFunctor, Elem, Enumerable};
use crate::field::Scalar;
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::report::{scalars_json, Check, Report};

/// First `H⁰`-isomorphism `x -> y` among lattice combinations of class
/// representatives.
pub fn find_h0_iso<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, lattice: &Lattice) -> Option<Elem> {
    if x == y {
        return Some(cat.identity(x));
    }
    let field = cat.field();
    let h = cat.hom(x, y).homology(0);
    let offset = field.zeros(cat.hom_dim(x, y, 0));
    lattice
        .find(field, &offset, &h.representatives, |v| {
            is_h0_invertible(cat, x, y, &Elem::new(0, v.to_vec())).unwrap_or(false)
        })
        .map(|v| Elem::new(0, v))
}

pub fn is_quasi_equivalence<F>(f: &F, lattice: &Lattice) -> Report
where
    F: DgFunctor,
    F::Source: Enumerable,
    F::Target: Enumerable,
{
    let (a, b) = (f.source(), f.target());
    let objs = a.objects();
    let mut report = Report::new();
    for x in &objs {
        for y in &objs {
            let m = f.hom_map(x, y);
            let sample = format!("Hom({}, {})", a.describe(x), a.describe(y));
            if m.is_quasi_isomorphism() {
                report.push(Check::pass("hom-quasi-isomorphism", sample));
            } else {
                let src: Vec<_> = m.source.betti().into_iter().collect();
                let tgt: Vec<_> = m.target.betti().into_iter().collect();
                report.push(Check::fail(
                    "hom-quasi-isomorphism",
                    sample,
                    json!({"source_homology": src, "target_homology": tgt}),
                ));
            }
        }
    }
    let images: Vec<Obj<F::Target>> = objs.iter().map(|x| f.map_obj(x)).collect();
    for y in b.objects() {
        let hit = images
            .iter()
            .zip(&objs)
            .find_map(|(fx, x)| find_h0_iso(b, fx, &y, lattice).map(|v| (x, v)));
        let sample = b.describe(&y);
        match hit {
            Some((x, v)) => report.push(Check {
                law: "essentially-surjective".into(),
                sample,
                pass: true,
                witness: json!({"preimage": a.describe(x), "iso": v.to_json()}),
            }),
            None => report.push(Check::fail(
                "essentially-surjective",
                sample,
                json!("no H0-isomorphism from the image"),
            )),
        }
    }
    report
}

pub fn is_fibration<F>(f: &F, lattice: &Lattice) -> Report
where
    F: DgFunctor,
    F::Source: Enumerable,
    F::Target: Enumerable,
{
    let (a, b) = (f.source(), f.target());
    let objs = a.objects();
    let mut report = Report::new();
    for x in &objs {
        for y in &objs {
            let m = f.hom_map(x, y);
            let sample = format!("Hom({}, {})", a.describe(x), a.describe(y));
            let short: Vec<i32> = m
                .target
                .support()
                .into_iter()
                .filter(|&n| m.component(n).rank() < m.target.dim(n))
                .collect();
            if short.is_empty() {
                report.push(Check::pass("hom-surjective", sample));
            } else {
                report.push(Check::fail("hom-surjective", sample, json!({"degrees": short})));
            }
        }
    }
    let field = b.field();
    let mut lifted = 0usize;
    let mut failures = Vec::new();
    for x in &objs {
        let fx = f.map_obj(x);
        for y in b.objects() {
            let h = b.hom(&fx, &y).homology(0);
            let offset = field.zeros(b.hom_dim(&fx, &y, 0));
            for v in lattice.points(field, &offset, &h.representatives) {
                let v = Elem::new(0, v);
                if !is_h0_invertible(b, &fx, &y, &v).unwrap_or(false) {
                    continue;
                }
                if lift_iso(f, x, &y, &v, lattice).is_some() {
                    lifted += 1;
                } else {
                    failures.push(Check::fail(
                        "iso-lifting",
                        format!("{} -> {}", b.describe(&fx), b.describe(&y)),
                        json!({"source": a.describe(x), "iso": scalars_json(&v.coeffs)}),
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        report.push(Check::pass("iso-lifting", format!("{lifted} isomorphisms lifted")));
    }
    report.checks.extend(failures);
    report
}

/// An `H⁰`-isomorphism `u: x -> x'` with `F x' = y` and `F u = v` exactly.
pub fn lift_iso<F>(
    f: &F,
    x: &Obj<F::Source>,
    y: &Obj<F::Target>,
    v: &Elem,
    lattice: &Lattice,
) -> Option<(Obj<F::Source>, Elem)>
where
    F: DgFunctor,
    F::Source: Enumerable,
{
    let a = f.source();
    let field = a.field();
    for x2 in a.objects() {
        if &f.map_obj(&x2) != y {
            continue;
        }
        let hom = a.hom(x, &x2);
        let d0 = hom.d(0);
        let fm = f.hom_map(x, &x2).component(0);
        let system = d0.vstack(&fm);
        let mut rhs = field.zeros(d0.rows());
        rhs.extend(v.coeffs.iter().cloned());
        let Some(u0) = system.solve(&rhs) else {
            continue;
        };
        let dirs = class_changing_directions(&hom.homology(0), &system.kernel());
        let found = lattice.find(field, &u0, &dirs, |u| {
            is_h0_invertible(a, x, &x2, &Elem::new(0, u.to_vec())).unwrap_or(false)
        });
        if let Some(u) = found {
            return Some((x2, Elem::new(0, u)));
        }
    }
    None
}

/// Kernel vectors whose `H⁰` classes are linearly independent.
fn class_changing_directions(
    h: &crate::complexes::Homology,
    kernel: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    if h.dim == 0 || kernel.is_empty() {
        return Vec::new();
    }
    let field = kernel[0][0].field();
    let coords: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| h.classify(k).expect("kernel vectors are cycles"))
        .collect();
    let m = Matrix::from_columns(field, h.dim, &coords);
    m.echelon().pivots.into_iter().map(|p| kernel[p].clone()).collect()
}
