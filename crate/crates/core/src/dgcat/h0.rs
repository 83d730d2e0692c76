//! The homotopy category `H⁰` and invertibility of closed degree-0 maps.

use std::collections::HashMap;

use serde_json::json;

use crate::complexes::Homology;
use crate::dgcat::{postcomposition_matrix, precomposition_matrix, DgCat, Elem};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::report::{Report, Tally};

fn require_closed_degree_zero<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, f: &Elem) -> Result<()> {
    if f.degree != 0 || f.coeffs.len() != cat.hom_dim(x, y, 0) {
        return Err(Error::NotClosedDegreeZero(format!(
            "morphism of degree {} from {}",
            f.degree,
            cat.describe(x)
        )));
    }
    if !cat.differential(x, y, f).is_zero() {
        return Err(Error::NotClosedDegreeZero(format!(
            "morphism {} -> {} is not closed",
            cat.describe(x),
            cat.describe(y)
        )));
    }
    Ok(())
}

fn differential_matrix<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, n: i32) -> Matrix {
    cat.hom(x, y).d(n)
}

/// Some `g: y -> x` with `g f ~ id` and `f g ~ id`, found by solving
/// `dg = 0`, `g f - du = id_x`, `f g - dv = id_y`.
pub fn h0_inverse<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, f: &Elem) -> Result<Option<Elem>> {
    require_closed_degree_zero(cat, x, y, f)?;
    let field = cat.field();
    let g_dim = cat.hom_dim(y, x, 0);
    let dg = differential_matrix(cat, y, x, 0);
    let pre = precomposition_matrix(cat, x, y, x, f, 0);
    let post = postcomposition_matrix(cat, y, x, y, f, 0);
    let du = differential_matrix(cat, x, x, -1);
    let dv = differential_matrix(cat, y, y, -1);
    let (u_dim, v_dim) = (du.cols(), dv.cols());
    let rows = dg.rows() + pre.rows() + post.rows();
    let mut system = Matrix::zeros(field, rows, g_dim + u_dim + v_dim);
    system.put_block(0, 0, &dg);
    system.put_block(dg.rows(), 0, &pre);
    system.put_block(dg.rows(), g_dim, &du.neg());
    system.put_block(dg.rows() + pre.rows(), 0, &post);
    system.put_block(dg.rows() + pre.rows(), g_dim + u_dim, &dv.neg());
    let mut rhs = field.zeros(dg.rows());
    rhs.extend(cat.identity(x).coeffs);
    rhs.extend(cat.identity(y).coeffs);
    Ok(system
        .solve(&rhs)
        .map(|sol| Elem::new(0, sol[..g_dim].to_vec())))
}

pub fn is_h0_invertible<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, f: &Elem) -> Result<bool> {
    Ok(h0_inverse(cat, x, y, f)?.is_some())
}

/// The two-sided inverse of a degree-0 map on the nose, if any.
pub fn strict_inverse<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, f: &Elem) -> Option<Elem> {
    let pre = precomposition_matrix(cat, x, y, x, f, -f.degree);
    let post = postcomposition_matrix(cat, y, x, y, f, -f.degree);
    let system = pre.vstack(&post);
    let mut rhs = cat.identity(x).coeffs;
    rhs.extend(cat.identity(y).coeffs);
    system.solve(&rhs).map(|g| Elem::new(-f.degree, g))
}

/// `H⁰` of a finite list of objects with composition on class coordinates.
pub struct H0Category {
    pub field: Field,
    pub names: Vec<String>,
    homology: Vec<Vec<Homology>>,
    comp: HashMap<(usize, usize, usize), Matrix>,
}

impl H0Category {
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.homology[x][y].dim
    }

    pub fn homology(&self, x: usize, y: usize) -> &Homology {
        &self.homology[x][y]
    }

    /// Class coordinates of `[g] ∘ [f]`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let m = &self.comp[&(x, y, z)];
        let df = f.len();
        let mut out = self.field.zeros(m.rows());
        for (a, ga) in g.iter().enumerate() {
            for (b, fb) in f.iter().enumerate() {
                let w = ga * fb;
                if w.is_zero() {
                    continue;
                }
                for (r, o) in out.iter_mut().enumerate() {
                    *o += &(&w * m.get(r, a * df + b));
                }
            }
        }
        out
    }
}

pub fn h0<C: DgCat>(cat: &C, objects: &[C::Obj]) -> H0Category {
    let field = cat.field();
    let homology: Vec<Vec<Homology>> = objects
        .iter()
        .map(|x| objects.iter().map(|y| cat.hom(x, y).homology(0)).collect())
        .collect();
    let n = objects.len();
    let mut comp = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (hf, hg, hgf) = (&homology[i][j], &homology[j][k], &homology[i][k]);
                let mut m = Matrix::zeros(field, hgf.dim, hg.dim * hf.dim);
                for (a, g) in hg.representatives.iter().enumerate() {
                    for (b, f) in hf.representatives.iter().enumerate() {
                        let (x, y, z) = (&objects[i], &objects[j], &objects[k]);
                        let gf = cat.compose(x, y, z, &Elem::new(0, g.clone()), &Elem::new(0, f.clone()));
                        let coords = hgf.classify(&gf.coeffs).expect("composite of cycles is a cycle");
                        for (r, c) in coords.into_iter().enumerate() {
                            m.set(r, a * hf.dim + b, c);
                        }
                    }
                }
                comp.insert((i, j, k), m);
            }
        }
    }
    H0Category {
        field,
        names: objects.iter().map(|x| cat.describe(x)).collect(),
        homology,
        comp,
    }
}

/// Composition with a boundary on either side yields a boundary, checked on
/// boundary basis elements against cycle representatives.
pub fn check_h0_well_defined<C: DgCat>(cat: &C, objects: &[C::Obj]) -> Report {
    let mut tally = Tally::new();
    for x in objects {
        for y in objects {
            let hxy = cat.hom(x, y);
            let boundaries_xy: Vec<Vec<Scalar>> = {
                let d = hxy.d(-1);
                (0..d.cols()).map(|c| d.column(c)).collect()
            };
            for z in objects {
                let hyz = cat.hom(y, z);
                let hxz = cat.hom(x, z).homology(0);
                let cycles_yz = hyz.homology(0).cycles;
                for b in &boundaries_xy {
                    for g in &cycles_yz {
                        let gb = cat.compose(x, y, z, &Elem::new(0, g.clone()), &Elem::new(0, b.clone()));
                        tally.record(
                            "h0-composition",
                            hxz.is_boundary(&gb.coeffs),
                            || format!("{} -> {} -> {}", cat.describe(x), cat.describe(y), cat.describe(z)),
                            || json!({"cycle": crate::report::scalars_json(g)}),
                        );
                    }
                }
                let d = hyz.d(-1);
                let cycles_xy = hxy.homology(0).cycles;
                for c in 0..d.cols() {
                    let b = d.column(c);
                    for f in &cycles_xy {
                        let bf = cat.compose(x, y, z, &Elem::new(0, b.clone()), &Elem::new(0, f.clone()));
                        tally.record(
                            "h0-composition",
                            hxz.is_boundary(&bf.coeffs),
                            || format!("{} -> {} -> {}", cat.describe(x), cat.describe(y), cat.describe(z)),
                            || json!({"cycle": crate::report::scalars_json(f)}),
                        );
                    }
                }
            }
        }
    }
    tally.into_report()
}
