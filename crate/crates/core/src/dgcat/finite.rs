//! Dg categories with finitely many objects, stored through structure
//! constants.

use std::collections::{BTreeMap, HashMap};

use crate::complexes::{Complex, Degree};
use crate::dgcat::{DgCat, Elem, Enumerable};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Structure constants for `Hom(y,z)^m × Hom(x,y)^n -> Hom(x,z)^{m+n}` are a
/// matrix with `dim Hom(x,z)^{m+n}` rows whose column `a * dim Hom(x,y)^n + b`
/// is the product of basis elements `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDgCategory {
    field: Field,
    names: Vec<String>,
    homs: Vec<Vec<Complex>>,
    comp: HashMap<(usize, usize, usize, Degree, Degree), Matrix>,
    ids: Vec<Vec<Scalar>>,
}

pub type CompKey = (usize, usize, usize, Degree, Degree);

impl FiniteDgCategory {
    pub fn new(field: Field) -> FiniteDgCategory {
        FiniteDgCategory {
            field,
            names: Vec::new(),
            homs: Vec::new(),
            comp: HashMap::new(),
            ids: Vec::new(),
        }
    }

    /// The one-object category with zero Hom complex.
    pub fn terminal(field: Field) -> FiniteDgCategory {
        let mut c = FiniteDgCategory::new(field);
        c.add_object("*");
        c
    }

    /// Adds an object with zero Hom complexes to and from everything.
    pub fn add_object(&mut self, name: impl Into<String>) -> usize {
        let zero = Complex::zero(self.field);
        for row in &mut self.homs {
            row.push(zero.clone());
        }
        self.names.push(name.into());
        let n = self.names.len();
        self.homs.push(vec![zero; n]);
        self.ids.push(Vec::new());
        n - 1
    }

    pub fn set_hom(&mut self, x: usize, y: usize, hom: Complex) {
        self.homs[x][y] = hom;
    }

    pub fn set_identity(&mut self, x: usize, coeffs: Vec<Scalar>) {
        self.ids[x] = coeffs;
    }

    /// Records the product of basis element `a` of `Hom(y,z)^m` with basis
    /// element `b` of `Hom(x,y)^n`.
    pub fn set_product(
        &mut self,
        (x, y, z): (usize, usize, usize),
        (m, a): (Degree, usize),
        (n, b): (Degree, usize),
        value: Vec<Scalar>,
    ) {
        let dg = self.homs[y][z].dim(m);
        let df = self.homs[x][y].dim(n);
        let rows = self.homs[x][z].dim(m + n);
        assert!(a < dg && b < df && value.len() == rows, "structure constant out of shape");
        let field = self.field;
        let entry = self
            .comp
            .entry((x, y, z, m, n))
            .or_insert_with(|| Matrix::zeros(field, rows, dg * df));
        for (r, v) in value.into_iter().enumerate() {
            entry.set(r, a * df + b, v);
        }
    }

    /// Inserts a full structure-constant block without shape checks; used by
    /// parsers that validate separately.
    pub fn set_structure_constants(&mut self, key: CompKey, m: Matrix) {
        self.comp.insert(key, m);
    }

    pub fn structure_constants(&self, key: CompKey) -> Option<&Matrix> {
        self.comp.get(&key)
    }

    /// Nonzero structure-constant blocks in a deterministic order.
    pub fn structure_blocks(&self) -> BTreeMap<CompKey, &Matrix> {
        self.comp
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, m)| (*k, m))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn hom_complex(&self, x: usize, y: usize) -> &Complex {
        &self.homs[x][y]
    }

    pub fn identity_coeffs(&self, x: usize) -> &[Scalar] {
        &self.ids[x]
    }

    /// The full subcategory on `objs`, in the given order.
    pub fn full_subcategory(&self, objs: &[usize]) -> FiniteDgCategory {
        let mut out = FiniteDgCategory::new(self.field);
        for &x in objs {
            out.add_object(self.names[x].clone());
        }
        for (i, &x) in objs.iter().enumerate() {
            out.ids[i] = self.ids[x].clone();
            for (j, &y) in objs.iter().enumerate() {
                out.homs[i][j] = self.homs[x][y].clone();
                for (k, &z) in objs.iter().enumerate() {
                    for (&(a, b, c, m, n), mat) in &self.comp {
                        if (a, b, c) == (x, y, z) {
                            out.comp.insert((i, j, k, m, n), mat.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

impl DgCat for FiniteDgCategory {
    type Obj = usize;

    fn field(&self) -> Field {
        self.field
    }

    fn hom_dims(&self, x: &usize, y: &usize) -> BTreeMap<Degree, usize> {
        self.homs[*x][*y].dims().clone()
    }

    fn hom_dim(&self, x: &usize, y: &usize, n: Degree) -> usize {
        self.homs[*x][*y].dim(n)
    }

    fn differential(&self, x: &usize, y: &usize, f: &Elem) -> Elem {
        let d = self.homs[*x][*y].d(f.degree);
        Elem::new(f.degree + 1, d.mul_vec(&f.coeffs))
    }

    fn compose(&self, x: &usize, y: &usize, z: &usize, g: &Elem, f: &Elem) -> Elem {
        let degree = g.degree + f.degree;
        let rows = self.homs[*x][*z].dim(degree);
        let mut out = self.field.zeros(rows);
        if let Some(c) = self.comp.get(&(*x, *y, *z, g.degree, f.degree)) {
            let df = f.coeffs.len();
            for (a, ga) in g.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (b, fb) in f.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let w = ga * fb;
                    for (r, o) in out.iter_mut().enumerate() {
                        let e = c.get(r, a * df + b);
                        if !e.is_zero() {
                            *o += &(&w * e);
                        }
                    }
                }
            }
        }
        Elem::new(degree, out)
    }

    fn identity(&self, x: &usize) -> Elem {
        Elem::new(0, self.ids[*x].clone())
    }

    fn hom(&self, x: &usize, y: &usize) -> Complex {
        self.homs[*x][*y].clone()
    }

    fn describe(&self, x: &usize) -> String {
        self.names[*x].clone()
    }
}

impl Enumerable for FiniteDgCategory {
    fn objects(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// Writes down the full subcategory of `cat` on `objects` with explicit
/// structure constants.
pub fn materialize<C: DgCat>(cat: &C, objects: &[C::Obj]) -> FiniteDgCategory {
    let field = cat.field();
    let mut out = FiniteDgCategory::new(field);
    for x in objects {
        out.add_object(cat.describe(x));
    }
    let dims: Vec<Vec<BTreeMap<Degree, usize>>> = objects
        .iter()
        .map(|x| objects.iter().map(|y| cat.hom_dims(x, y)).collect())
        .collect();
    for (i, x) in objects.iter().enumerate() {
        out.ids[i] = cat.identity(x).coeffs;
        for (j, y) in objects.iter().enumerate() {
            out.homs[i][j] = cat.hom(x, y);
        }
    }
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            for (k, z) in objects.iter().enumerate() {
                for (&m, &dg) in &dims[j][k] {
                    for (&n, &df) in &dims[i][j] {
                        let rows = out.homs[i][k].dim(m + n);
                        let mut mat = Matrix::zeros(field, rows, dg * df);
                        for a in 0..dg {
                            let g = Elem::basis(field, m, dg, a);
                            for b in 0..df {
                                let f = Elem::basis(field, n, df, b);
                                let v = cat.compose(x, y, z, &g, &f).coeffs;
                                for (r, e) in v.into_iter().enumerate() {
                                    mat.set(r, a * df + b, e);
                                }
                            }
                        }
                        if !mat.is_zero() {
                            out.comp.insert((i, j, k, m, n), mat);
                        }
                    }
                }
            }
        }
    }
    out
}

impl FiniteDgCategory {
    /// Compares Hom complexes, identities and all structure constants,
    /// treating missing blocks as zero. Names are ignored.
    pub fn table_difference(&self, other: &FiniteDgCategory) -> Option<String> {
        if self.field != other.field {
            return Some("fields differ".into());
        }
        if self.len() != other.len() {
            return Some(format!("{} vs {} objects", self.len(), other.len()));
        }
        let n = self.len();
        for x in 0..n {
            if self.ids[x] != other.ids[x] {
                return Some(format!("identity of object {x}"));
            }
            for y in 0..n {
                if self.homs[x][y] != other.homs[x][y] {
                    return Some(format!("Hom({x},{y})"));
                }
            }
        }
        let mut keys: Vec<CompKey> = self.comp.keys().chain(other.comp.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let (x, y, z, m, k) = key;
            let zero = || {
                Matrix::zeros(
                    self.field,
                    self.homs[x][z].dim(m + k),
                    self.homs[y][z].dim(m) * self.homs[x][y].dim(k),
                )
            };
            let a = self.comp.get(&key).cloned().unwrap_or_else(zero);
            let b = other.comp.get(&key).cloned().unwrap_or_else(zero);
            if a != b {
                return Some(format!("composition {key:?}"));
            }
        }
        None
    }
}
