//! Dg categories given element-wise: Hom dimensions, the differential and
//! composition on coefficient vectors over fixed bases.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::complexes::{ChainMap, Complex, Degree};
use crate::field::{axpy, Field, Scalar};
use crate::matrix::Matrix;
use crate::report::scalars_json;

pub mod finite;
pub mod functor;
pub mod h0;
pub mod predicates;
pub mod product;
pub mod validate;

pub use finite::{materialize, FiniteDgCategory};
pub use functor::{DgFunctor, TableFunctor};

/// A homogeneous element of a Hom complex: its degree and coordinates in the
/// chosen basis of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub degree: Degree,
    pub coeffs: Vec<Scalar>,
}

impl Elem {
    pub fn new(degree: Degree, coeffs: Vec<Scalar>) -> Elem {
        Elem { degree, coeffs }
    }

    pub fn zero(field: Field, degree: Degree, dim: usize) -> Elem {
        Elem::new(degree, field.zeros(dim))
    }

    pub fn basis(field: Field, degree: Degree, dim: usize, i: usize) -> Elem {
        Elem::new(degree, field.unit_vector(dim, i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Elem) -> Elem {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        Elem::new(
            self.degree,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        Elem::new(self.degree, self.coeffs.iter().map(|x| c * x).collect())
    }

    pub fn neg(&self) -> Elem {
        Elem::new(self.degree, self.coeffs.iter().map(|x| -x).collect())
    }

    /// `(-1)^k` times this element.
    pub fn signed(&self, k: i64) -> Elem {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"degree": self.degree, "coeffs": scalars_json(&self.coeffs)})
    }
}

/// A dg category presented through its action on coefficient vectors.
///
/// `compose(x, y, z, g, f)` is `g ∘ f` for `f: x -> y` and `g: y -> z`.
pub trait DgCat: Send + Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;

    fn field(&self) -> Field;

    /// Nonzero dimensions of `Hom(x, y)` by degree.
    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> BTreeMap<Degree, usize>;

    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj, n: Degree) -> usize {
        self.hom_dims(x, y).get(&n).copied().unwrap_or(0)
    }

    fn differential(&self, x: &Self::Obj, y: &Self::Obj, f: &Elem) -> Elem;

    fn compose(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: &Elem, f: &Elem) -> Elem;

    fn identity(&self, x: &Self::Obj) -> Elem;

    /// The Hom complex with the differential written in the chosen bases.
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Complex {
        let field = self.field();
        let dims = self.hom_dims(x, y);
        let diffs = dims
            .iter()
            .map(|(&n, &dim)| {
                let cols: Vec<Vec<Scalar>> = (0..dim)
                    .map(|i| self.differential(x, y, &Elem::basis(field, n, dim, i)).coeffs)
                    .collect();
                (n, Matrix::from_columns(field, self.hom_dim(x, y, n + 1), &cols))
            })
            .collect();
        Complex::new(field, dims, diffs)
    }

    fn describe(&self, x: &Self::Obj) -> String {
        format!("{x:?}")
    }
}

/// Categories whose object set is finite and listed.
pub trait Enumerable: DgCat {
    fn objects(&self) -> Vec<Self::Obj>;
}

impl<T: DgCat + ?Sized> DgCat for &T {
    type Obj = T::Obj;
    fn field(&self) -> Field {
        (**self).field()
    }
    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> BTreeMap<Degree, usize> {
        (**self).hom_dims(x, y)
    }
    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj, n: Degree) -> usize {
        (**self).hom_dim(x, y, n)
    }
    fn differential(&self, x: &Self::Obj, y: &Self::Obj, f: &Elem) -> Elem {
        (**self).differential(x, y, f)
    }
    fn compose(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        (**self).compose(x, y, z, g, f)
    }
    fn identity(&self, x: &Self::Obj) -> Elem {
        (**self).identity(x)
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Complex {
        (**self).hom(x, y)
    }
    fn describe(&self, x: &Self::Obj) -> String {
        (**self).describe(x)
    }
}

impl<T: DgCat + ?Sized> DgCat for Arc<T> {
    type Obj = T::Obj;
    fn field(&self) -> Field {
        (**self).field()
    }
    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> BTreeMap<Degree, usize> {
        (**self).hom_dims(x, y)
    }
    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj, n: Degree) -> usize {
        (**self).hom_dim(x, y, n)
    }
    fn differential(&self, x: &Self::Obj, y: &Self::Obj, f: &Elem) -> Elem {
        (**self).differential(x, y, f)
    }
    fn compose(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        (**self).compose(x, y, z, g, f)
    }
    fn identity(&self, x: &Self::Obj) -> Elem {
        (**self).identity(x)
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Complex {
        (**self).hom(x, y)
    }
    fn describe(&self, x: &Self::Obj) -> String {
        (**self).describe(x)
    }
}

impl<T: Enumerable + ?Sized> Enumerable for &T {
    fn objects(&self) -> Vec<Self::Obj> {
        (**self).objects()
    }
}

impl<T: Enumerable + ?Sized> Enumerable for Arc<T> {
    fn objects(&self) -> Vec<Self::Obj> {
        (**self).objects()
    }
}

/// All basis elements of `Hom(x, y)` in every degree.
pub fn basis_elements<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj) -> Vec<Elem> {
    let field = cat.field();
    cat.hom_dims(x, y)
        .into_iter()
        .flat_map(|(n, d)| (0..d).map(move |i| Elem::basis(field, n, d, i)))
        .collect()
}

/// Linear combination of basis-vector images.
pub fn combine(field: Field, dim: usize, coeffs: &[Scalar], images: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = field.zeros(dim);
    for (c, v) in coeffs.iter().zip(images) {
        axpy(&mut out, c, v);
    }
    out
}

/// Matrix of `g ↦ g ∘ c` from `Hom(y, z)^n` to `Hom(x, z)^{n + |c|}`.
pub fn precomposition_matrix<C: DgCat>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    z: &C::Obj,
    c: &Elem,
    n: Degree,
) -> Matrix {
    let field = cat.field();
    let dim = cat.hom_dim(y, z, n);
    let cols: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| cat.compose(x, y, z, &Elem::basis(field, n, dim, i), c).coeffs)
        .collect();
    Matrix::from_columns(field, cat.hom_dim(x, z, n + c.degree), &cols)
}

/// Matrix of `f ↦ c ∘ f` from `Hom(x, y)^n` to `Hom(x, z)^{n + |c|}`.
pub fn postcomposition_matrix<C: DgCat>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    z: &C::Obj,
    c: &Elem,
    n: Degree,
) -> Matrix {
    let field = cat.field();
    let dim = cat.hom_dim(x, y, n);
    let cols: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| cat.compose(x, y, z, c, &Elem::basis(field, n, dim, i)).coeffs)
        .collect();
    Matrix::from_columns(field, cat.hom_dim(x, z, n + c.degree), &cols)
}

/// Precomposition with a closed degree-0 `c: x -> y` as a chain map
/// `Hom(y, z) -> Hom(x, z)`.
pub fn precomposition<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, z: &C::Obj, c: &Elem) -> ChainMap {
    let source = cat.hom(y, z);
    let target = cat.hom(x, z);
    let components = source
        .support()
        .into_iter()
        .map(|n| (n, precomposition_matrix(cat, x, y, z, c, n)))
        .collect();
    ChainMap::new(source, target, c.degree, components)
}

/// Postcomposition with a closed degree-0 `c: y -> z` as a chain map
/// `Hom(x, y) -> Hom(x, z)`.
pub fn postcomposition<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, z: &C::Obj, c: &Elem) -> ChainMap {
    let source = cat.hom(x, y);
    let target = cat.hom(x, z);
    let components = source
        .support()
        .into_iter()
        .map(|n| (n, postcomposition_matrix(cat, x, y, z, c, n)))
        .collect();
    ChainMap::new(source, target, c.degree, components)
}

pub fn is_closed<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, f: &Elem) -> bool {
    cat.differential(x, y, f).is_zero()
}

/// A random combination, with coefficients in `-2..=2`, of a basis of the
/// closed elements of `Hom(x, y)^n`.
pub fn random_cycle<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, n: Degree, rng: &mut impl rand::Rng) -> Elem {
    let field = cat.field();
    let cycles = cat.hom(x, y).d(n).kernel();
    let coeffs: Vec<Scalar> = cycles.iter().map(|_| field.from_i64(rng.gen_range(-2..=2))).collect();
    Elem::new(n, combine(field, cat.hom_dim(x, y, n), &coeffs, &cycles))
}

/// A random element of `Hom(x, y)^n` with coefficients in `-2..=2`.
pub fn random_elem<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, n: Degree, rng: &mut impl rand::Rng) -> Elem {
    let field = cat.field();
    Elem::new(
        n,
        (0..cat.hom_dim(x, y, n)).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect(),
    )
}
