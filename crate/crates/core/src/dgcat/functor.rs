//! Dg functors and their exact validation.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

use crate::complexes::{ChainMap, Degree};
use crate::dgcat::{basis_elements, DgCat, Elem, FiniteDgCategory};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::report::{Report, Tally};

pub type Obj<C> = <C as DgCat>::Obj;

pub trait DgFunctor: Send + Sync {
    type Source: DgCat;
    type Target: DgCat;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn map_obj(&self, x: &Obj<Self::Source>) -> Obj<Self::Target>;
    /// Image of `f: x -> y`, an element of `Hom(F x, F y)`.
    fn map_elem(&self, x: &Obj<Self::Source>, y: &Obj<Self::Source>, f: &Elem) -> Elem;

    /// The induced map `Hom(x, y) -> Hom(F x, F y)`.
    fn hom_map(&self, x: &Obj<Self::Source>, y: &Obj<Self::Source>) -> ChainMap {
        let src = self.source();
        let tgt = self.target();
        let source = src.hom(x, y);
        let (fx, fy) = (self.map_obj(x), self.map_obj(y));
        let target = tgt.hom(&fx, &fy);
        let field = src.field();
        let components = source
            .dims()
            .iter()
            .map(|(&n, &d)| {
                let cols: Vec<Vec<Scalar>> = (0..d)
                    .map(|i| self.map_elem(x, y, &Elem::basis(field, n, d, i)).coeffs)
                    .collect();
                (n, Matrix::from_columns(field, target.dim(n), &cols))
            })
            .collect();
        ChainMap::new(source, target, 0, components)
    }
}

impl<F: DgFunctor + ?Sized> DgFunctor for &F {
    type Source = F::Source;
    type Target = F::Target;
    fn source(&self) -> &Self::Source {
        (**self).source()
    }
    fn target(&self) -> &Self::Target {
        (**self).target()
    }
    fn map_obj(&self, x: &Obj<Self::Source>) -> Obj<Self::Target> {
        (**self).map_obj(x)
    }
    fn map_elem(&self, x: &Obj<Self::Source>, y: &Obj<Self::Source>, f: &Elem) -> Elem {
        (**self).map_elem(x, y, f)
    }
    fn hom_map(&self, x: &Obj<Self::Source>, y: &Obj<Self::Source>) -> ChainMap {
        (**self).hom_map(x, y)
    }
}

/// A functor out of a finite category, given by the images of objects and
/// of basis elements.
#[derive(Clone, Debug)]
pub struct TableFunctor<T: DgCat> {
    pub source: Arc<FiniteDgCategory>,
    pub target: T,
    pub obj_map: Vec<T::Obj>,
    images: HashMap<(usize, usize, Degree), Vec<Elem>>,
}

impl<T: DgCat> TableFunctor<T> {
    /// Builds the table by evaluating `image` on every basis element.
    pub fn from_fn(
        source: Arc<FiniteDgCategory>,
        target: T,
        obj_map: Vec<T::Obj>,
        mut image: impl FnMut(usize, usize, &Elem) -> Elem,
    ) -> TableFunctor<T> {
        let mut images = HashMap::new();
        let n = source.len();
        for x in 0..n {
            for y in 0..n {
                for (deg, d) in source.hom_dims(&x, &y) {
                    let field = source.field();
                    let imgs = (0..d)
                        .map(|i| image(x, y, &Elem::basis(field, deg, d, i)))
                        .collect();
                    images.insert((x, y, deg), imgs);
                }
            }
        }
        TableFunctor {
            source,
            target,
            obj_map,
            images,
        }
    }

    /// Restricts an arbitrary functor out of a finite category to a table.
    pub fn tabulate<F>(f: &F, source: Arc<FiniteDgCategory>, target: T) -> TableFunctor<T>
    where
        F: DgFunctor,
        F::Source: DgCat<Obj = usize>,
        F::Target: DgCat<Obj = T::Obj>,
    {
        let obj_map = (0..source.len()).map(|x| f.map_obj(&x)).collect();
        TableFunctor::from_fn(source, target, obj_map, |x, y, e| f.map_elem(&x, &y, e))
    }

    pub fn image(&self, x: usize, y: usize, degree: Degree, i: usize) -> &Elem {
        &self.images[&(x, y, degree)][i]
    }

    pub fn set_image(&mut self, x: usize, y: usize, degree: Degree, i: usize, e: Elem) {
        self.images.get_mut(&(x, y, degree)).expect("basis element exists")[i] = e;
    }

    /// `g ∘ self` as a table.
    pub fn then<G>(&self, g: &G) -> TableFunctor<G::Target>
    where
        G: DgFunctor,
        G::Source: DgCat<Obj = T::Obj>,
        G::Target: Clone,
    {
        let obj_map = self.obj_map.iter().map(|x| g.map_obj(x)).collect();
        TableFunctor::from_fn(self.source.clone(), g.target().clone(), obj_map, |x, y, e| {
            g.map_elem(&self.obj_map[x], &self.obj_map[y], &self.map_elem(&x, &y, e))
        })
    }
}

impl<T: DgCat> DgFunctor for TableFunctor<T> {
    type Source = FiniteDgCategory;
    type Target = T;

    fn source(&self) -> &FiniteDgCategory {
        &self.source
    }

    fn target(&self) -> &T {
        &self.target
    }

    fn map_obj(&self, x: &usize) -> T::Obj {
        self.obj_map[*x].clone()
    }

    fn map_elem(&self, x: &usize, y: &usize, f: &Elem) -> Elem {
        let (fx, fy) = (&self.obj_map[*x], &self.obj_map[*y]);
        let field = self.target.field();
        let dim = self.target.hom_dim(fx, fy, f.degree);
        let mut out = Elem::zero(field, f.degree, dim);
        if let Some(imgs) = self.images.get(&(*x, *y, f.degree)) {
            for (c, img) in f.coeffs.iter().zip(imgs) {
                if !c.is_zero() {
                    out = out.add(&img.scale(c));
                }
            }
        }
        out
    }
}

/// The identity functor of a category.
#[derive(Clone, Debug)]
pub struct Identity<C>(pub C);

impl<C: DgCat> DgFunctor for Identity<C> {
    type Source = C;
    type Target = C;
    fn source(&self) -> &C {
        &self.0
    }
    fn target(&self) -> &C {
        &self.0
    }
    fn map_obj(&self, x: &C::Obj) -> C::Obj {
        x.clone()
    }
    fn map_elem(&self, _: &C::Obj, _: &C::Obj, f: &Elem) -> Elem {
        f.clone()
    }
}

/// `G ∘ F` for functors with matching object types.
pub struct Composite<F, G> {
    pub first: F,
    pub second: G,
}

impl<F, G> DgFunctor for Composite<F, G>
where
    F: DgFunctor,
    G: DgFunctor,
    G::Source: DgCat<Obj = Obj<F::Target>>,
{
    type Source = F::Source;
    type Target = G::Target;
    fn source(&self) -> &F::Source {
        self.first.source()
    }
    fn target(&self) -> &G::Target {
        self.second.target()
    }
    fn map_obj(&self, x: &Obj<F::Source>) -> Obj<G::Target> {
        self.second.map_obj(&self.first.map_obj(x))
    }
    fn map_elem(&self, x: &Obj<F::Source>, y: &Obj<F::Source>, f: &Elem) -> Elem {
        let (fx, fy) = (self.first.map_obj(x), self.first.map_obj(y));
        self.second.map_elem(&fx, &fy, &self.first.map_elem(x, y, f))
    }
}

/// Checks that `F` is a dg functor on `objects`: degree and shape of images,
/// commutation with differentials, identities and composition of basis
/// elements.
pub fn validate_functor<F: DgFunctor>(f: &F, objects: &[Obj<F::Source>]) -> Report {
    let (a, b) = (f.source(), f.target());
    let mut tally = Tally::new();
    for x in objects {
        let fx = f.map_obj(x);
        let img = f.map_elem(x, x, &a.identity(x));
        tally.record(
            "functor-identity",
            img == b.identity(&fx),
            || a.describe(x),
            || img.to_json(),
        );
    }
    for x in objects {
        for y in objects {
            let (fx, fy) = (f.map_obj(x), f.map_obj(y));
            let fs = basis_elements(a, x, y);
            for e in &fs {
                let img = f.map_elem(x, y, e);
                let shaped = img.degree == e.degree && img.coeffs.len() == b.hom_dim(&fx, &fy, e.degree);
                tally.record(
                    "functor-shape",
                    shaped,
                    || format!("{} -> {}", a.describe(x), a.describe(y)),
                    || json!({"f": e.to_json(), "image": img.to_json()}),
                );
                if !shaped {
                    continue;
                }
                let lhs = b.differential(&fx, &fy, &img);
                let rhs = f.map_elem(x, y, &a.differential(x, y, e));
                tally.record(
                    "functor-closed",
                    lhs == rhs,
                    || format!("{} -> {}", a.describe(x), a.describe(y)),
                    || json!({"f": e.to_json(), "dF": lhs.to_json(), "Fd": rhs.to_json()}),
                );
            }
            for z in objects {
                let fz = f.map_obj(z);
                for g in basis_elements(a, y, z) {
                    let fg = f.map_elem(y, z, &g);
                    for e in &fs {
                        let lhs = f.map_elem(x, z, &a.compose(x, y, z, &g, e));
                        let rhs = b.compose(&fx, &fy, &fz, &fg, &f.map_elem(x, y, e));
                        tally.record(
                            "functor-composition",
                            lhs == rhs,
                            || format!("{} -> {} -> {}", a.describe(x), a.describe(y), a.describe(z)),
                            || json!({"g": g.to_json(), "f": e.to_json()}),
                        );
                    }
                }
            }
        }
    }
    tally.into_report()
}

/// First object or basis element of `objects` on which `f` and `g` differ.
pub fn functor_difference<F, G>(f: &F, g: &G, objects: &[Obj<F::Source>]) -> Option<String>
where
    F: DgFunctor,
    G: DgFunctor<Source = F::Source>,
    G::Target: DgCat<Obj = Obj<F::Target>>,
{
    let a = f.source();
    for x in objects {
        if f.map_obj(x) != g.map_obj(x) {
            return Some(format!("object {}", a.describe(x)));
        }
    }
    for x in objects {
        for y in objects {
            for e in basis_elements(a, x, y) {
                if f.map_elem(x, y, &e) != g.map_elem(x, y, &e) {
                    return Some(format!(
                        "basis element of degree {} in Hom({}, {})",
                        e.degree,
                        a.describe(x),
                        a.describe(y)
                    ));
                }
            }
        }
    }
    None
}

/// A borrowed functor whose source and target are themselves borrowed, so
/// that constructions needing `Clone` categories apply without copying.
pub struct ByRef<'a, G: DgFunctor> {
    functor: &'a G,
    source: &'a G::Source,
    target: &'a G::Target,
}

impl<'a, G: DgFunctor> ByRef<'a, G> {
    pub fn new(functor: &'a G) -> ByRef<'a, G> {
        ByRef {
            functor,
            source: functor.source(),
            target: functor.target(),
        }
    }
}

impl<'a, G: DgFunctor> DgFunctor for ByRef<'a, G> {
    type Source = &'a G::Source;
    type Target = &'a G::Target;
    fn source(&self) -> &Self::Source {
        &self.source
    }
    fn target(&self) -> &Self::Target {
        &self.target
    }
    fn map_obj(&self, x: &Obj<G::Source>) -> Obj<G::Target> {
        self.functor.map_obj(x)
    }
    fn map_elem(&self, x: &Obj<G::Source>, y: &Obj<G::Source>, f: &Elem) -> Elem {
        self.functor.map_elem(x, y, f)
    }
}
