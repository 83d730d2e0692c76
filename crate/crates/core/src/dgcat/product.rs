//! Binary products, the terminal category and the diagonal.

use std::collections::BTreeMap;

use crate::complexes::Degree;
use crate::dgcat::{DgCat, DgFunctor, Elem, Enumerable, FiniteDgCategory};
use crate::field::Field;

/// `A × B`: pairs of objects, Hom complexes `Hom_A ⊕ Hom_B` with the
/// `A`-coordinates first.
#[derive(Clone, Debug)]
pub struct Product<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: DgCat, B: DgCat> Product<A, B> {
    pub fn new(left: A, right: B) -> Product<A, B> {
        assert_eq!(left.field(), right.field(), "product of categories over different fields");
        Product { left, right }
    }

    pub fn split(&self, x: &(A::Obj, B::Obj), y: &(A::Obj, B::Obj), e: &Elem) -> (Elem, Elem) {
        let k = self.left.hom_dim(&x.0, &y.0, e.degree);
        (
            Elem::new(e.degree, e.coeffs[..k].to_vec()),
            Elem::new(e.degree, e.coeffs[k..].to_vec()),
        )
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        assert_eq!(a.degree, b.degree);
        let mut coeffs = a.coeffs;
        coeffs.extend(b.coeffs);
        Elem::new(a.degree, coeffs)
    }
}

impl<A: DgCat, B: DgCat> DgCat for Product<A, B> {
    type Obj = (A::Obj, B::Obj);

    fn field(&self) -> Field {
        self.left.field()
    }

    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> BTreeMap<Degree, usize> {
        let mut dims = self.left.hom_dims(&x.0, &y.0);
        for (n, d) in self.right.hom_dims(&x.1, &y.1) {
            *dims.entry(n).or_default() += d;
        }
        dims
    }

    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj, n: Degree) -> usize {
        self.left.hom_dim(&x.0, &y.0, n) + self.right.hom_dim(&x.1, &y.1, n)
    }

    fn differential(&self, x: &Self::Obj, y: &Self::Obj, f: &Elem) -> Elem {
        let (a, b) = self.split(x, y, f);
        Self::pair(
            self.left.differential(&x.0, &y.0, &a),
            self.right.differential(&x.1, &y.1, &b),
        )
    }

    fn compose(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        let (ga, gb) = self.split(y, z, g);
        let (fa, fb) = self.split(x, y, f);
        Self::pair(
            self.left.compose(&x.0, &y.0, &z.0, &ga, &fa),
            self.right.compose(&x.1, &y.1, &z.1, &gb, &fb),
        )
    }

    fn identity(&self, x: &Self::Obj) -> Elem {
        Self::pair(self.left.identity(&x.0), self.right.identity(&x.1))
    }

    fn describe(&self, x: &Self::Obj) -> String {
        format!("({}, {})", self.left.describe(&x.0), self.right.describe(&x.1))
    }
}

impl<A: Enumerable, B: Enumerable> Enumerable for Product<A, B> {
    fn objects(&self) -> Vec<Self::Obj> {
        let rs = self.right.objects();
        self.left
            .objects()
            .into_iter()
            .flat_map(|a| rs.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }
}

/// `Δ: A -> A × A`.
pub struct Diagonal<A> {
    pub source: A,
    pub target: Product<A, A>,
}

impl<A: DgCat + Clone> Diagonal<A> {
    pub fn new(a: A) -> Diagonal<A> {
        Diagonal {
            target: Product::new(a.clone(), a.clone()),
            source: a,
        }
    }
}

impl<A: DgCat> DgFunctor for Diagonal<A> {
    type Source = A;
    type Target = Product<A, A>;
    fn source(&self) -> &A {
        &self.source
    }
    fn target(&self) -> &Product<A, A> {
        &self.target
    }
    fn map_obj(&self, x: &A::Obj) -> (A::Obj, A::Obj) {
        (x.clone(), x.clone())
    }
    fn map_elem(&self, _: &A::Obj, _: &A::Obj, f: &Elem) -> Elem {
        Product::<A, A>::pair(f.clone(), f.clone())
    }
}

/// One of the two projections `A × A -> A`.
pub struct Projection<'a, A> {
    pub product: &'a Product<A, A>,
    pub first: bool,
}

impl<'a, A: DgCat> DgFunctor for Projection<'a, A> {
    type Source = Product<A, A>;
    type Target = A;
    fn source(&self) -> &Product<A, A> {
        self.product
    }
    fn target(&self) -> &A {
        &self.product.left
    }
    fn map_obj(&self, x: &(A::Obj, A::Obj)) -> A::Obj {
        if self.first {
            x.0.clone()
        } else {
            x.1.clone()
        }
    }
    fn map_elem(&self, x: &(A::Obj, A::Obj), y: &(A::Obj, A::Obj), f: &Elem) -> Elem {
        let (a, b) = self.product.split(x, y, f);
        if self.first {
            a
        } else {
            b
        }
    }
}

/// The unique functor to the terminal category.
pub struct ToTerminal<A> {
    pub source: A,
    pub terminal: FiniteDgCategory,
}

impl<A: DgCat> ToTerminal<A> {
    pub fn new(source: A) -> ToTerminal<A> {
        let terminal = FiniteDgCategory::terminal(source.field());
        ToTerminal { source, terminal }
    }
}

impl<A: DgCat> DgFunctor for ToTerminal<A> {
    type Source = A;
    type Target = FiniteDgCategory;
    fn source(&self) -> &A {
        &self.source
    }
    fn target(&self) -> &FiniteDgCategory {
        &self.terminal
    }
    fn map_obj(&self, _: &A::Obj) -> usize {
        0
    }
    fn map_elem(&self, _: &A::Obj, _: &A::Obj, f: &Elem) -> Elem {
        Elem::new(f.degree, Vec::new())
    }
}
