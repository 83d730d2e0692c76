//! Products and equalizers of exact structures.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::complexes::Degree;
use crate::dgcat::functor::Obj;
use crate::dgcat::product::Product;
use crate::dgcat::{DgCat, DgFunctor, Elem};
use crate::error::{Error, Result};
use crate::exact::{Carrier, Choice, ExactDgAlgebra};
use crate::families::algebra::{product_algebra, ProductAlgebra, TAlgebra};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::twisted::Twisted;

/// Componentwise choices on the product of two exact structures.
pub struct ProductExact<E1: ExactDgAlgebra, E2: ExactDgAlgebra> {
    pub left: E1,
    pub right: E2,
    pub alg: ProductAlgebra<E1::Alg, E2::Alg>,
}

pub fn product_exact<E1, E2>(left: E1, right: E2) -> ProductExact<E1, E2>
where
    E1: ExactDgAlgebra,
    E2: ExactDgAlgebra,
    E1::Alg: Clone,
    E2::Alg: Clone,
    Carrier<E1>: Clone,
    Carrier<E2>: Clone,
{
    let alg = product_algebra(left.algebra().clone(), right.algebra().clone());
    ProductExact { left, right, alg }
}

impl<E1: ExactDgAlgebra, E2: ExactDgAlgebra> ProductExact<E1, E2> {
    fn pair_shift(&self, x: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>), s: Degree) -> Result<Choice<(Obj<Carrier<E1>>, Obj<Carrier<E2>>)>> {
        let (a, b) = (self.left.shift(&x.0, s)?, self.right.shift(&x.1, s)?);
        Ok(Choice {
            object: (a.object, b.object),
            witness: Product::<Carrier<E1>, Carrier<E2>>::pair(a.witness, b.witness),
        })
    }
}

impl<E1: ExactDgAlgebra, E2: ExactDgAlgebra> ExactDgAlgebra for ProductExact<E1, E2> {
    type Alg = ProductAlgebra<E1::Alg, E2::Alg>;

    fn algebra(&self) -> &Self::Alg {
        &self.alg
    }

    fn suspension(&self, x: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>)) -> Result<Choice<(Obj<Carrier<E1>>, Obj<Carrier<E2>>)>> {
        self.pair_shift(x, 1)
    }

    fn cosuspension(&self, x: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>)) -> Result<Choice<(Obj<Carrier<E1>>, Obj<Carrier<E2>>)>> {
        self.pair_shift(x, -1)
    }

    fn cone(
        &self,
        x: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>),
        y: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>),
        f: &Elem,
    ) -> Result<Choice<(Obj<Carrier<E1>>, Obj<Carrier<E2>>)>> {
        let (f1, f2) = self.alg.carrier.split(x, y, f);
        let a = self.left.cone(&x.0, &y.0, &f1)?;
        let b = self.right.cone(&x.1, &y.1, &f2)?;
        // Witness blocks: x[1] -> C in degree -1, then y -> C in degree 0.
        let ka = self.alg.carrier.left.hom_dim(&x.0, &a.object, -1);
        let kb = self.alg.carrier.right.hom_dim(&x.1, &b.object, -1);
        let mut coeffs = a.witness.coeffs[..ka].to_vec();
        coeffs.extend_from_slice(&b.witness.coeffs[..kb]);
        coeffs.extend_from_slice(&a.witness.coeffs[ka..]);
        coeffs.extend_from_slice(&b.witness.coeffs[kb..]);
        Ok(Choice {
            object: (a.object, b.object),
            witness: Elem::new(0, coeffs),
        })
    }

    fn contains(&self, x: &(Obj<Carrier<E1>>, Obj<Carrier<E2>>)) -> Result<()> {
        self.left.contains(&x.0)?;
        self.right.contains(&x.1)
    }
}

type KernelCache<O> = RwLock<HashMap<(O, O, Degree), Arc<Matrix>>>;

/// The dg subcategory of the source of `g1, g2` on which they agree: objects
/// with `g1 x = g2 x` and, in each degree, the morphisms `a` with
/// `g1 a = g2 a`, in coordinates of a fixed kernel basis.
pub struct EqualizerCat<G1: DgFunctor, G2> {
    pub g1: G1,
    pub g2: G2,
    kernels: KernelCache<Obj<G1::Source>>,
}

impl<G1, G2> EqualizerCat<G1, G2>
where
    G1: DgFunctor,
    G2: DgFunctor<Source = G1::Source>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    pub fn new(g1: G1, g2: G2) -> EqualizerCat<G1, G2> {
        EqualizerCat {
            g1,
            g2,
            kernels: RwLock::new(HashMap::new()),
        }
    }

    pub fn ambient(&self) -> &G1::Source {
        self.g1.source()
    }

    pub fn admits(&self, x: &Obj<G1::Source>) -> bool {
        self.g1.map_obj(x) == self.g2.map_obj(x)
    }

    /// Columns: a basis of the degree-`n` equalizer inside `Hom(x, y)^n`.
    pub fn kernel(&self, x: &Obj<G1::Source>, y: &Obj<G1::Source>, n: Degree) -> Arc<Matrix> {
        let key = (x.clone(), y.clone(), n);
        if let Some(k) = self.kernels.read().expect("kernel cache").get(&key) {
            return k.clone();
        }
        let a = self.ambient();
        let field = a.field();
        let dim = a.hom_dim(x, y, n);
        let k = if !(self.admits(x) && self.admits(y)) {
            Matrix::zeros(field, dim, 0)
        } else {
            let rows = self.g1.target().hom_dim(&self.g1.map_obj(x), &self.g1.map_obj(y), n);
            let cols: Vec<_> = (0..dim)
                .map(|i| {
                    let e = Elem::basis(field, n, dim, i);
                    self.g1.map_elem(x, y, &e).sub(&self.g2.map_elem(x, y, &e)).coeffs
                })
                .collect();
            let basis = Matrix::from_columns(field, rows, &cols).kernel();
            Matrix::from_columns(field, dim, &basis)
        };
        let k = Arc::new(k);
        self.kernels.write().expect("kernel cache").insert(key, k.clone());
        k
    }

    /// The ambient element with the given equalizer coordinates.
    pub fn lift(&self, x: &Obj<G1::Source>, y: &Obj<G1::Source>, e: &Elem) -> Elem {
        Elem::new(e.degree, self.kernel(x, y, e.degree).mul_vec(&e.coeffs))
    }

    /// Equalizer coordinates of an ambient element, if it lies in the
    /// equalizer.
    pub fn restrict(&self, x: &Obj<G1::Source>, y: &Obj<G1::Source>, e: &Elem) -> Option<Elem> {
        let k = self.kernel(x, y, e.degree);
        if k.cols() == 0 {
            return e.is_zero().then(|| Elem::new(e.degree, Vec::new()));
        }
        k.solve(&e.coeffs).map(|c| Elem::new(e.degree, c))
    }

    fn restrict_or_panic(&self, x: &Obj<G1::Source>, y: &Obj<G1::Source>, e: &Elem) -> Elem {
        self.restrict(x, y, e).expect("the equalizer is closed under the operation")
    }
}

impl<G1, G2> DgCat for EqualizerCat<G1, G2>
where
    G1: DgFunctor,
    G2: DgFunctor<Source = G1::Source>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    type Obj = Obj<G1::Source>;

    fn field(&self) -> Field {
        self.ambient().field()
    }

    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> BTreeMap<Degree, usize> {
        self.ambient()
            .hom_dims(x, y)
            .into_keys()
            .map(|n| (n, self.kernel(x, y, n).cols()))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    fn differential(&self, x: &Self::Obj, y: &Self::Obj, f: &Elem) -> Elem {
        let d = self.ambient().differential(x, y, &self.lift(x, y, f));
        self.restrict_or_panic(x, y, &d)
    }

    fn compose(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        let gf = self.ambient().compose(x, y, z, &self.lift(y, z, g), &self.lift(x, y, f));
        self.restrict_or_panic(x, z, &gf)
    }

    fn identity(&self, x: &Self::Obj) -> Elem {
        self.restrict_or_panic(x, x, &self.ambient().identity(x))
    }

    fn describe(&self, x: &Self::Obj) -> String {
        self.ambient().describe(x)
    }
}

/// Sums of the source algebra, restricted to the equalizer.
pub struct EqualizerAlgebra<A, G1: DgFunctor, G2> {
    pub alg: A,
    pub cat: EqualizerCat<G1, G2>,
}

impl<A, G1, G2> TAlgebra for EqualizerAlgebra<A, G1, G2>
where
    A: TAlgebra<Carrier = G1::Source>,
    G1: DgFunctor,
    G2: DgFunctor<Source = G1::Source>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    type Carrier = EqualizerCat<G1, G2>;

    fn carrier(&self) -> &Self::Carrier {
        &self.cat
    }

    fn sum_obj(&self, family: &[Obj<G1::Source>]) -> Obj<G1::Source> {
        self.alg.sum_obj(family)
    }

    fn injection(&self, family: &[Obj<G1::Source>], x: usize) -> Elem {
        let sum = self.alg.sum_obj(family);
        self.cat.restrict_or_panic(&family[x], &sum, &self.alg.injection(family, x))
    }

    fn cotuple(&self, family: &[Obj<G1::Source>], z: &Obj<G1::Source>, n: Degree, components: &[Elem]) -> Elem {
        let lifted: Vec<Elem> = family.iter().zip(components).map(|(fx, c)| self.cat.lift(fx, z, c)).collect();
        let sum = self.alg.sum_obj(family);
        self.cat.restrict_or_panic(&sum, z, &self.alg.cotuple(family, z, n, &lifted))
    }
}

/// The equalizer of two exact morphisms `g1, g2: E -> E'`, with the choices
/// of `E`. The choices stay inside the equalizer when `g1` and `g2` preserve
/// them; when they do not, the affected choice is reported as an error.
pub struct EqualizerExact<E: ExactDgAlgebra, G1: DgFunctor, G2> {
    pub exact: E,
    pub alg: EqualizerAlgebra<E::Alg, G1, G2>,
}

pub fn equalizer_exact<E, G1, G2>(exact: E, g1: G1, g2: G2) -> EqualizerExact<E, G1, G2>
where
    E: ExactDgAlgebra,
    E::Alg: Clone,
    G1: DgFunctor<Source = Carrier<E>>,
    G2: DgFunctor<Source = Carrier<E>>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    let alg = EqualizerAlgebra {
        alg: exact.algebra().clone(),
        cat: EqualizerCat::new(g1, g2),
    };
    EqualizerExact { exact, alg }
}

impl<E, G1, G2> EqualizerExact<E, G1, G2>
where
    E: ExactDgAlgebra,
    G1: DgFunctor<Source = Carrier<E>>,
    G2: DgFunctor<Source = Carrier<E>>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    pub fn cat(&self) -> &EqualizerCat<G1, G2> {
        &self.alg.cat
    }

    fn admit(&self, what: &str, x: &Obj<Carrier<E>>) -> Result<()> {
        if self.cat().admits(x) {
            Ok(())
        } else {
            Err(Error::Ineligible(format!(
                "{what} {} leaves the equalizer",
                self.cat().describe(x)
            )))
        }
    }

    fn restricted(&self, x: &Obj<Carrier<E>>, y: &Obj<Carrier<E>>, e: &Elem) -> Result<Elem> {
        self.cat()
            .restrict(x, y, e)
            .ok_or_else(|| Error::Ineligible("witness leaves the equalizer".into()))
    }

    fn shift_choice(&self, x: &Obj<Carrier<E>>, s: Degree) -> Result<Choice<Obj<Carrier<E>>>> {
        let c = self.exact.shift(x, s)?;
        self.admit("shifted object", &c.object)?;
        // The witness x̂[s] -> ĉ is a single block of Hom(x, c)^{-s}.
        let w = self.restricted(x, &c.object, &Elem::new(-s, c.witness.coeffs))?;
        Ok(Choice {
            object: c.object,
            witness: Elem::new(0, w.coeffs),
        })
    }
}

impl<E, G1, G2> ExactDgAlgebra for EqualizerExact<E, G1, G2>
where
    E: ExactDgAlgebra,
    G1: DgFunctor<Source = Carrier<E>>,
    G2: DgFunctor<Source = Carrier<E>>,
    G2::Target: DgCat<Obj = Obj<G1::Target>>,
{
    type Alg = EqualizerAlgebra<E::Alg, G1, G2>;

    fn algebra(&self) -> &Self::Alg {
        &self.alg
    }

    fn suspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        self.shift_choice(x, 1)
    }

    fn cosuspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        self.shift_choice(x, -1)
    }

    fn cone(&self, x: &Obj<Carrier<E>>, y: &Obj<Carrier<E>>, f: &Elem) -> Result<Choice<Obj<Carrier<E>>>> {
        let cat = self.cat();
        let c = self.exact.cone(x, y, &cat.lift(x, y, f))?;
        self.admit("cone", &c.object)?;
        let tw = Twisted::new(cat.ambient());
        let cone = tw.cone_obj(&tw.yoneda(x.clone()), &tw.yoneda(y.clone()), &cat.lift(x, y, f))?;
        let blocks = tw.split(&cone, &tw.yoneda(c.object.clone()), &c.witness);
        let mut coeffs = self.restricted(x, &c.object, &blocks[0])?.coeffs;
        coeffs.extend(self.restricted(y, &c.object, &blocks[1])?.coeffs);
        Ok(Choice {
            object: c.object,
            witness: Elem::new(0, coeffs),
        })
    }

    fn contains(&self, x: &Obj<Carrier<E>>) -> Result<()> {
        self.admit("object", x)?;
        self.exact.contains(x)
    }
}
