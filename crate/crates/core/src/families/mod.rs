//! The families monad: `T(A)` has finite ordered families of objects of `A`
//! and Hom complexes `∏_i ⊕_j Hom_A(F(i), F'(j))`.
//!
//! An element of `Hom(F, F')` is stored block by block, source index `i`
//! major and target index `j` minor, each block in the basis of `A`.

use std::collections::BTreeMap;
use std::fmt;

use crate::complexes::{Complex, Degree};
use crate::dgcat::functor::Obj;
use crate::dgcat::{DgCat, DgFunctor, Elem};
use crate::error::{Error, Result};
use crate::field::Field;

pub mod algebra;
pub mod laws;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family<O>(pub Vec<O>);

impl<O: fmt::Debug> fmt::Debug for Family<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl<O> Family<O> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn singleton(x: O) -> Family<O> {
        Family(vec![x])
    }
}

/// Admissible family lengths. `Countable` admits every finite length;
/// `Finite(n)` admits lengths below `n` and is not closed under flattening.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AlphaCutoff {
    #[default]
    Countable,
    Finite(usize),
}

impl AlphaCutoff {
    pub fn admits(&self, len: usize) -> bool {
        match *self {
            AlphaCutoff::Countable => true,
            AlphaCutoff::Finite(n) => len < n,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, AlphaCutoff::Countable)
    }

    pub fn bound(&self) -> usize {
        match *self {
            AlphaCutoff::Countable => usize::MAX,
            AlphaCutoff::Finite(n) => n,
        }
    }
}

/// `T_α(A)`, built lazily over a base category.
#[derive(Clone, Debug)]
pub struct Families<C> {
    pub base: C,
    pub cutoff: AlphaCutoff,
}

/// Position and size of block `(i, j)` inside a Hom element.
#[derive(Clone, Copy, Debug)]
pub struct Block {
    pub i: usize,
    pub j: usize,
    pub offset: usize,
    pub dim: usize,
}

pub fn t_of<C: DgCat>(base: C, cutoff: AlphaCutoff) -> Families<C> {
    Families { base, cutoff }
}

impl<C: DgCat> Families<C> {
    pub fn new(base: C) -> Families<C> {
        t_of(base, AlphaCutoff::Countable)
    }

    pub fn admit(&self, f: &Family<C::Obj>) -> Result<()> {
        if self.cutoff.admits(f.len()) {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                len: f.len(),
                bound: self.cutoff.bound(),
            })
        }
    }

    /// The Hom complex after checking both families are admissible.
    pub fn hom_checked(&self, f: &Family<C::Obj>, g: &Family<C::Obj>) -> Result<Complex> {
        self.admit(f)?;
        self.admit(g)?;
        Ok(self.hom(f, g))
    }

    pub fn blocks(&self, f: &Family<C::Obj>, g: &Family<C::Obj>, n: Degree) -> Vec<Block> {
        let mut offset = 0;
        let mut out = Vec::with_capacity(f.len() * g.len());
        for (i, x) in f.0.iter().enumerate() {
            for (j, y) in g.0.iter().enumerate() {
                let dim = self.base.hom_dim(x, y, n);
                out.push(Block { i, j, offset, dim });
                offset += dim;
            }
        }
        out
    }

    fn block_elem(e: &Elem, b: &Block) -> Elem {
        Elem::new(e.degree, e.coeffs[b.offset..b.offset + b.dim].to_vec())
    }

    /// The `(i, j)` block of `e`, an element of `Hom_A(F(i), F'(j))`.
    pub fn block(&self, f: &Family<C::Obj>, g: &Family<C::Obj>, e: &Elem, i: usize, j: usize) -> Elem {
        let b = self.blocks(f, g, e.degree)[i * g.len() + j];
        Self::block_elem(e, &b)
    }

    /// Assembles an element from its blocks, given as a function of `(i, j)`
    /// returning an element of the base or `None` for zero.
    pub fn assemble(
        &self,
        f: &Family<C::Obj>,
        g: &Family<C::Obj>,
        n: Degree,
        mut entry: impl FnMut(usize, usize) -> Option<Elem>,
    ) -> Elem {
        let blocks = self.blocks(f, g, n);
        let total = blocks.last().map_or(0, |b| b.offset + b.dim);
        let mut coeffs = self.base.field().zeros(total);
        for b in &blocks {
            if let Some(e) = entry(b.i, b.j) {
                assert_eq!(e.coeffs.len(), b.dim, "block of wrong size");
                coeffs[b.offset..b.offset + b.dim].clone_from_slice(&e.coeffs);
            }
        }
        Elem::new(n, coeffs)
    }
}

impl<C: DgCat> DgCat for Families<C> {
    type Obj = Family<C::Obj>;

    fn field(&self) -> Field {
        self.base.field()
    }

    fn hom_dims(&self, f: &Self::Obj, g: &Self::Obj) -> BTreeMap<Degree, usize> {
        let mut dims = BTreeMap::new();
        for x in &f.0 {
            for y in &g.0 {
                for (n, d) in self.base.hom_dims(x, y) {
                    *dims.entry(n).or_default() += d;
                }
            }
        }
        dims
    }

    fn hom_dim(&self, f: &Self::Obj, g: &Self::Obj, n: Degree) -> usize {
        f.0.iter()
            .flat_map(|x| g.0.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.base.hom_dim(x, y, n))
            .sum()
    }

    fn differential(&self, f: &Self::Obj, g: &Self::Obj, e: &Elem) -> Elem {
        let blocks = self.blocks(f, g, e.degree);
        self.assemble(f, g, e.degree + 1, |i, j| {
            let b = &blocks[i * g.len() + j];
            Some(self.base.differential(&f.0[i], &g.0[j], &Self::block_elem(e, b)))
        })
    }

    fn compose(&self, f: &Self::Obj, g: &Self::Obj, h: &Self::Obj, y: &Elem, x: &Elem) -> Elem {
        let xb = self.blocks(f, g, x.degree);
        let yb = self.blocks(g, h, y.degree);
        let n = x.degree + y.degree;
        let field = self.field();
        self.assemble(f, h, n, |i, k| {
            let mut acc = Elem::zero(field, n, self.base.hom_dim(&f.0[i], &h.0[k], n));
            for j in 0..g.len() {
                let a = &xb[i * g.len() + j];
                let b = &yb[j * h.len() + k];
                if a.dim == 0 || b.dim == 0 {
                    continue;
                }
                let (xa, yb) = (Self::block_elem(x, a), Self::block_elem(y, b));
                if xa.is_zero() || yb.is_zero() {
                    continue;
                }
                acc = acc.add(&self.base.compose(&f.0[i], &g.0[j], &h.0[k], &yb, &xa));
            }
            Some(acc)
        })
    }

    fn identity(&self, f: &Self::Obj) -> Elem {
        self.assemble(f, f, 0, |i, j| (i == j).then(|| self.base.identity(&f.0[i])))
    }

    fn describe(&self, f: &Self::Obj) -> String {
        let parts: Vec<String> = f.0.iter().map(|x| self.base.describe(x)).collect();
        format!("({})", parts.join(","))
    }
}

/// `η: A -> T(A)`, `X ↦ (X)`.
pub struct Eta<C> {
    pub source: C,
    pub target: Families<C>,
}

pub fn eta<C: DgCat + Clone>(a: C) -> Eta<C> {
    Eta {
        target: Families::new(a.clone()),
        source: a,
    }
}

impl<C: DgCat> DgFunctor for Eta<C> {
    type Source = C;
    type Target = Families<C>;
    fn source(&self) -> &C {
        &self.source
    }
    fn target(&self) -> &Families<C> {
        &self.target
    }
    fn map_obj(&self, x: &C::Obj) -> Family<C::Obj> {
        Family::singleton(x.clone())
    }
    fn map_elem(&self, _: &C::Obj, _: &C::Obj, f: &Elem) -> Elem {
        f.clone()
    }
}

/// How a family of families is flattened: the list of `(outer, inner)`
/// positions making up the result.
pub trait Flattening: Send + Sync {
    fn positions(&self, lens: &[usize]) -> Vec<(usize, usize)>;
}

/// Concatenation, the finite ordinal sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Concatenation;

impl Flattening for Concatenation {
    fn positions(&self, lens: &[usize]) -> Vec<(usize, usize)> {
        lens.iter()
            .enumerate()
            .flat_map(|(a, &l)| (0..l).map(move |i| (a, i)))
            .collect()
    }
}

/// `μ: T(T(A)) -> T(A)`.
pub struct Mu<C, Fl = Concatenation> {
    pub source: Families<Families<C>>,
    pub target: Families<C>,
    pub flattening: Fl,
}

pub fn mu<C: DgCat + Clone>(a: C, cutoff: AlphaCutoff) -> Mu<C> {
    mu_with(a, cutoff, Concatenation)
}

pub fn mu_with<C: DgCat + Clone, Fl: Flattening>(a: C, cutoff: AlphaCutoff, flattening: Fl) -> Mu<C, Fl> {
    let target = t_of(a, cutoff);
    Mu {
        source: t_of(target.clone(), cutoff),
        target,
        flattening,
    }
}

impl<C: DgCat, Fl: Flattening> Mu<C, Fl> {
    fn positions(&self, x: &Family<Family<C::Obj>>) -> Vec<(usize, usize)> {
        let lens: Vec<usize> = x.0.iter().map(Family::len).collect();
        self.flattening.positions(&lens)
    }

    /// The flattened family, or the regularity failure when it exceeds the
    /// cutoff.
    pub fn try_map_obj(&self, x: &Family<Family<C::Obj>>) -> Result<Family<C::Obj>> {
        let out = self.map_obj(x);
        if self.target.cutoff.admits(out.len()) {
            Ok(out)
        } else {
            Err(Error::RegularityOverflow {
                len: out.len(),
                bound: self.target.cutoff.bound(),
            })
        }
    }
}

impl<C: DgCat, Fl: Flattening> DgFunctor for Mu<C, Fl> {
    type Source = Families<Families<C>>;
    type Target = Families<C>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Families<C> {
        &self.target
    }

    fn map_obj(&self, x: &Family<Family<C::Obj>>) -> Family<C::Obj> {
        Family(
            self.positions(x)
                .into_iter()
                .map(|(a, i)| x.0[a].0[i].clone())
                .collect(),
        )
    }

    fn map_elem(&self, x: &Family<Family<C::Obj>>, y: &Family<Family<C::Obj>>, e: &Elem) -> Elem {
        let (px, py) = (self.positions(x), self.positions(y));
        let (fx, fy) = (self.map_obj(x), self.map_obj(y));
        let outer = self.source.blocks(x, y, e.degree);
        let inner: Vec<Vec<Block>> = outer
            .iter()
            .map(|b| self.target.blocks(&x.0[b.i], &y.0[b.j], e.degree))
            .collect();
        self.target.assemble(&fx, &fy, e.degree, |p, q| {
            let ((a, i), (b, j)) = (px[p], py[q]);
            let k = a * y.len() + b;
            let ob = &outer[k];
            let ib = &inner[k][i * y.0[b].len() + j];
            let start = ob.offset + ib.offset;
            Some(Elem::new(e.degree, e.coeffs[start..start + ib.dim].to_vec()))
        })
    }
}

/// `T(G): T(A) -> T(B)`, applying `G` entrywise.
pub struct TMap<G: DgFunctor> {
    pub functor: G,
    pub source: Families<G::Source>,
    pub target: Families<G::Target>,
}

pub fn t_map<G>(functor: G, cutoff: AlphaCutoff) -> TMap<G>
where
    G: DgFunctor,
    G::Source: Clone,
    G::Target: Clone,
{
    TMap {
        source: t_of(functor.source().clone(), cutoff),
        target: t_of(functor.target().clone(), cutoff),
        functor,
    }
}

impl<G: DgFunctor> DgFunctor for TMap<G> {
    type Source = Families<G::Source>;
    type Target = Families<G::Target>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn map_obj(&self, x: &Family<Obj<G::Source>>) -> Family<Obj<G::Target>> {
        Family(x.0.iter().map(|o| self.functor.map_obj(o)).collect())
    }

    fn map_elem(&self, x: &Family<Obj<G::Source>>, y: &Family<Obj<G::Source>>, e: &Elem) -> Elem {
        let blocks = self.source.blocks(x, y, e.degree);
        let (fx, fy) = (self.map_obj(x), self.map_obj(y));
        self.target.assemble(&fx, &fy, e.degree, |i, j| {
            let b = &blocks[i * y.len() + j];
            let part = Elem::new(e.degree, e.coeffs[b.offset..b.offset + b.dim].to_vec());
            Some(self.functor.map_elem(&x.0[i], &y.0[j], &part))
        })
    }
}
