//! One-sided twisted complexes over a base dg category: the closure of the
//! representables under shifts and cones inside dg modules.
//!
//! A morphism `X[s] -> Y[t]` of degree `n` is stored as an element of
//! `Hom(X, Y)^{n + t - s}` of the base. The twist entry `(j, i)` maps term
//! `i` to term `j > i` and has degree one in this sense. Hom elements are
//! stored block by block, source term major and target term minor.

use std::collections::BTreeMap;
use std::fmt;

use crate::complexes::Degree;
use crate::dgcat::functor::Obj;
use crate::dgcat::{DgCat, DgFunctor, Elem};
use crate::error::{Error, Result};
use crate::families::algebra::TAlgebra;
use crate::families::Block;
use crate::field::{Field, Scalar};

pub mod generators;
pub mod pretriangulated;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwObj<O> {
    pub terms: Vec<(O, Degree)>,
    /// Nonzero twist entries keyed by `(target term, source term)`.
    pub twist: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl<O: fmt::Debug> fmt::Debug for TwObj<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tw{:?}", self.terms)?;
        if !self.twist.is_empty() {
            write!(f, "{:?}", self.twist.keys().collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl<O> TwObj<O> {
    pub fn new(terms: Vec<(O, Degree)>, twist: BTreeMap<(usize, usize), Vec<Scalar>>) -> TwObj<O> {
        let twist = twist
            .into_iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .collect();
        TwObj { terms, twist }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift_of(&self, i: usize) -> Degree {
        self.terms[i].1
    }
}

/// The category of twisted complexes over `base`.
#[derive(Clone, Debug)]
pub struct Twisted<C> {
    pub base: C,
}

impl<C: DgCat> Twisted<C> {
    pub fn new(base: C) -> Twisted<C> {
        Twisted { base }
    }

    /// Base degree of the `(i, j)` block of a degree-`n` morphism.
    fn block_degree(m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, i: usize, j: usize, n: Degree) -> Degree {
        n + n_obj.terms[j].1 - m.terms[i].1
    }

    pub fn blocks(&self, m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, n: Degree) -> Vec<Block> {
        let mut offset = 0;
        let mut out = Vec::with_capacity(m.len() * n_obj.len());
        for (i, (x, _)) in m.terms.iter().enumerate() {
            for (j, (y, _)) in n_obj.terms.iter().enumerate() {
                let dim = self.base.hom_dim(x, y, Self::block_degree(m, n_obj, i, j, n));
                out.push(Block { i, j, offset, dim });
                offset += dim;
            }
        }
        out
    }

    /// The `(i, j)` block of `e`, an element of the base.
    pub fn block(&self, m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, e: &Elem, i: usize, j: usize) -> Elem {
        let b = self.blocks(m, n_obj, e.degree)[i * n_obj.len() + j];
        Elem::new(
            Self::block_degree(m, n_obj, i, j, e.degree),
            e.coeffs[b.offset..b.offset + b.dim].to_vec(),
        )
    }

    /// Assembles a degree-`n` morphism from base elements per block; `None`
    /// means zero.
    pub fn assemble(
        &self,
        m: &TwObj<C::Obj>,
        n_obj: &TwObj<C::Obj>,
        n: Degree,
        mut entry: impl FnMut(usize, usize) -> Option<Elem>,
    ) -> Elem {
        let blocks = self.blocks(m, n_obj, n);
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

    pub fn split(&self, m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, e: &Elem) -> Vec<Elem> {
        self.blocks(m, n_obj, e.degree)
            .iter()
            .map(|b| {
                Elem::new(
                    Self::block_degree(m, n_obj, b.i, b.j, e.degree),
                    e.coeffs[b.offset..b.offset + b.dim].to_vec(),
                )
            })
            .collect()
    }

    /// Twist entry `(j, i)` of `m` as a base element, zero when absent.
    pub fn twist_entry(&self, m: &TwObj<C::Obj>, j: usize, i: usize) -> Elem {
        let degree = 1 + m.terms[j].1 - m.terms[i].1;
        match m.twist.get(&(j, i)) {
            Some(v) => Elem::new(degree, v.clone()),
            None => Elem::zero(
                self.base.field(),
                degree,
                self.base.hom_dim(&m.terms[i].0, &m.terms[j].0, degree),
            ),
        }
    }

    /// The twist as a degree-1 endomorphism.
    pub fn twist_elem(&self, m: &TwObj<C::Obj>) -> Elem {
        self.assemble(m, m, 1, |i, j| {
            m.twist.get(&(j, i)).map(|v| Elem::new(1 + m.terms[j].1 - m.terms[i].1, v.clone()))
        })
    }

    /// Checks shapes, strict lower triangularity and the Maurer–Cartan
    /// equation `(-1)^{s_j} d δ_{ji} + Σ_l δ_{jl} δ_{li} = 0`.
    pub fn check_object(&self, m: &TwObj<C::Obj>) -> Result<()> {
        for (&(j, i), v) in &m.twist {
            if j >= m.len() || i >= j {
                return Err(Error::Precondition(format!(
                    "twist entry ({j}, {i}) is not strictly lower triangular"
                )));
            }
            let degree = 1 + m.terms[j].1 - m.terms[i].1;
            let dim = self.base.hom_dim(&m.terms[i].0, &m.terms[j].0, degree);
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "twist entry ({j}, {i}) has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
        }
        for j in 0..m.len() {
            for i in 0..j {
                let (xi, xj) = (&m.terms[i].0, &m.terms[j].0);
                let mut acc = self
                    .base
                    .differential(xi, xj, &self.twist_entry(m, j, i))
                    .signed(m.terms[j].1 as i64);
                for l in i + 1..j {
                    let xl = &m.terms[l].0;
                    let prod = self.base.compose(
                        xi,
                        xl,
                        xj,
                        &self.twist_entry(m, j, l),
                        &self.twist_entry(m, l, i),
                    );
                    acc = acc.add(&prod);
                }
                if !acc.is_zero() {
                    return Err(Error::Precondition(format!(
                        "Maurer-Cartan equation fails at entry ({j}, {i})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn yoneda(&self, x: C::Obj) -> TwObj<C::Obj> {
        TwObj::new(vec![(x, 0)], BTreeMap::new())
    }

    /// `m[s]`: shifts raised by `s`, twist multiplied by `(-1)^s`.
    pub fn shift_obj(&self, m: &TwObj<C::Obj>, s: Degree) -> TwObj<C::Obj> {
        let terms = m.terms.iter().map(|(x, t)| (x.clone(), t + s)).collect();
        let twist = m
            .twist
            .iter()
            .map(|(&k, v)| {
                let v = if s.rem_euclid(2) == 0 {
                    v.clone()
                } else {
                    v.iter().map(|c| -c).collect()
                };
                (k, v)
            })
            .collect();
        TwObj::new(terms, twist)
    }

    /// The cone of a closed degree-0 `f: m -> n`: the terms of `m[1]`
    /// followed by those of `n`, with twist `-δ_m`, `-f` and `δ_n`.
    pub fn cone_obj(&self, m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, f: &Elem) -> Result<TwObj<C::Obj>> {
        if f.degree != 0 || f.coeffs.len() != self.hom_dim(m, n_obj, 0) || !self.differential(m, n_obj, f).is_zero() {
            return Err(Error::NotClosedDegreeZero(format!(
                "cone of a morphism {} -> {}",
                self.describe(m),
                self.describe(n_obj)
            )));
        }
        let k = m.len();
        let shifted = self.shift_obj(m, 1);
        let mut terms = shifted.terms.clone();
        terms.extend(n_obj.terms.iter().cloned());
        let mut twist = shifted.twist.clone();
        for (&(j, i), v) in &n_obj.twist {
            twist.insert((j + k, i + k), v.clone());
        }
        for (b, part) in self.split(m, n_obj, f).into_iter().enumerate() {
            let (i, j) = (b / n_obj.len(), b % n_obj.len());
            twist.insert((k + j, i), part.neg().coeffs);
        }
        Ok(TwObj::new(terms, twist))
    }

    /// Concatenated terms with block-diagonal twist.
    pub fn direct_sum(&self, family: &[TwObj<C::Obj>]) -> TwObj<C::Obj> {
        let mut terms = Vec::new();
        let mut twist = BTreeMap::new();
        for m in family {
            let k = terms.len();
            terms.extend(m.terms.iter().cloned());
            for (&(j, i), v) in &m.twist {
                twist.insert((j + k, i + k), v.clone());
            }
        }
        TwObj::new(terms, twist)
    }

    fn offsets(family: &[TwObj<C::Obj>]) -> Vec<usize> {
        family
            .iter()
            .scan(0, |acc, m| {
                let o = *acc;
                *acc += m.len();
                Some(o)
            })
            .collect()
    }

    /// The canonical injection `family[x] -> ⊕ family`.
    pub fn sum_injection(&self, family: &[TwObj<C::Obj>], x: usize) -> Elem {
        let off = Self::offsets(family)[x];
        let src = &family[x];
        let sum = self.direct_sum(family);
        self.assemble(src, &sum, 0, |i, j| (j == off + i).then(|| self.base.identity(&src.terms[i].0)))
    }

    /// The canonical projection `⊕ family -> family[x]`.
    pub fn sum_projection(&self, family: &[TwObj<C::Obj>], x: usize) -> Elem {
        let off = Self::offsets(family)[x];
        let tgt = &family[x];
        let sum = self.direct_sum(family);
        self.assemble(&sum, tgt, 0, |p, j| (p == off + j).then(|| self.base.identity(&tgt.terms[j].0)))
    }

    /// The morphism out of the sum restricting to `components[x]`.
    pub fn sum_cotuple(&self, family: &[TwObj<C::Obj>], z: &TwObj<C::Obj>, n: Degree, components: &[Elem]) -> Elem {
        let sum = self.direct_sum(family);
        let owner: Vec<(usize, usize)> = family
            .iter()
            .enumerate()
            .flat_map(|(x, m)| (0..m.len()).map(move |i| (x, i)))
            .collect();
        let blocks: Vec<Vec<Elem>> = family
            .iter()
            .zip(components)
            .map(|(m, c)| self.split(m, z, c))
            .collect();
        self.assemble(&sum, z, n, |p, j| {
            let (x, i) = owner[p];
            Some(blocks[x][i * z.len() + j].clone())
        })
    }
}

impl<C: DgCat> DgCat for Twisted<C> {
    type Obj = TwObj<C::Obj>;

    fn field(&self) -> Field {
        self.base.field()
    }

    fn hom_dims(&self, m: &Self::Obj, n_obj: &Self::Obj) -> BTreeMap<Degree, usize> {
        let mut dims = BTreeMap::new();
        for (x, s) in &m.terms {
            for (y, t) in &n_obj.terms {
                for (k, d) in self.base.hom_dims(x, y) {
                    *dims.entry(k - t + s).or_default() += d;
                }
            }
        }
        dims.retain(|_, d| *d > 0);
        dims
    }

    fn hom_dim(&self, m: &Self::Obj, n_obj: &Self::Obj, n: Degree) -> usize {
        let mut total = 0;
        for (x, s) in &m.terms {
            for (y, t) in &n_obj.terms {
                total += self.base.hom_dim(x, y, n + t - s);
            }
        }
        total
    }

    fn differential(&self, m: &Self::Obj, n_obj: &Self::Obj, e: &Elem) -> Elem {
        let n = e.degree;
        let parts = self.split(m, n_obj, e);
        let (p, q) = (m.len(), n_obj.len());
        self.assemble(m, n_obj, n + 1, |i, k| {
            let (xi, yk) = (&m.terms[i].0, &n_obj.terms[k].0);
            let mut acc = self
                .base
                .differential(xi, yk, &parts[i * q + k])
                .signed(n_obj.terms[k].1 as i64);
            for j in 0..k {
                if let Some(v) = n_obj.twist.get(&(k, j)) {
                    let delta = Elem::new(1 + n_obj.terms[k].1 - n_obj.terms[j].1, v.clone());
                    acc = acc.add(&self.base.compose(xi, &n_obj.terms[j].0, yk, &delta, &parts[i * q + j]));
                }
            }
            for l in i + 1..p {
                if let Some(v) = m.twist.get(&(l, i)) {
                    let delta = Elem::new(1 + m.terms[l].1 - m.terms[i].1, v.clone());
                    let prod = self.base.compose(xi, &m.terms[l].0, yk, &parts[l * q + k], &delta);
                    acc = acc.sub(&prod.signed(n as i64));
                }
            }
            Some(acc)
        })
    }

    fn compose(&self, m: &Self::Obj, n_obj: &Self::Obj, o: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        let fp = self.split(m, n_obj, f);
        let gp = self.split(n_obj, o, g);
        let (q, r) = (n_obj.len(), o.len());
        let deg = f.degree + g.degree;
        let field = self.field();
        self.assemble(m, o, deg, |i, k| {
            let (xi, zk) = (&m.terms[i].0, &o.terms[k].0);
            let bdeg = deg + o.terms[k].1 - m.terms[i].1;
            let mut acc = Elem::zero(field, bdeg, self.base.hom_dim(xi, zk, bdeg));
            for j in 0..q {
                let (a, b) = (&fp[i * q + j], &gp[j * r + k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&self.base.compose(xi, &n_obj.terms[j].0, zk, b, a));
            }
            Some(acc)
        })
    }

    fn identity(&self, m: &Self::Obj) -> Elem {
        self.assemble(m, m, 0, |i, j| (i == j).then(|| self.base.identity(&m.terms[i].0)))
    }

    fn describe(&self, m: &Self::Obj) -> String {
        let terms: Vec<String> = m
            .terms
            .iter()
            .map(|(x, s)| {
                let name = self.base.describe(x);
                if *s == 0 {
                    name
                } else {
                    format!("{name}[{s}]")
                }
            })
            .collect();
        let body = terms.join(" + ");
        if m.twist.is_empty() {
            if m.len() == 1 {
                body
            } else {
                format!("({body})")
            }
        } else {
            let entries: Vec<String> = m
                .twist
                .iter()
                .map(|((j, i), v)| {
                    let cs: Vec<String> = v.iter().map(Scalar::to_canonical_string).collect();
                    format!("{i}>{j}:{}", cs.join(","))
                })
                .collect();
            format!("({body} | {})", entries.join(" "))
        }
    }
}

/// Chosen sums in the twisted model.
#[derive(Clone, Debug)]
pub struct TwistedSums<C> {
    pub carrier: Twisted<C>,
}

impl<C: DgCat> TAlgebra for TwistedSums<C> {
    type Carrier = Twisted<C>;

    fn carrier(&self) -> &Twisted<C> {
        &self.carrier
    }

    fn sum_obj(&self, family: &[TwObj<C::Obj>]) -> TwObj<C::Obj> {
        self.carrier.direct_sum(family)
    }

    fn injection(&self, family: &[TwObj<C::Obj>], x: usize) -> Elem {
        self.carrier.sum_injection(family, x)
    }

    fn cotuple(&self, family: &[TwObj<C::Obj>], z: &TwObj<C::Obj>, n: Degree, components: &[Elem]) -> Elem {
        self.carrier.sum_cotuple(family, z, n, components)
    }
}

/// `Tw(G)`: a dg functor applied termwise and to every twist entry.
pub struct TwMap<G: DgFunctor> {
    pub functor: G,
    pub source: Twisted<G::Source>,
    pub target: Twisted<G::Target>,
}

pub fn tw_map<G>(functor: G) -> TwMap<G>
where
    G: DgFunctor,
    G::Source: Clone,
    G::Target: Clone,
{
    TwMap {
        source: Twisted::new(functor.source().clone()),
        target: Twisted::new(functor.target().clone()),
        functor,
    }
}

impl<G: DgFunctor> DgFunctor for TwMap<G> {
    type Source = Twisted<G::Source>;
    type Target = Twisted<G::Target>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn map_obj(&self, m: &TwObj<Obj<G::Source>>) -> TwObj<Obj<G::Target>> {
        let terms = m.terms.iter().map(|(x, s)| (self.functor.map_obj(x), *s)).collect();
        let twist = m
            .twist
            .iter()
            .map(|(&(j, i), v)| {
                let e = Elem::new(1 + m.terms[j].1 - m.terms[i].1, v.clone());
                (
                    (j, i),
                    self.functor.map_elem(&m.terms[i].0, &m.terms[j].0, &e).coeffs,
                )
            })
            .collect();
        TwObj::new(terms, twist)
    }

    fn map_elem(&self, m: &TwObj<Obj<G::Source>>, n_obj: &TwObj<Obj<G::Source>>, e: &Elem) -> Elem {
        let parts = self.source.split(m, n_obj, e);
        let (fm, fn_) = (self.map_obj(m), self.map_obj(n_obj));
        let q = n_obj.len();
        self.target.assemble(&fm, &fn_, e.degree, |i, j| {
            Some(self.functor.map_elem(&m.terms[i].0, &n_obj.terms[j].0, &parts[i * q + j]))
        })
    }
}
