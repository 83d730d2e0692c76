//! The path category `P(B)`: closed degree-0 maps of `B` that are
//! invertible in `H⁰(B)`, with homotopy pull-back Hom complexes.
//!
//! A morphism `(f: X -> Y) -> (f': X' -> Y')` of degree `n` is a triple
//! `(m_X, m_Y, h)` with `m_X ∈ Hom(X, X')^n`, `m_Y ∈ Hom(Y, Y')^n` and
//! `h ∈ Hom(X, Y')^{n-1}`, stored in that order. The differential is
//! `(d m_X, d m_Y, -d h + m_Y f - f' m_X)` and composition is
//! `(m'_X m_X, m'_Y m_Y, h' m_X + (-1)^{n'} m'_Y h)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::json;

use crate::complexes::Degree;
use crate::dgcat::functor::{functor_difference, Obj};
use crate::dgcat::h0::is_h0_invertible;
use crate::dgcat::predicates::{is_fibration, is_quasi_equivalence};
use crate::dgcat::product::{Diagonal, Product, ToTerminal};
use crate::dgcat::{
    materialize, precomposition, random_cycle, random_elem, DgCat, DgFunctor, Elem, FiniteDgCategory, TableFunctor,
};
use crate::error::{Error, Result};
use crate::exec::Sampler;
use crate::families::algebra::TAlgebra;
use crate::field::Field;
use crate::lattice::Lattice;
use crate::report::{Check, Report, Tally};
use crate::twisted::generators::diagonal;
use crate::twisted::pretriangulated::corepresentability_defects;
use crate::twisted::{TwObj, Twisted};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PathObj<O> {
    pub source: O,
    pub target: O,
    pub map: Elem,
}

impl<O: fmt::Debug> fmt::Debug for PathObj<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.map.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{:?} -[{}]-> {:?}", self.source, coeffs.join(","), self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMorphism {
    pub mx: Elem,
    pub my: Elem,
    pub h: Elem,
}

impl PathMorphism {
    pub fn degree(&self) -> Degree {
        self.mx.degree
    }
}

#[derive(Clone, Debug)]
pub struct PathCategory<B> {
    pub base: B,
}

impl<B: DgCat> PathCategory<B> {
    pub fn new(base: B) -> PathCategory<B> {
        PathCategory { base }
    }

    /// The object `f: x -> y`, provided `f` is closed of degree 0 and
    /// invertible in `H⁰`.
    pub fn object(&self, x: B::Obj, y: B::Obj, f: Elem) -> Result<PathObj<B::Obj>> {
        if !is_h0_invertible(&self.base, &x, &y, &f)? {
            return Err(Error::Ineligible(format!(
                "map {} -> {} is not invertible in H0",
                self.base.describe(&x),
                self.base.describe(&y)
            )));
        }
        Ok(PathObj { source: x, target: y, map: f })
    }

    pub fn identity_object(&self, x: &B::Obj) -> PathObj<B::Obj> {
        PathObj {
            source: x.clone(),
            target: x.clone(),
            map: self.base.identity(x),
        }
    }

    pub fn split(&self, p: &PathObj<B::Obj>, q: &PathObj<B::Obj>, e: &Elem) -> PathMorphism {
        let n = e.degree;
        let k1 = self.base.hom_dim(&p.source, &q.source, n);
        let k2 = self.base.hom_dim(&p.target, &q.target, n);
        PathMorphism {
            mx: Elem::new(n, e.coeffs[..k1].to_vec()),
            my: Elem::new(n, e.coeffs[k1..k1 + k2].to_vec()),
            h: Elem::new(n - 1, e.coeffs[k1 + k2..].to_vec()),
        }
    }

    pub fn join(m: &PathMorphism) -> Elem {
        let mut coeffs = m.mx.coeffs.clone();
        coeffs.extend(m.my.coeffs.iter().cloned());
        coeffs.extend(m.h.coeffs.iter().cloned());
        Elem::new(m.mx.degree, coeffs)
    }

    pub fn zero_h(&self, p: &PathObj<B::Obj>, q: &PathObj<B::Obj>, n: Degree) -> Elem {
        Elem::zero(self.base.field(), n - 1, self.base.hom_dim(&p.source, &q.target, n - 1))
    }

    pub fn differential_path(&self, p: &PathObj<B::Obj>, q: &PathObj<B::Obj>, a: &PathMorphism) -> PathMorphism {
        let b = &self.base;
        let (x, y, x1, y1) = (&p.source, &p.target, &q.source, &q.target);
        let h = b
            .differential(x, y1, &a.h)
            .neg()
            .add(&b.compose(x, y, y1, &a.my, &p.map))
            .sub(&b.compose(x, x1, y1, &q.map, &a.mx));
        PathMorphism {
            mx: b.differential(x, x1, &a.mx),
            my: b.differential(y, y1, &a.my),
            h,
        }
    }

    /// `b ∘ a` for `a: p -> q` and `b: q -> r`.
    pub fn compose_path(
        &self,
        p: &PathObj<B::Obj>,
        q: &PathObj<B::Obj>,
        r: &PathObj<B::Obj>,
        b: &PathMorphism,
        a: &PathMorphism,
    ) -> PathMorphism {
        let base = &self.base;
        let h = base
            .compose(&p.source, &q.source, &r.target, &b.h, &a.mx)
            .add(&base.compose(&p.source, &q.target, &r.target, &b.my, &a.h).signed(b.degree() as i64));
        PathMorphism {
            mx: base.compose(&p.source, &q.source, &r.source, &b.mx, &a.mx),
            my: base.compose(&p.target, &q.target, &r.target, &b.my, &a.my),
            h,
        }
    }
}

impl<B: DgCat> DgCat for PathCategory<B> {
    type Obj = PathObj<B::Obj>;

    fn field(&self) -> Field {
        self.base.field()
    }

    fn hom_dims(&self, p: &Self::Obj, q: &Self::Obj) -> BTreeMap<Degree, usize> {
        let mut dims = self.base.hom_dims(&p.source, &q.source);
        for (n, d) in self.base.hom_dims(&p.target, &q.target) {
            *dims.entry(n).or_default() += d;
        }
        for (n, d) in self.base.hom_dims(&p.source, &q.target) {
            *dims.entry(n + 1).or_default() += d;
        }
        dims.retain(|_, d| *d > 0);
        dims
    }

    fn hom_dim(&self, p: &Self::Obj, q: &Self::Obj, n: Degree) -> usize {
        self.base.hom_dim(&p.source, &q.source, n)
            + self.base.hom_dim(&p.target, &q.target, n)
            + self.base.hom_dim(&p.source, &q.target, n - 1)
    }

    fn differential(&self, p: &Self::Obj, q: &Self::Obj, e: &Elem) -> Elem {
        Self::join(&self.differential_path(p, q, &self.split(p, q, e)))
    }

    fn compose(&self, p: &Self::Obj, q: &Self::Obj, r: &Self::Obj, g: &Elem, f: &Elem) -> Elem {
        let (a, b) = (self.split(p, q, f), self.split(q, r, g));
        Self::join(&self.compose_path(p, q, r, &b, &a))
    }

    fn identity(&self, p: &Self::Obj) -> Elem {
        Self::join(&PathMorphism {
            mx: self.base.identity(&p.source),
            my: self.base.identity(&p.target),
            h: self.zero_h(p, p, 0),
        })
    }

    fn describe(&self, p: &Self::Obj) -> String {
        let coeffs: Vec<String> = p.map.coeffs.iter().map(|c| c.to_string()).collect();
        format!(
            "{} -[{}]-> {}",
            self.base.describe(&p.source),
            coeffs.join(","),
            self.base.describe(&p.target)
        )
    }
}

/// `i_B: B -> P(B)`, `x ↦ id_x`, `m ↦ (m, m, 0)`.
pub struct PathUnit<B> {
    pub base: B,
    pub path: PathCategory<B>,
}

impl<B: DgCat + Clone> PathUnit<B> {
    pub fn new(base: B) -> PathUnit<B> {
        PathUnit {
            path: PathCategory::new(base.clone()),
            base,
        }
    }
}

impl<B: DgCat> DgFunctor for PathUnit<B> {
    type Source = B;
    type Target = PathCategory<B>;
    fn source(&self) -> &B {
        &self.base
    }
    fn target(&self) -> &PathCategory<B> {
        &self.path
    }
    fn map_obj(&self, x: &B::Obj) -> PathObj<B::Obj> {
        self.path.identity_object(x)
    }
    fn map_elem(&self, x: &B::Obj, y: &B::Obj, m: &Elem) -> Elem {
        let (px, py) = (self.map_obj(x), self.map_obj(y));
        PathCategory::<B>::join(&PathMorphism {
            mx: m.clone(),
            my: m.clone(),
            h: self.path.zero_h(&px, &py, m.degree),
        })
    }
}

/// `q_B: P(B) -> B × B`, `(f: x -> y) ↦ (x, y)`.
pub struct PathEnds<B> {
    pub path: PathCategory<B>,
    pub product: Product<B, B>,
}

impl<B: DgCat + Clone> PathEnds<B> {
    pub fn new(base: B) -> PathEnds<B> {
        PathEnds {
            path: PathCategory::new(base.clone()),
            product: Product::new(base.clone(), base),
        }
    }
}

impl<B: DgCat> DgFunctor for PathEnds<B> {
    type Source = PathCategory<B>;
    type Target = Product<B, B>;
    fn source(&self) -> &PathCategory<B> {
        &self.path
    }
    fn target(&self) -> &Product<B, B> {
        &self.product
    }
    fn map_obj(&self, p: &PathObj<B::Obj>) -> (B::Obj, B::Obj) {
        (p.source.clone(), p.target.clone())
    }
    fn map_elem(&self, p: &PathObj<B::Obj>, q: &PathObj<B::Obj>, e: &Elem) -> Elem {
        let m = self.path.split(p, q, e);
        Product::<B, B>::pair(m.mx, m.my)
    }
}

/// Identities first, then every `H⁰`-invertible lattice combination of a
/// basis of closed degree-0 maps, without repetitions.
pub fn path_objects<C: DgCat>(base: &C, objects: &[C::Obj], lattice: &Lattice) -> Vec<PathObj<C::Obj>> {
    let field = base.field();
    let mut out: Vec<PathObj<C::Obj>> = objects
        .iter()
        .map(|x| PathObj {
            source: x.clone(),
            target: x.clone(),
            map: base.identity(x),
        })
        .collect();
    for x in objects {
        for y in objects {
            let cycles = base.hom(x, y).d(0).kernel();
            let offset = field.zeros(base.hom_dim(x, y, 0));
            for v in lattice.points(field, &offset, &cycles) {
                let f = Elem::new(0, v);
                if !is_h0_invertible(base, x, y, &f).unwrap_or(false) {
                    continue;
                }
                let p = PathObj {
                    source: x.clone(),
                    target: y.clone(),
                    map: f,
                };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `B --i--> P(B) --q--> B × B` with `P(B)` written down on the lattice
/// representatives of its objects.
pub struct PathFactorization {
    pub base: Arc<FiniteDgCategory>,
    pub objects: Vec<PathObj<usize>>,
    pub path: Arc<FiniteDgCategory>,
    pub i: TableFunctor<Arc<FiniteDgCategory>>,
    pub q: TableFunctor<Product<Arc<FiniteDgCategory>, Arc<FiniteDgCategory>>>,
}

pub fn build_path(base: Arc<FiniteDgCategory>, lattice: &Lattice) -> PathFactorization {
    let objs: Vec<usize> = (0..base.len()).collect();
    let objects = path_objects(&base, &objs, lattice);
    let generic = PathCategory::new(base.clone());
    let path = Arc::new(materialize(&generic, &objects));
    let unit = PathUnit::new(base.clone());
    let i = TableFunctor::from_fn(base.clone(), path.clone(), objs.clone(), |x, y, e| unit.map_elem(&x, &y, e));
    let ends = PathEnds::new(base.clone());
    let q = TableFunctor::from_fn(
        path.clone(),
        ends.product.clone(),
        objects.iter().map(|p| (p.source, p.target)).collect(),
        |a, b, e| ends.map_elem(&objects[a], &objects[b], e),
    );
    PathFactorization {
        base,
        objects,
        path,
        i,
        q,
    }
}

/// `q ∘ i = Δ` exactly, `i` a quasi-equivalence, `q` and `B -> pt`
/// fibrations.
pub fn factorization_report(fact: &PathFactorization, lattice: &Lattice) -> Report {
    let mut report = Report::new();
    let objs: Vec<usize> = (0..fact.base.len()).collect();
    let qi = fact.i.then(&fact.q);
    let delta = Diagonal::new((*fact.base).clone());
    report.push(match functor_difference(&qi, &delta, &objs) {
        None => Check::pass("q-after-i-is-diagonal", format!("{} objects", objs.len())),
        Some(d) => Check::fail("q-after-i-is-diagonal", d, json!(null)),
    });
    report.extend(is_quasi_equivalence(&fact.i, lattice).prefixed("i"));
    report.extend(is_fibration(&fact.q, lattice).prefixed("q"));
    report.extend(is_fibration(&ToTerminal::new(fact.base.clone()), lattice).prefixed("terminal"));
    report
}

/// Sampled degree-0 triples between path objects, half of them cycles: the
/// differential vanishes exactly when `m_X`, `m_Y` are closed and
/// `d(h) = m_Y f - f' m_X`.
pub fn check_cycle_law<B: DgCat>(path: &PathCategory<B>, pool: &[PathObj<B::Obj>], sampler: &Sampler) -> Report {
    let base = &path.base;
    let results = sampler.run("cycle-law", |i, rng| {
        let mut t = Tally::new();
        let p = &pool[rng.gen_range(0..pool.len())];
        let q = &pool[rng.gen_range(0..pool.len())];
        let e = if i % 2 == 0 {
            random_cycle(path, p, q, 0, rng)
        } else {
            random_elem(path, p, q, 0, rng)
        };
        let m = path.split(p, q, &e);
        let closed = path.differential(p, q, &e).is_zero();
        let rhs = base
            .compose(&p.source, &p.target, &q.target, &m.my, &p.map)
            .sub(&base.compose(&p.source, &q.source, &q.target, &q.map, &m.mx));
        let formula = base.differential(&p.source, &q.source, &m.mx).is_zero()
            && base.differential(&p.target, &q.target, &m.my).is_zero()
            && base.differential(&p.source, &q.target, &m.h) == rhs;
        t.record(
            "cycle-law",
            closed == formula,
            || format!("{} -> {}", path.describe(p), path.describe(q)),
            || json!({"element": e.to_json(), "closed": closed, "formula": formula}),
        );
        t
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}

/// Componentwise sums on `P(A)`: the sum of `f_i: x_i -> y_i` is the
/// cotuple `Σ x_i -> Σ y_i` of the `ι_i f_i`, injections carry `h = 0`.
pub struct PathAlgebra<A: TAlgebra> {
    pub alg: A,
    pub carrier: PathCategory<A::Carrier>,
}

pub fn path_algebra_structure<A>(alg: A) -> PathAlgebra<A>
where
    A: TAlgebra,
    A::Carrier: Clone,
{
    PathAlgebra {
        carrier: PathCategory::new(alg.carrier().clone()),
        alg,
    }
}

type Ends<O> = (Vec<O>, Vec<O>);

impl<A: TAlgebra> PathAlgebra<A> {
    fn ends(family: &[PathObj<Obj<A::Carrier>>]) -> Ends<Obj<A::Carrier>> {
        family.iter().map(|p| (p.source.clone(), p.target.clone())).unzip()
    }
}

impl<A: TAlgebra> TAlgebra for PathAlgebra<A> {
    type Carrier = PathCategory<A::Carrier>;

    fn carrier(&self) -> &Self::Carrier {
        &self.carrier
    }

    fn sum_obj(&self, family: &[PathObj<Obj<A::Carrier>>]) -> PathObj<Obj<A::Carrier>> {
        let base = self.alg.carrier();
        let (xs, ys) = Self::ends(family);
        let (sx, sy) = (self.alg.sum_obj(&xs), self.alg.sum_obj(&ys));
        let components: Vec<Elem> = family
            .iter()
            .enumerate()
            .map(|(i, p)| base.compose(&p.source, &p.target, &sy, &self.alg.injection(&ys, i), &p.map))
            .collect();
        let map = self.alg.cotuple(&xs, &sy, 0, &components);
        PathObj {
            source: sx,
            target: sy,
            map,
        }
    }

    fn injection(&self, family: &[PathObj<Obj<A::Carrier>>], x: usize) -> Elem {
        let (xs, ys) = Self::ends(family);
        let sum = self.sum_obj(family);
        PathCategory::<A::Carrier>::join(&PathMorphism {
            mx: self.alg.injection(&xs, x),
            my: self.alg.injection(&ys, x),
            h: self.carrier.zero_h(&family[x], &sum, 0),
        })
    }

    fn cotuple(&self, family: &[PathObj<Obj<A::Carrier>>], z: &PathObj<Obj<A::Carrier>>, n: Degree, components: &[Elem]) -> Elem {
        let (xs, ys) = Self::ends(family);
        let parts: Vec<PathMorphism> = family
            .iter()
            .zip(components)
            .map(|(p, c)| self.carrier.split(p, z, c))
            .collect();
        let pick = |f: fn(&PathMorphism) -> &Elem| parts.iter().map(|m| f(m).clone()).collect::<Vec<_>>();
        PathCategory::<A::Carrier>::join(&PathMorphism {
            mx: self.alg.cotuple(&xs, &z.source, n, &pick(|m| &m.mx)),
            my: self.alg.cotuple(&ys, &z.target, n, &pick(|m| &m.my)),
            h: self.alg.cotuple(&xs, &z.target, n - 1, &pick(|m| &m.h)),
        })
    }
}

/// The path object `Φ: cone(m_X) -> cone(m_Y)` of a closed degree-0
/// `(m_X, m_Y, h): (f: X -> Y) -> (f': X' -> Y')`, and the inclusion of
/// `f'` into it with zero homotopy.
#[derive(Clone, Debug)]
pub struct PathCone<O> {
    pub object: PathObj<TwObj<O>>,
    pub inclusion: Elem,
}

pub fn cone_in_path<C: DgCat>(
    path: &PathCategory<Twisted<C>>,
    p: &PathObj<TwObj<C::Obj>>,
    q: &PathObj<TwObj<C::Obj>>,
    c: &Elem,
) -> Result<PathCone<C::Obj>> {
    if c.degree != 0 || !path.differential(p, q, c).is_zero() {
        return Err(Error::NotClosedDegreeZero("path morphism".into()));
    }
    let tw = &path.base;
    let m = path.split(p, q, c);
    let cx = tw.cone_obj(&p.source, &q.source, &m.mx)?;
    let cy = tw.cone_obj(&p.target, &q.target, &m.my)?;
    let (kx, ky) = (p.source.len(), p.target.len());
    let phi = tw.assemble(&cx, &cy, 0, |i, j| match (i < kx, j < ky) {
        (true, true) => Some(tw.block(&p.source, &p.target, &p.map, i, j)),
        (true, false) => Some(tw.block(&p.source, &q.target, &m.h, i, j - ky)),
        (false, false) => Some(tw.block(&q.source, &q.target, &q.map, i - kx, j - ky)),
        (false, true) => None,
    });
    let object = PathObj {
        source: cx,
        target: cy,
        map: phi,
    };
    let inclusion = PathCategory::<Twisted<C>>::join(&PathMorphism {
        mx: diagonal(tw, &q.source, &object.source, 0, kx, false),
        my: diagonal(tw, &q.target, &object.target, 0, ky, false),
        h: path.zero_h(q, &object, 0),
    });
    Ok(PathCone { object, inclusion })
}

/// The `X[1] -> Y'` blocks of `Φ`, reassembled as an element of
/// `Hom(X, Y')^{-1}`.
pub fn phi_corner<C: DgCat>(tw: &Twisted<C>, p: &PathObj<TwObj<C::Obj>>, q: &PathObj<TwObj<C::Obj>>, cone: &PathCone<C::Obj>) -> Elem {
    let ky = p.target.len();
    let o = &cone.object;
    tw.assemble(&p.source, &q.target, -1, |i, j| Some(tw.block(&o.source, &o.target, &o.map, i, ky + j)))
}

/// On sampled closed degree-0 path morphisms `c`: `Φ` is closed, its corner
/// is `h`, the cone is a path object, the inclusion is closed, and
/// `Hom_P(Φ, z)` has the homology of the shifted cone of `c^*` for
/// `z_count` sampled `z`.
pub fn check_cone_matrix<C: DgCat>(
    path: &PathCategory<Twisted<C>>,
    pool: &[PathObj<TwObj<C::Obj>>],
    z_count: usize,
    sampler: &Sampler,
) -> Report {
    let tw = &path.base;
    let results = sampler.run("cone-matrix", |_, rng| {
        let mut t = Tally::new();
        let p = &pool[rng.gen_range(0..pool.len())];
        let q = &pool[rng.gen_range(0..pool.len())];
        let c = random_cycle(path, p, q, 0, rng);
        let sample = || format!("{} => {}", path.describe(p), path.describe(q));
        let cone = match cone_in_path(path, p, q, &c) {
            Ok(k) => k,
            Err(e) => {
                t.fail("phi-closed", sample(), json!(e.to_string()));
                return t;
            }
        };
        let o = &cone.object;
        t.record(
            "phi-closed",
            tw.differential(&o.source, &o.target, &o.map).is_zero(),
            sample,
            || json!({"c": c.to_json()}),
        );
        let h = path.split(p, q, &c).h;
        t.record("phi-corner-is-h", phi_corner(tw, p, q, &cone) == h, sample, || json!({"h": h.to_json()}));
        let valid = is_h0_invertible(tw, &o.source, &o.target, &o.map).unwrap_or(false);
        t.record("phi-object", valid, sample, || json!({"phi": o.map.to_json()}));
        t.record(
            "inclusion-closed",
            path.differential(q, o, &cone.inclusion).is_zero(),
            sample,
            || json!(null),
        );
        for _ in 0..z_count {
            let z = &pool[rng.gen_range(0..pool.len())];
            let c_star = precomposition(path, p, q, z, &c);
            match corepresentability_defects(&path.hom(o, z), &c_star) {
                Ok(d) => t.record(
                    "corepresentability",
                    d.is_empty(),
                    || format!("{} against {}", sample(), path.describe(z)),
                    || json!({"defects": d}),
                ),
                Err(e) => t.fail("corepresentability", sample(), json!(e.to_string())),
            }
        }
        t
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}
