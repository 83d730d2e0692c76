//! Exact structures: an algebra together with chosen suspensions,
//! cosuspensions and cones, each tied to the twisted-complex construction by
//! a strict isomorphism.
//!
//! Witnesses live in the twisted complexes over the carrier:
//! a suspension witness is a closed degree-0 `x̂[1] -> (Σx)̂`, a cosuspension
//! witness a closed degree-0 `x̂[-1] -> (Σ⁻¹x)̂`, and a cone witness a closed
//! degree-0 `cone(f̂) -> (Cf)̂`.

pub mod completion;
pub mod limits;
pub mod path;
pub mod transfer;

use serde_json::json;

use crate::complexes::Degree;
use crate::dgcat::functor::{functor_difference, validate_functor, ByRef, Obj};
use crate::dgcat::h0::strict_inverse;
use crate::dgcat::{DgCat, DgFunctor, Elem};
use crate::error::{Error, Result};
use crate::exec::Sampler;
use crate::families::algebra::{check_algebra, check_algebra_morphism, TAlgebra};
use crate::lattice::Lattice;
use crate::report::{Check, Report};
use crate::twisted::generators::{build_generators, diagonal, rebuild_from_cone, rebuild_from_shift, ConeData, Generators, ShiftData};
use crate::twisted::{tw_map, TwObj, Twisted, TwistedSums};

pub type Carrier<E> = <<E as ExactDgAlgebra>::Alg as TAlgebra>::Carrier;

/// A chosen object with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice<O> {
    pub object: O,
    pub witness: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceKind {
    Suspension,
    Cosuspension,
    Cone,
}

impl ChoiceKind {
    pub fn name(self) -> &'static str {
        match self {
            ChoiceKind::Suspension => "suspension",
            ChoiceKind::Cosuspension => "cosuspension",
            ChoiceKind::Cone => "cone",
        }
    }
}

pub trait ExactDgAlgebra: Send + Sync {
    type Alg: TAlgebra;

    fn algebra(&self) -> &Self::Alg;

    fn suspension(&self, x: &Obj<<Self::Alg as TAlgebra>::Carrier>) -> Result<Choice<Obj<<Self::Alg as TAlgebra>::Carrier>>>;

    fn cosuspension(&self, x: &Obj<<Self::Alg as TAlgebra>::Carrier>) -> Result<Choice<Obj<<Self::Alg as TAlgebra>::Carrier>>>;

    /// The chosen cone of a closed degree-0 `f: x -> y`.
    fn cone(
        &self,
        x: &Obj<<Self::Alg as TAlgebra>::Carrier>,
        y: &Obj<<Self::Alg as TAlgebra>::Carrier>,
        f: &Elem,
    ) -> Result<Choice<Obj<<Self::Alg as TAlgebra>::Carrier>>>;

    /// Whether `x` is an object of the carrier.
    fn contains(&self, _x: &Obj<<Self::Alg as TAlgebra>::Carrier>) -> Result<()> {
        Ok(())
    }

    fn shift(&self, x: &Obj<<Self::Alg as TAlgebra>::Carrier>, s: Degree) -> Result<Choice<Obj<<Self::Alg as TAlgebra>::Carrier>>> {
        match s {
            1 => self.suspension(x),
            -1 => self.cosuspension(x),
            _ => Err(Error::Precondition(format!("shift by {s}"))),
        }
    }
}

impl<E: ExactDgAlgebra + ?Sized> ExactDgAlgebra for &E {
    type Alg = E::Alg;
    fn algebra(&self) -> &E::Alg {
        (**self).algebra()
    }
    fn suspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        (**self).suspension(x)
    }
    fn cosuspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        (**self).cosuspension(x)
    }
    fn cone(&self, x: &Obj<Carrier<E>>, y: &Obj<Carrier<E>>, f: &Elem) -> Result<Choice<Obj<Carrier<E>>>> {
        (**self).cone(x, y, f)
    }
    fn contains(&self, x: &Obj<Carrier<E>>) -> Result<()> {
        (**self).contains(x)
    }
}

/// A closed degree-0 morphism of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle<O> {
    pub source: O,
    pub target: O,
    pub map: Elem,
}

/// Objects and cycles on which an exact structure is checked.
#[derive(Clone, Debug)]
pub struct ExactPool<O> {
    pub objects: Vec<O>,
    pub cycles: Vec<Cycle<O>>,
}

/// Closed degree-0 morphisms `x -> y` at the lattice points of a cycle
/// basis, zero excluded, at most `cap` of them.
pub fn enumerate_cycles<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, lattice: &Lattice, cap: usize) -> Vec<Elem> {
    let field = cat.field();
    let hom = cat.hom(x, y);
    let dim = hom.dim(0);
    if dim == 0 {
        return Vec::new();
    }
    let basis = hom.d(0).kernel();
    let lattice = Lattice {
        limit: lattice.limit.min(cap + 1),
        ..*lattice
    };
    lattice
        .points(field, &field.zeros(dim), &basis)
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .take(cap)
        .map(|v| Elem::new(0, v))
        .collect()
}

impl<O: Clone> ExactPool<O> {
    /// The pool with every enumerated cycle between pairs of `objects`.
    pub fn enumerate<C: DgCat<Obj = O>>(cat: &C, objects: Vec<O>, lattice: &Lattice, per_pair: usize) -> ExactPool<O> {
        let mut cycles = Vec::new();
        for x in &objects {
            for y in &objects {
                for map in enumerate_cycles(cat, x, y, lattice, per_pair) {
                    cycles.push(Cycle {
                        source: x.clone(),
                        target: y.clone(),
                        map,
                    });
                }
            }
        }
        ExactPool { objects, cycles }
    }
}

/// Checks that `w` is a closed degree-0 morphism `a -> b` with a two-sided
/// inverse; returns the inverse.
pub fn strict_iso<C: DgCat>(cat: &C, a: &C::Obj, b: &C::Obj, w: &Elem) -> Result<Elem> {
    if w.degree != 0 || w.coeffs.len() != cat.hom_dim(a, b, 0) {
        return Err(Error::Ineligible("witness has the wrong shape".into()));
    }
    if !cat.differential(a, b, w).is_zero() {
        return Err(Error::Ineligible("witness is not closed".into()));
    }
    strict_inverse(cat, a, b, w).ok_or_else(|| Error::Ineligible("witness is not invertible".into()))
}

fn shift_law(s: Degree) -> ChoiceKind {
    if s == 1 {
        ChoiceKind::Suspension
    } else {
        ChoiceKind::Cosuspension
    }
}

fn check_shift_choice<E: ExactDgAlgebra>(e: &E, gens: &Generators, x: &Obj<Carrier<E>>, s: Degree) -> Report {
    let carrier = e.algebra().carrier();
    let tw = Twisted::new(carrier);
    let law = shift_law(s).name();
    let sample = carrier.describe(x);
    let mut r = Report::new();
    let choice = match e.shift(x, s) {
        Ok(c) => c,
        Err(err) => {
            r.push(Check::fail(format!("{law}-defined"), sample, json!({"error": err.to_string()})));
            return r;
        }
    };
    let detail = || json!({"object": carrier.describe(x), "chosen": carrier.describe(&choice.object), "witness": choice.witness.to_json()});
    r.push(match e.contains(&choice.object) {
        Ok(()) => Check::pass(format!("{law}-in-carrier"), sample.clone()),
        Err(err) => Check::fail(format!("{law}-in-carrier"), sample.clone(), json!({"error": err.to_string()})),
    });
    let xs = tw.shift_obj(&tw.yoneda(x.clone()), s);
    let y = tw.yoneda(choice.object.clone());
    if let Err(err) = strict_iso(&tw, &xs, &y, &choice.witness) {
        let mut w = detail();
        w["error"] = json!(err.to_string());
        r.push(Check::fail(format!("{law}-witness"), sample, w));
        return r;
    }
    r.push(Check::pass(format!("{law}-witness"), sample.clone()));
    let (gen, inclusion) = if s == 1 {
        (&gens.suspension, &gens.s_inclusion)
    } else {
        (&gens.cosuspension, &gens.s_inv_inclusion)
    };
    let data = ShiftData {
        x: tw.yoneda(x.clone()),
        y,
        witness: choice.witness.clone(),
    };
    match rebuild_from_shift(gen, &tw, &data, s) {
        Ok(h) => {
            let functor = validate_functor(&h, &[0, 1]);
            r.push(if functor.passed() {
                Check::pass(format!("{law}-functor"), sample.clone())
            } else {
                Check::fail(format!("{law}-functor"), sample.clone(), detail())
            });
            let restricted = inclusion.then(&h);
            let expected = gens.point.table(tw.clone(), vec![data.x.clone()], |_| tw.identity(&data.x));
            r.push(match functor_difference(&restricted, &expected, &[0]) {
                None => Check::pass(format!("{law}-restriction"), sample),
                Some(diff) => {
                    let mut w = detail();
                    w["difference"] = json!(diff);
                    Check::fail(format!("{law}-restriction"), sample, w)
                }
            });
        }
        Err(err) => r.push(Check::fail(format!("{law}-functor"), sample, json!({"error": err.to_string()}))),
    }
    r
}

fn check_cone_choice<E: ExactDgAlgebra>(e: &E, gens: &Generators, c: &Cycle<Obj<Carrier<E>>>) -> Report {
    let carrier = e.algebra().carrier();
    let tw = Twisted::new(carrier);
    let sample = format!("{} -[{}]-> {}", carrier.describe(&c.source), crate::report::scalars_json(&c.map.coeffs), carrier.describe(&c.target));
    let mut r = Report::new();
    let choice = match e.cone(&c.source, &c.target, &c.map) {
        Ok(ch) => ch,
        Err(err) => {
            r.push(Check::fail("cone-defined", sample, json!({"error": err.to_string()})));
            return r;
        }
    };
    let detail = || json!({"map": c.map.to_json(), "chosen": carrier.describe(&choice.object), "witness": choice.witness.to_json()});
    r.push(match e.contains(&choice.object) {
        Ok(()) => Check::pass("cone-in-carrier", sample.clone()),
        Err(err) => Check::fail("cone-in-carrier", sample.clone(), json!({"error": err.to_string()})),
    });
    let (xh, yh) = (tw.yoneda(c.source.clone()), tw.yoneda(c.target.clone()));
    let f = Elem::new(0, c.map.coeffs.clone());
    let cone = match tw.cone_obj(&xh, &yh, &f) {
        Ok(k) => k,
        Err(err) => {
            r.push(Check::fail("cone-witness", sample, json!({"error": err.to_string()})));
            return r;
        }
    };
    let z = tw.yoneda(choice.object.clone());
    if let Err(err) = strict_iso(&tw, &cone, &z, &choice.witness) {
        let mut w = detail();
        w["error"] = json!(err.to_string());
        r.push(Check::fail("cone-witness", sample, w));
        return r;
    }
    r.push(Check::pass("cone-witness", sample.clone()));
    let data = ConeData {
        x: xh.clone(),
        y: yh.clone(),
        f: f.clone(),
        z,
        witness: choice.witness.clone(),
    };
    match rebuild_from_cone(&gens.cone, &tw, &data) {
        Ok(k) => {
            let functor = validate_functor(&k, &[0, 1, 2]);
            r.push(if functor.passed() {
                Check::pass("cone-functor", sample.clone())
            } else {
                Check::fail("cone-functor", sample.clone(), detail())
            });
            let restricted = gens.c_inclusion.then(&k);
            let expected = gens.morphism.table(tw.clone(), vec![xh.clone(), yh.clone()], |name| match name {
                "id0" => tw.identity(&xh),
                "id1" => tw.identity(&yh),
                _ => f.clone(),
            });
            r.push(match functor_difference(&restricted, &expected, &[0, 1]) {
                None => Check::pass("cone-restriction", sample),
                Some(diff) => {
                    let mut w = detail();
                    w["difference"] = json!(diff);
                    Check::fail("cone-restriction", sample, w)
                }
            });
        }
        Err(err) => r.push(Check::fail("cone-functor", sample, json!({"error": err.to_string()}))),
    }
    r
}

/// Verifies every chosen suspension, cosuspension and cone on the pool:
/// the object lies in the carrier, the witness is a strict isomorphism, the
/// functor out of the generator category it determines is a dg functor, and
/// its restriction along the inclusion of `𝒫` (resp. `ℳ`) is the
/// tautological one. The algebra laws are checked on the pool objects.
pub fn validate_exact<E: ExactDgAlgebra>(e: &E, pool: &ExactPool<Obj<Carrier<E>>>, sampler: &Sampler) -> Report {
    let gens = build_generators(e.algebra().carrier().field());
    let mut report = check_algebra(e.algebra(), &pool.objects, sampler).prefixed("algebra");
    for part in sampler.exec.map(&pool.objects, |x| {
        let mut r = check_shift_choice(e, &gens, x, 1);
        r.extend(check_shift_choice(e, &gens, x, -1));
        r
    }) {
        report.extend(part);
    }
    for part in sampler.exec.map(&pool.cycles, |c| check_cone_choice(e, &gens, c)) {
        report.extend(part);
    }
    report
}

/// Checks that `g` carries chosen data to chosen data: `G(Σx) = Σ(Gx)` with
/// `Tw(G)` mapping witness to witness, likewise for cosuspensions and cones,
/// and that `g` is a morphism of the underlying algebras.
pub fn check_exact_morphism<G, EA, EB>(g: &G, ea: &EA, eb: &EB, pool: &ExactPool<Obj<G::Source>>, sampler: &Sampler) -> Report
where
    G: DgFunctor,
    EA: ExactDgAlgebra,
    EB: ExactDgAlgebra,
    EA::Alg: TAlgebra<Carrier = G::Source>,
    EB::Alg: TAlgebra<Carrier = G::Target>,
{
    let mut report = check_algebra_morphism(g, ea.algebra(), eb.algebra(), &pool.objects, sampler).prefixed("algebra");
    let tg = tw_map(ByRef::new(g));
    let (ca, cb) = (g.source(), g.target());
    let compare = |law: &str, sample: String, mapped: Result<(Obj<G::Target>, Elem)>, chosen: Result<Choice<Obj<G::Target>>>| {
        match (mapped, chosen) {
            (Ok((obj, w)), Ok(ch)) if obj == ch.object && w == ch.witness => Check::pass(law, sample),
            (Ok((obj, w)), Ok(ch)) => Check::fail(
                law,
                sample,
                json!({
                    "image": cb.describe(&obj),
                    "chosen": cb.describe(&ch.object),
                    "image_witness": w.to_json(),
                    "chosen_witness": ch.witness.to_json(),
                }),
            ),
            (Err(err), _) | (_, Err(err)) => Check::fail(law, sample, json!({"error": err.to_string()})),
        }
    };
    let shifts = sampler.exec.map(&pool.objects, |x| {
        let mut r = Report::new();
        for s in [1, -1] {
            let law = format!("preserves-{}", shift_law(s).name());
            let mapped = ea.shift(x, s).map(|ch| {
                let xs = tg.source.shift_obj(&tg.source.yoneda(x.clone()), s);
                let w = tg.map_elem(&xs, &tg.source.yoneda(ch.object.clone()), &ch.witness);
                (g.map_obj(&ch.object), w)
            });
            r.push(compare(&law, ca.describe(x), mapped, eb.shift(&g.map_obj(x), s)));
        }
        r
    });
    for part in shifts {
        report.extend(part);
    }
    let cones = sampler.exec.map(&pool.cycles, |c| {
        let sample = format!("{} -> {}", ca.describe(&c.source), ca.describe(&c.target));
        let mapped = ea.cone(&c.source, &c.target, &c.map).and_then(|ch| {
            let (xh, yh) = (tg.source.yoneda(c.source.clone()), tg.source.yoneda(c.target.clone()));
            let cone = tg.source.cone_obj(&xh, &yh, &c.map)?;
            let w = tg.map_elem(&cone, &tg.source.yoneda(ch.object.clone()), &ch.witness);
            Ok((g.map_obj(&ch.object), w))
        });
        let gf = g.map_elem(&c.source, &c.target, &c.map);
        let chosen = eb.cone(&g.map_obj(&c.source), &g.map_obj(&c.target), &gf);
        let mut r = Report::new();
        r.push(compare("preserves-cone", sample, mapped, chosen));
        r
    });
    for part in cones {
        report.extend(part);
    }
    report
}

/// The exact structure on twisted complexes over `A0` with direct sums,
/// literal shifts and cones, and identity witnesses.
pub struct CanonicalExact<C> {
    pub sums: TwistedSums<C>,
}

pub fn canonical_exact<C: DgCat>(a0: C) -> CanonicalExact<C> {
    CanonicalExact {
        sums: TwistedSums {
            carrier: Twisted::new(a0),
        },
    }
}

impl<C: DgCat> CanonicalExact<C> {
    pub fn tw(&self) -> &Twisted<C> {
        &self.sums.carrier
    }

    /// The witness `x̂[s] -> (x[s])̂`, whose only block is the identity.
    pub fn shift_witness(&self, x: &TwObj<C::Obj>, s: Degree) -> Elem {
        let tw = self.tw();
        let xs = tw.shift_obj(x, s);
        Elem::new(0, diagonal(tw, x, &xs, -s, 0, false).coeffs)
    }

    /// The witness `cone(x̂ -> ŷ) -> (cone f)̂`: the inclusions of `x[1]` and
    /// `y` into the cone.
    pub fn cone_witness(&self, x: &TwObj<C::Obj>, y: &TwObj<C::Obj>, z: &TwObj<C::Obj>) -> Elem {
        let tw = self.tw();
        let mut coeffs = diagonal(tw, x, z, -1, 0, false).coeffs;
        coeffs.extend(diagonal(tw, y, z, 0, x.len(), false).coeffs);
        Elem::new(0, coeffs)
    }
}

impl<C: DgCat> ExactDgAlgebra for CanonicalExact<C> {
    type Alg = TwistedSums<C>;

    fn algebra(&self) -> &TwistedSums<C> {
        &self.sums
    }

    fn suspension(&self, x: &TwObj<C::Obj>) -> Result<Choice<TwObj<C::Obj>>> {
        Ok(Choice {
            object: self.tw().shift_obj(x, 1),
            witness: self.shift_witness(x, 1),
        })
    }

    fn cosuspension(&self, x: &TwObj<C::Obj>) -> Result<Choice<TwObj<C::Obj>>> {
        Ok(Choice {
            object: self.tw().shift_obj(x, -1),
            witness: self.shift_witness(x, -1),
        })
    }

    fn cone(&self, x: &TwObj<C::Obj>, y: &TwObj<C::Obj>, f: &Elem) -> Result<Choice<TwObj<C::Obj>>> {
        let z = self.tw().cone_obj(x, y, f)?;
        Ok(Choice {
            witness: self.cone_witness(x, y, &z),
            object: z,
        })
    }

    fn contains(&self, x: &TwObj<C::Obj>) -> Result<()> {
        self.tw().check_object(x)
    }
}

/// An exact structure with one kind of witness replaced by zero.
pub struct Corrupt<E> {
    pub inner: E,
    pub kind: ChoiceKind,
}

impl<E: ExactDgAlgebra> Corrupt<E> {
    fn spoil(&self, kind: ChoiceKind, c: Result<Choice<Obj<Carrier<E>>>>) -> Result<Choice<Obj<Carrier<E>>>> {
        c.map(|mut c| {
            if kind == self.kind {
                let field = self.inner.algebra().carrier().field();
                c.witness = Elem::zero(field, 0, c.witness.coeffs.len());
            }
            c
        })
    }
}

impl<E: ExactDgAlgebra> ExactDgAlgebra for Corrupt<E> {
    type Alg = E::Alg;
    fn algebra(&self) -> &E::Alg {
        self.inner.algebra()
    }
    fn suspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        self.spoil(ChoiceKind::Suspension, self.inner.suspension(x))
    }
    fn cosuspension(&self, x: &Obj<Carrier<E>>) -> Result<Choice<Obj<Carrier<E>>>> {
        self.spoil(ChoiceKind::Cosuspension, self.inner.cosuspension(x))
    }
    fn cone(&self, x: &Obj<Carrier<E>>, y: &Obj<Carrier<E>>, f: &Elem) -> Result<Choice<Obj<Carrier<E>>>> {
        self.spoil(ChoiceKind::Cone, self.inner.cone(x, y, f))
    }
    fn contains(&self, x: &Obj<Carrier<E>>) -> Result<()> {
        self.inner.contains(x)
    }
}
