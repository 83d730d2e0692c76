//! Transport of an exact structure along a split coequalizer
//! `A ⇉ B -> D` with sections `R: B -> A` and `S: D -> B`.

use serde_json::json;

use crate::dgcat::functor::{functor_difference, ByRef, Composite, Obj};
use crate::dgcat::{basis_elements, DgCat, DgFunctor, Elem};
use crate::error::{Error, Result};
use crate::exact::{Carrier, Choice, ExactDgAlgebra};
use crate::families::algebra::TAlgebra;
use crate::report::{Check, Report};
use crate::twisted::tw_map;

/// `g1, g2: A -> B`, `r: B -> A`, `l: B -> D`, `s: D -> B`.
pub struct Split<G1, G2, R, L, S> {
    pub g1: G1,
    pub g2: G2,
    pub r: R,
    pub l: L,
    pub s: S,
}

/// Object pools of `A`, `B` and `D` on which the identities are checked.
pub struct SplitPools<'a, OA, OB, OD> {
    pub a: &'a [OA],
    pub b: &'a [OB],
    pub d: &'a [OD],
}

/// First object or basis element where `f` is not the identity.
fn identity_difference<F>(f: &F, objects: &[Obj<F::Source>]) -> Option<String>
where
    F: DgFunctor,
    F::Target: DgCat<Obj = Obj<F::Source>>,
{
    let a = f.source();
    for x in objects {
        if &f.map_obj(x) != x {
            return Some(format!("object {}", a.describe(x)));
        }
    }
    for x in objects {
        for y in objects {
            for e in basis_elements(a, x, y) {
                if f.map_elem(x, y, &e) != e {
                    return Some(format!("basis element of degree {} in Hom({}, {})", e.degree, a.describe(x), a.describe(y)));
                }
            }
        }
    }
    None
}

fn record(report: &mut Report, law: &str, diff: Option<String>) {
    report.push(match diff {
        None => Check::pass(law, "pool"),
        Some(d) => Check::fail(law, "pool", json!({"difference": d})),
    });
}

/// `L∘S = Id`, `G1∘R = Id`, `G2∘R = S∘L` and `L∘G1 = L∘G2` on the pools.
pub fn check_split_identities<G1, G2, R, L, S, OA, OB, OD>(split: &Split<G1, G2, R, L, S>, pools: &SplitPools<OA, OB, OD>) -> Report
where
    OA: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OB: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OD: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    G1: DgFunctor,
    G1::Source: DgCat<Obj = OA>,
    G1::Target: DgCat<Obj = OB>,
    G2: DgFunctor<Source = G1::Source>,
    G2::Target: DgCat<Obj = OB>,
    R: DgFunctor,
    R::Source: DgCat<Obj = OB>,
    R::Target: DgCat<Obj = OA>,
    L: DgFunctor<Source = R::Source>,
    L::Target: DgCat<Obj = OD>,
    S: DgFunctor,
    S::Source: DgCat<Obj = OD>,
    S::Target: DgCat<Obj = OB>,
{
    let mut report = Report::new();
    let ls = Composite {
        first: &split.s,
        second: &split.l,
    };
    record(&mut report, "l-after-s-is-identity", identity_difference(&ls, pools.d));
    let g1r = Composite {
        first: &split.r,
        second: &split.g1,
    };
    record(&mut report, "g1-after-r-is-identity", identity_difference(&g1r, pools.b));
    let g2r = Composite {
        first: &split.r,
        second: &split.g2,
    };
    let sl = Composite {
        first: &split.l,
        second: &split.s,
    };
    record(&mut report, "g2-after-r-is-s-after-l", functor_difference(&g2r, &sl, pools.b));
    let lg1 = Composite {
        first: &split.g1,
        second: &split.l,
    };
    let lg2 = Composite {
        first: &split.g2,
        second: &split.l,
    };
    record(&mut report, "l-coequalizes", functor_difference(&lg1, &lg2, pools.a));
    report
}

/// Choices on `D`: `C_D = L ∘ C_B ∘ S`, with witnesses transported by
/// `Tw(L)`.
pub struct TransferredExact<EB, AD, L, S> {
    pub source: EB,
    pub alg: AD,
    pub l: L,
    pub s: S,
}

/// Verifies the split identities and transfers the structure of `eb` to the
/// algebra `alg_d` on `D`.
pub fn split_coequalizer_transfer<EB, AD, G1, G2, R, L, S, OA, OB, OD>(
    eb: EB,
    alg_d: AD,
    split: Split<G1, G2, R, L, S>,
    pools: &SplitPools<OA, OB, OD>,
) -> Result<TransferredExact<EB, AD, L, S>>
where
    OA: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OB: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OD: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    EB: ExactDgAlgebra,
    AD: TAlgebra<Carrier = L::Target>,
    G1: DgFunctor,
    G1::Source: DgCat<Obj = OA>,
    G1::Target: DgCat<Obj = OB>,
    G2: DgFunctor<Source = G1::Source>,
    G2::Target: DgCat<Obj = OB>,
    R: DgFunctor<Source = Carrier<EB>>,
    R::Target: DgCat<Obj = OA>,
    L: DgFunctor<Source = Carrier<EB>>,
    L::Target: DgCat<Obj = OD>,
    S: DgFunctor,
    S::Source: DgCat<Obj = OD>,
    S::Target: DgCat<Obj = OB>,
    Carrier<EB>: DgCat<Obj = OB>,
{
    let report = check_split_identities(&split, pools);
    if let Some(c) = report.failures().next() {
        return Err(Error::Precondition(format!("split identity {} fails: {}", c.law, c.witness)));
    }
    Ok(TransferredExact {
        source: eb,
        alg: alg_d,
        l: split.l,
        s: split.s,
    })
}

impl<EB, AD, L, S, OB, OD> TransferredExact<EB, AD, L, S>
where
    OB: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OD: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    EB: ExactDgAlgebra,
    Carrier<EB>: DgCat<Obj = OB>,
    AD: TAlgebra<Carrier = L::Target>,
    L: DgFunctor<Source = Carrier<EB>>,
    L::Target: DgCat<Obj = OD>,
    S: DgFunctor,
    S::Source: DgCat<Obj = OD>,
    S::Target: DgCat<Obj = OB>,
{
    fn transported_shift(&self, x: &OD, s: i32) -> Result<Choice<OD>> {
        let sx = self.s.map_obj(x);
        let c = self.source.shift(&sx, s)?;
        let tl = tw_map(ByRef::new(&self.l));
        let xs = tl.source.shift_obj(&tl.source.yoneda(sx), s);
        let witness = tl.map_elem(&xs, &tl.source.yoneda(c.object.clone()), &c.witness);
        Ok(Choice {
            object: self.l.map_obj(&c.object),
            witness,
        })
    }
}

impl<EB, AD, L, S, OB, OD> ExactDgAlgebra for TransferredExact<EB, AD, L, S>
where
    OB: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    OD: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    EB: ExactDgAlgebra,
    Carrier<EB>: DgCat<Obj = OB>,
    AD: TAlgebra<Carrier = L::Target>,
    L: DgFunctor<Source = Carrier<EB>>,
    L::Target: DgCat<Obj = OD>,
    S: DgFunctor,
    S::Source: DgCat<Obj = OD>,
    S::Target: DgCat<Obj = OB>,
{
    type Alg = AD;

    fn algebra(&self) -> &AD {
        &self.alg
    }

    fn suspension(&self, x: &OD) -> Result<Choice<OD>> {
        self.transported_shift(x, 1)
    }

    fn cosuspension(&self, x: &OD) -> Result<Choice<OD>> {
        self.transported_shift(x, -1)
    }

    fn cone(&self, x: &OD, y: &OD, f: &Elem) -> Result<Choice<OD>> {
        let (sx, sy) = (self.s.map_obj(x), self.s.map_obj(y));
        let sf = self.s.map_elem(x, y, f);
        let c = self.source.cone(&sx, &sy, &sf)?;
        let tl = tw_map(ByRef::new(&self.l));
        let cone = tl.source.cone_obj(&tl.source.yoneda(sx), &tl.source.yoneda(sy), &sf)?;
        let witness = tl.map_elem(&cone, &tl.source.yoneda(c.object.clone()), &c.witness);
        Ok(Choice {
            object: self.l.map_obj(&c.object),
            witness,
        })
    }
}
