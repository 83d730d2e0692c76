//! Canonical comparisons `⊕ x̂_i -> (⊕ x_i)̂` between the sum of
//! representables and the representable of the chosen sum, and their cones.

use rand::Rng;
use serde_json::json;

use crate::complexes::Degree;
use crate::dgcat::functor::Obj;
use crate::dgcat::{DgCat, Elem};
use crate::error::Result;
use crate::exact::strict_iso;
use crate::exec::Sampler;
use crate::families::algebra::TAlgebra;
use crate::report::{scalars_json, Check, Report};
use crate::twisted::{TwObj, Twisted};

#[derive(Clone, Debug, PartialEq)]
pub struct SumComparison<O> {
    pub family: Vec<O>,
    /// `⊕ x̂_i`.
    pub source: TwObj<O>,
    /// `(⊕ x_i)̂`.
    pub target: TwObj<O>,
    pub morphism: Elem,
    pub cone: TwObj<O>,
}

/// The cotuple of the chosen injections, read in twisted complexes over the
/// carrier, and its cone.
pub fn canonical_comparison<A: TAlgebra>(alg: &A, family: &[Obj<A::Carrier>]) -> Result<SumComparison<Obj<A::Carrier>>> {
    let tw = Twisted::new(alg.carrier());
    let hats: Vec<_> = family.iter().map(|x| tw.yoneda(x.clone())).collect();
    let source = tw.direct_sum(&hats);
    let target = tw.yoneda(alg.sum_obj(family));
    let injections: Vec<Elem> = (0..family.len()).map(|i| alg.injection(family, i)).collect();
    let morphism = tw.sum_cotuple(&hats, &target, 0, &injections);
    let cone = tw.cone_obj(&source, &target, &morphism)?;
    Ok(SumComparison {
        family: family.to_vec(),
        source,
        target,
        morphism,
        cone,
    })
}

/// Whether the comparison has a two-sided inverse.
pub fn is_strict_iso<A: TAlgebra>(alg: &A, sc: &SumComparison<Obj<A::Carrier>>) -> bool {
    let tw = Twisted::new(alg.carrier());
    strict_iso(&tw, &sc.source, &sc.target, &sc.morphism).is_ok()
}

/// Homology of `Hom(cone, ẑ)` for sampled test objects `z`, each the chosen
/// sum of a nonempty family drawn from `pool`. Every degree must vanish; a
/// failure carries a cycle that is not a boundary.
pub fn cone_acyclicity_report<A: TAlgebra>(
    alg: &A,
    sc: &SumComparison<Obj<A::Carrier>>,
    pool: &[Obj<A::Carrier>],
    sampler: &Sampler,
) -> Report {
    let carrier = alg.carrier();
    let tw = Twisted::new(carrier);
    let mut report = Report::new();
    report.push(if tw.check_object(&sc.cone).is_ok() {
        Check::pass("cone-maurer-cartan", tw.describe(&sc.cone))
    } else {
        Check::fail("cone-maurer-cartan", tw.describe(&sc.cone), json!({}))
    });
    let d = tw.differential(&sc.source, &sc.target, &sc.morphism);
    report.push(if d.is_zero() && sc.morphism.degree == 0 {
        Check::pass("comparison-closed", tw.describe(&sc.source))
    } else {
        Check::fail("comparison-closed", tw.describe(&sc.source), json!({"differential": d.to_json()}))
    });
    if pool.is_empty() {
        return report;
    }
    let max_len = sampler.max_len.max(1);
    let checks = sampler.run("cone-acyclic", |_, rng| {
        let len = rng.gen_range(1..=max_len);
        let family: Vec<_> = (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let sum = alg.sum_obj(&family);
        let sample = carrier.describe(&sum);
        let hom = tw.hom(&sc.cone, &tw.yoneda(sum));
        for n in hom.represented_degrees() {
            let h = hom.homology(n);
            if h.dim > 0 {
                return Check::fail(
                    "cone-acyclic",
                    sample,
                    json!({"degree": n, "dim": h.dim, "cycle": scalars_json(&h.representatives[0])}),
                );
            }
        }
        Check::pass("cone-acyclic", sample)
    });
    for c in checks {
        report.push(c);
    }
    report
}

/// Chosen sums with the last summand dropped; a negative control whose
/// comparisons are not invertible.
#[derive(Clone, Debug)]
pub struct DroppedCoordinate<A> {
    pub inner: A,
}

impl<A: TAlgebra> TAlgebra for DroppedCoordinate<A> {
    type Carrier = A::Carrier;

    fn carrier(&self) -> &A::Carrier {
        self.inner.carrier()
    }

    fn sum_obj(&self, family: &[Obj<A::Carrier>]) -> Obj<A::Carrier> {
        self.inner.sum_obj(&family[..family.len().saturating_sub(1)])
    }

    fn injection(&self, family: &[Obj<A::Carrier>], x: usize) -> Elem {
        let kept = &family[..family.len().saturating_sub(1)];
        if x < kept.len() {
            self.inner.injection(kept, x)
        } else {
            let c = self.carrier();
            Elem::zero(c.field(), 0, c.hom_dim(&family[x], &self.sum_obj(family), 0))
        }
    }

    fn cotuple(&self, family: &[Obj<A::Carrier>], z: &Obj<A::Carrier>, n: Degree, components: &[Elem]) -> Elem {
        let kept = family.len().saturating_sub(1);
        self.inner.cotuple(&family[..kept], z, n, &components[..kept.min(components.len())])
    }
}
