//! Distinguished triangles `x -> y -> cone(f) -> x[1]` in the twisted model
//! and the corepresentability of cones.

use rand::Rng;
use serde_json::json;

use crate::complexes::{cone, ChainMap, Complex, Degree};
use crate::dgcat::{precomposition, random_cycle, DgCat, Elem};
use crate::error::Result;
use crate::exec::Sampler;
use crate::report::{Report, Tally};
use crate::twisted::generators::diagonal;
use crate::twisted::{TwObj, Twisted};

/// Degrees where `H^n(hom)` differs from `H^{n-1}` of the mapping cone of
/// `f_star`, as `(n, dim H^n(hom), dim H^{n-1}(cone))`.
pub fn corepresentability_defects(hom: &Complex, f_star: &ChainMap) -> Result<Vec<(Degree, usize, usize)>> {
    let c = cone(f_star)?.complex;
    let mut degrees: Vec<Degree> = hom.represented_degrees();
    degrees.extend(c.represented_degrees().into_iter().map(|n| n + 1));
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees
        .into_iter()
        .filter_map(|n| {
            let (a, b) = (hom.homology(n).dim, c.homology(n - 1).dim);
            (a != b).then_some((n, a, b))
        })
        .collect())
}

/// The maps `ι: y -> cone(f)` and `π: cone(f) -> x[1]` of the triangle.
pub fn triangle_maps<C: DgCat>(tw: &Twisted<C>, x: &TwObj<C::Obj>, y: &TwObj<C::Obj>, f: &Elem) -> Result<(TwObj<C::Obj>, Elem, Elem)> {
    let c = tw.cone_obj(x, y, f)?;
    let x1 = tw.shift_obj(x, 1);
    let iota = diagonal(tw, y, &c, 0, x.len(), false);
    let pi = diagonal(tw, &c, &x1, 0, 0, true);
    Ok((c, iota, pi))
}

/// On sampled closed degree-0 `f` between objects of `pool`: the triangle
/// maps are closed, consecutive composites vanish in `H⁰`, and
/// `H^n Hom(cone(f), z) = H^{n-1} cone(f^*)` for a sampled `z`.
pub fn check_pretriangulated<C: DgCat>(tw: &Twisted<C>, pool: &[TwObj<C::Obj>], sampler: &Sampler) -> Report {
    let results = sampler.run("pretriangulated", |_, rng| {
        let mut t = Tally::new();
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let z = &pool[rng.gen_range(0..pool.len())];
        let f = random_cycle(tw, x, y, 0, rng);
        let sample = || format!("{} -> {} against {}", tw.describe(x), tw.describe(y), tw.describe(z));
        let (c, iota, pi) = match triangle_maps(tw, x, y, &f) {
            Ok(v) => v,
            Err(e) => {
                t.fail("triangle-closed", sample(), json!(e.to_string()));
                return t;
            }
        };
        let (x1, y1) = (tw.shift_obj(x, 1), tw.shift_obj(y, 1));
        let f1 = Elem::new(0, f.coeffs.clone());
        let closed = tw.differential(y, &c, &iota).is_zero() && tw.differential(&c, &x1, &pi).is_zero();
        t.record("triangle-closed", closed, sample, || json!(null));
        let boundary = |a: &TwObj<C::Obj>, b: &TwObj<C::Obj>, e: &Elem| tw.hom(a, b).homology(0).is_boundary(&e.coeffs);
        let composites = [
            boundary(x, &c, &tw.compose(x, y, &c, &iota, &f)),
            boundary(y, &x1, &tw.compose(y, &c, &x1, &pi, &iota)),
            boundary(&c, &y1, &tw.compose(&c, &x1, &y1, &f1, &pi)),
        ];
        t.record("h0-composites", composites.iter().all(|&b| b), sample, || json!({"vanishing": composites}));
        let f_star = precomposition(tw, x, y, z, &f);
        match corepresentability_defects(&tw.hom(&c, z), &f_star) {
            Ok(defects) => t.record("corepresentability", defects.is_empty(), sample, || json!({"defects": defects})),
            Err(e) => t.fail("corepresentability", sample(), json!(e.to_string())),
        }
        t
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}
