//! Seeded checks of the monad laws for `(T, η, μ)` and of naturality.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::dgcat::{DgCat, DgFunctor, Elem};
use crate::exec::Sampler;
use crate::families::{eta, mu_with, t_map, AlphaCutoff, Concatenation, Families, Family, Flattening, Mu};
use crate::report::{Report, Tally};

/// A family of length `0..=max_len` drawn from `pool`.
pub fn sample_family<O: Clone>(rng: &mut ChaCha8Rng, pool: &[O], max_len: usize) -> Family<O> {
    if pool.is_empty() {
        return Family(Vec::new());
    }
    let len = rng.gen_range(0..=max_len);
    Family((0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect())
}

/// A uniformly chosen basis element of `Hom(x, y)`, or `None` when the Hom
/// complex is zero.
pub fn sample_basis_elem<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, rng: &mut ChaCha8Rng) -> Option<Elem> {
    let dims: Vec<(i32, usize)> = cat.hom_dims(x, y).into_iter().collect();
    let total: usize = dims.iter().map(|(_, d)| d).sum();
    if total == 0 {
        return None;
    }
    let mut k = rng.gen_range(0..total);
    for (n, d) in dims {
        if k < d {
            return Some(Elem::basis(cat.field(), n, d, k));
        }
        k -= d;
    }
    unreachable!()
}

pub fn check_monad_laws<C: DgCat + Clone>(a: &C, pool: &[C::Obj], sampler: &Sampler) -> Report {
    check_monad_laws_with(a, pool, sampler, Concatenation)
}

/// `μ∘ηT = id = μ∘Tη` on `T(A)` and `μ∘Tμ = μ∘μT` on `T³(A)`, compared on
/// objects and on sampled basis morphisms.
pub fn check_monad_laws_with<C, Fl>(a: &C, pool: &[C::Obj], sampler: &Sampler, flattening: Fl) -> Report
where
    C: DgCat + Clone,
    Fl: Flattening + Clone,
{
    let cut = AlphaCutoff::Countable;
    let t = Families::new(a.clone());
    let tt = Families::new(t.clone());
    let mu_a = mu_with(a.clone(), cut, flattening.clone());
    let mu_ta: Mu<Families<C>, Fl> = mu_with(t.clone(), cut, flattening.clone());
    let t_mu = t_map(mu_with(a.clone(), cut, flattening), cut);
    let eta_t = eta(t.clone());
    let t_eta = t_map(eta(a.clone()), cut);
    let max_len = sampler.max_len;

    let units = sampler.run("monad-unit", |_, rng| {
        let mut tally = Tally::new();
        let f = sample_family(rng, pool, max_len);
        let g = sample_family(rng, pool, max_len);
        let e = sample_basis_elem(&t, &f, &g, rng);
        let sample = || format!("{} -> {}", t.describe(&f), t.describe(&g));
        for (law, via) in [("left-unit", true), ("right-unit", false)] {
            let lift = |x: &Family<C::Obj>| {
                if via {
                    eta_t.map_obj(x)
                } else {
                    t_eta.map_obj(x)
                }
            };
            let (ff, gg) = (lift(&f), lift(&g));
            let obj_ok = mu_a.map_obj(&ff) == f && mu_a.map_obj(&gg) == g;
            let elem_ok = obj_ok
                && e.as_ref().is_none_or(|e| {
                    let lifted = if via {
                        eta_t.map_elem(&f, &g, e)
                    } else {
                        t_eta.map_elem(&f, &g, e)
                    };
                    &mu_a.map_elem(&ff, &gg, &lifted) == e
                });
            tally.record(law, elem_ok, sample, || {
                json!({
                    "flattened": t.describe(&mu_a.map_obj(&ff)),
                    "expected": t.describe(&f),
                    "morphism": e.as_ref().map(Elem::to_json),
                })
            });
        }
        tally
    });

    let assoc = sampler.run("monad-associativity", |_, rng| {
        let mut tally = Tally::new();
        let outer = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..=max_len);
            Family(
                (0..len)
                    .map(|_| {
                        let inner = rng.gen_range(0..=max_len);
                        Family((0..inner).map(|_| sample_family(rng, pool, max_len)).collect())
                    })
                    .collect::<Vec<Family<Family<C::Obj>>>>(),
            )
        };
        let f = outer(rng);
        let g = outer(rng);
        let sample = || format!("{} -> {}", describe3(&t, &f), describe3(&t, &g));
        let via_t = (mu_a.map_obj(&t_mu.map_obj(&f)), mu_a.map_obj(&t_mu.map_obj(&g)));
        let via_mu = (mu_a.map_obj(&mu_ta.map_obj(&f)), mu_a.map_obj(&mu_ta.map_obj(&g)));
        let obj_ok = via_t == via_mu;
        let ttt = Families::new(tt.clone());
        let e = sample_basis_elem(&ttt, &f, &g, rng);
        let elem_ok = obj_ok
            && e.as_ref().is_none_or(|e| {
                let left = mu_a.map_elem(&t_mu.map_obj(&f), &t_mu.map_obj(&g), &t_mu.map_elem(&f, &g, e));
                let right = mu_a.map_elem(&mu_ta.map_obj(&f), &mu_ta.map_obj(&g), &mu_ta.map_elem(&f, &g, e));
                left == right
            });
        tally.record("associativity", elem_ok, sample, || {
            json!({
                "via_t_mu": t.describe(&via_t.0),
                "via_mu_t": t.describe(&via_mu.0),
                "morphism": e.as_ref().map(Elem::to_json),
            })
        });
        tally
    });

    let mut tally = Tally::new();
    for t in units.into_iter().chain(assoc) {
        tally.merge(t);
    }
    tally.into_report()
}

fn describe3<C: DgCat>(t: &Families<C>, f: &Family<Family<Family<C::Obj>>>) -> String {
    let parts: Vec<String> = f
        .0
        .iter()
        .map(|g| {
            let inner: Vec<String> = g.0.iter().map(|h| t.describe(h)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    format!("({})", parts.join(","))
}

/// Flattening under a finite cutoff: every admissible family of admissible
/// families whose concatenation is too long is reported.
pub fn check_regularity<C: DgCat + Clone>(a: &C, pool: &[C::Obj], cutoff: AlphaCutoff, sampler: &Sampler) -> Report {
    let m = crate::families::mu(a.clone(), cutoff);
    let bound = match cutoff {
        AlphaCutoff::Countable => sampler.max_len,
        AlphaCutoff::Finite(n) => n.saturating_sub(1),
    };
    let results = sampler.run("regularity", |_, rng| {
        let mut tally = Tally::new();
        let len = rng.gen_range(0..=bound);
        let x = Family((0..len).map(|_| sample_family(rng, pool, bound)).collect::<Vec<_>>());
        let outcome = m.try_map_obj(&x);
        tally.record(
            "flattening-admissible",
            outcome.is_ok(),
            || {
                let lens: Vec<usize> = x.0.iter().map(Family::len).collect();
                format!("inner lengths {lens:?}")
            },
            || json!(outcome.as_ref().err().map(|e| e.to_string())),
        );
        tally
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}

/// `T(G)∘η = η∘G` and `μ∘TT(G) = T(G)∘μ` on sampled objects and basis
/// morphisms.
pub fn check_naturality<G>(g: &G, pool: &[<G::Source as DgCat>::Obj], sampler: &Sampler) -> Report
where
    G: DgFunctor + Clone,
    G::Source: Clone,
    G::Target: Clone,
{
    let cut = AlphaCutoff::Countable;
    let tg = t_map(g.clone(), cut);
    let ttg = t_map(t_map(g.clone(), cut), cut);
    let (eta_a, eta_b) = (eta(g.source().clone()), eta(g.target().clone()));
    let (mu_a, mu_b) = (
        crate::families::mu(g.source().clone(), cut),
        crate::families::mu(g.target().clone(), cut),
    );
    let a = g.source();
    let max_len = sampler.max_len;
    let results = sampler.run("naturality", |_, rng| {
        let mut tally = Tally::new();
        let x = pool[rng.gen_range(0..pool.len())].clone();
        let y = pool[rng.gen_range(0..pool.len())].clone();
        let e = sample_basis_elem(a, &x, &y, rng);
        let ok = tg.map_obj(&eta_a.map_obj(&x)) == eta_b.map_obj(&g.map_obj(&x))
            && e.as_ref().is_none_or(|e| {
                tg.map_elem(&eta_a.map_obj(&x), &eta_a.map_obj(&y), &eta_a.map_elem(&x, &y, e))
                    == eta_b.map_elem(&g.map_obj(&x), &g.map_obj(&y), &g.map_elem(&x, &y, e))
            });
        tally.record("eta-natural", ok, || format!("{} -> {}", a.describe(&x), a.describe(&y)), || {
            json!(e.as_ref().map(Elem::to_json))
        });
        let nest = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..=max_len);
            Family((0..len).map(|_| sample_family(rng, pool, max_len)).collect::<Vec<_>>())
        };
        let (f, h) = (nest(rng), nest(rng));
        let tta = Families::new(Families::new(a.clone()));
        let e = sample_basis_elem(&tta, &f, &h, rng);
        let ok = mu_b.map_obj(&ttg.map_obj(&f)) == tg.map_obj(&mu_a.map_obj(&f))
            && e.as_ref().is_none_or(|e| {
                mu_b.map_elem(&ttg.map_obj(&f), &ttg.map_obj(&h), &ttg.map_elem(&f, &h, e))
                    == tg.map_elem(&mu_a.map_obj(&f), &mu_a.map_obj(&h), &mu_a.map_elem(&f, &h, e))
            });
        tally.record("mu-natural", ok, || format!("{} -> {}", tta.describe(&f), tta.describe(&h)), || {
            json!(e.as_ref().map(Elem::to_json))
        });
        tally
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}
