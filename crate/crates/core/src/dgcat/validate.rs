//! Exact verification of the dg category axioms on basis elements.

use serde_json::json;

use crate::dgcat::{basis_elements, DgCat, Elem};
use crate::exec::Execution;
use crate::report::{Report, Tally};

pub fn validate_dgcat<C: DgCat>(cat: &C, objects: &[C::Obj]) -> Report {
    validate_dgcat_with(cat, objects, Execution::default())
}

/// Checks Hom complexes, identities, units, the Leibniz rule and
/// associativity over all basis elements among `objects`.
pub fn validate_dgcat_with<C: DgCat>(cat: &C, objects: &[C::Obj], exec: Execution) -> Report {
    let mut tally = Tally::new();
    for x in objects {
        check_identity(cat, x, &mut tally);
        for y in objects {
            let issues = cat.hom(x, y).validate();
            tally.record(
                "hom-complex",
                issues.is_empty(),
                || format!("Hom({}, {})", cat.describe(x), cat.describe(y)),
                || json!(format!("{issues:?}")),
            );
        }
    }
    let n = objects.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let per_pair = exec.map(&pairs, |&(i, j)| {
        let mut t = Tally::new();
        let (x, y) = (&objects[i], &objects[j]);
        let fs = basis_elements(cat, x, y);
        check_units(cat, x, y, &fs, &mut t);
        for z in objects {
            let gs = basis_elements(cat, y, z);
            check_leibniz(cat, x, y, z, &gs, &fs, &mut t);
            for w in objects {
                let hs = basis_elements(cat, z, w);
                check_associativity(cat, [x, y, z, w], &hs, &gs, &fs, &mut t);
            }
        }
        t
    });
    for t in per_pair {
        tally.merge(t);
    }
    tally.into_report()
}

fn check_identity<C: DgCat>(cat: &C, x: &C::Obj, tally: &mut Tally) {
    let id = cat.identity(x);
    let shaped = id.degree == 0 && id.coeffs.len() == cat.hom_dim(x, x, 0);
    tally.record(
        "identity-shape",
        shaped,
        || cat.describe(x),
        || id.to_json(),
    );
    if shaped {
        let d = cat.differential(x, x, &id);
        tally.record("identity-closed", d.is_zero(), || cat.describe(x), || d.to_json());
    }
}

fn check_units<C: DgCat>(cat: &C, x: &C::Obj, y: &C::Obj, fs: &[Elem], tally: &mut Tally) {
    let (idx, idy) = (cat.identity(x), cat.identity(y));
    if idx.coeffs.len() != cat.hom_dim(x, x, 0) || idy.coeffs.len() != cat.hom_dim(y, y, 0) {
        return;
    }
    for f in fs {
        let left = cat.compose(x, y, y, &idy, f);
        let right = cat.compose(x, x, y, f, &idx);
        tally.record(
            "unit",
            &left == f && &right == f,
            || format!("{} -> {}", cat.describe(x), cat.describe(y)),
            || json!({"f": f.to_json(), "id∘f": left.to_json(), "f∘id": right.to_json()}),
        );
    }
}

fn check_leibniz<C: DgCat>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    z: &C::Obj,
    gs: &[Elem],
    fs: &[Elem],
    tally: &mut Tally,
) {
    let dfs: Vec<Elem> = fs.iter().map(|f| cat.differential(x, y, f)).collect();
    for g in gs {
        let dg = cat.differential(y, z, g);
        for (f, df) in fs.iter().zip(&dfs) {
            let lhs = cat.differential(x, z, &cat.compose(x, y, z, g, f));
            let rhs = cat
                .compose(x, y, z, &dg, f)
                .add(&cat.compose(x, y, z, g, df).signed(g.degree as i64));
            tally.record(
                "leibniz",
                lhs == rhs,
                || format!("{} -> {} -> {}", cat.describe(x), cat.describe(y), cat.describe(z)),
                || json!({"g": g.to_json(), "f": f.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json()}),
            );
        }
    }
}

fn check_associativity<C: DgCat>(
    cat: &C,
    [x, y, z, w]: [&C::Obj; 4],
    hs: &[Elem],
    gs: &[Elem],
    fs: &[Elem],
    tally: &mut Tally,
) {
    for g in gs {
        let gf: Vec<Elem> = fs.iter().map(|f| cat.compose(x, y, z, g, f)).collect();
        for h in hs {
            let hg = cat.compose(y, z, w, h, g);
            for (f, gf) in fs.iter().zip(&gf) {
                let lhs = cat.compose(x, y, w, &hg, f);
                let rhs = cat.compose(x, z, w, h, gf);
                tally.record(
                    "associativity",
                    lhs == rhs,
                    || {
                        format!(
                            "{} -> {} -> {} -> {}",
                            cat.describe(x),
                            cat.describe(y),
                            cat.describe(z),
                            cat.describe(w)
                        )
                    },
                    || json!({"h": h.to_json(), "g": g.to_json(), "f": f.to_json()}),
                );
            }
        }
    }
}
