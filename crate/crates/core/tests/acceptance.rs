use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use dgex::comparison::{canonical_comparison, cone_acyclicity_report, DroppedCoordinate};
use dgex::dgcat::functor::DgFunctor;
use dgex::dgcat::{materialize, precomposition_matrix, DgCat, FiniteDgCategory};
use dgex::exact::completion::{ex_completion, CompletionConfig, CompletionInput, FamilyEmbedding};
use dgex::exact::transfer::{check_split_identities, split_coequalizer_transfer, Split, SplitPools};
use dgex::exact::{canonical_exact, validate_exact, ChoiceKind, Corrupt, ExactPool};
use dgex::exec::Sampler;
use dgex::families::algebra::{additive_hull, check_algebra_morphism, TAlgebra};
use dgex::families::laws::{check_monad_laws, sample_family};
use dgex::families::{eta, Families, Family};
use dgex::harness::{run, twisted_pool, HarnessConfig};
use dgex::lattice::Lattice;
use dgex::path::{build_path, check_cone_matrix, check_cycle_law, factorization_report, PathCategory};
use dgex::presentation::{builtin, parse, serialize, BUILTINS};
use dgex::report::Report;
use dgex::twisted::generators::{build_generators, codiscrete, Generator};
use dgex::twisted::{tw_map, TwMap, Twisted, TwistedSums};
use dgex::{Field, Matrix};

type Outcome = Result<String, String>;

const F5: Field = Field::Prime(5);

fn bases(field: Field) -> Vec<(&'static str, Arc<FiniteDgCategory>)> {
    let g = build_generators(field);
    vec![("P", g.point.cat), ("M", g.morphism.cat), ("C", g.cone.cat)]
}

fn objects(cat: &FiniteDgCategory) -> Vec<usize> {
    (0..cat.len()).collect()
}

/// Number of instances behind a passing law, zero if it failed or is absent.
fn instances(report: &Report, law: &str) -> usize {
    if report.failures_of(law).next().is_some() {
        return 0;
    }
    report
        .checks
        .iter()
        .filter(|c| c.law == law)
        .map(|c| {
            c.sample
                .strip_suffix(" instances")
                .and_then(|n| n.parse::<usize>().ok())
                .unwrap_or(1)
        })
        .sum()
}

fn require(report: &Report, what: &str) -> Result<(), String> {
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} failed on {} ({})", c.law, c.sample, c.witness)),
    }
}

fn at_least(report: &Report, law: &str, n: usize, what: &str) -> Result<usize, String> {
    let k = instances(report, law);
    if k < n {
        return Err(format!("{what}: {law} ran {k} instances, wanted {n}"));
    }
    Ok(k)
}

fn monad_laws() -> Outcome {
    let sampler = Sampler {
        count: 100,
        max_len: 4,
        ..Sampler::new(42, 100)
    };
    let mut counts = Vec::new();
    for (name, cat) in bases(F5) {
        let report = check_monad_laws(&cat, &objects(&cat), &sampler);
        require(&report, name)?;
        for law in ["left-unit", "right-unit", "associativity"] {
            counts.push(at_least(&report, law, 100, name)?);
        }
    }
    Ok(format!("{} law instances over P, M, C (F_5, length <= 4)", counts.iter().sum::<usize>()))
}

fn hom_dimensions() -> Outcome {
    let sampler = Sampler::new(42, 200);
    let mut degrees_seen = 0;
    for (name, cat) in bases(F5) {
        let t = Families::new(cat.clone());
        let pool = objects(&cat);
        let results = sampler.run("acceptance-hom-dims", |_, rng| {
            let f = sample_family(rng, &pool, 4);
            let g = sample_family(rng, &pool, 4);
            let complex = t.hom(&f, &g);
            let mut degrees: BTreeSet<i32> = complex.dims().keys().copied().collect();
            for x in &f.0 {
                for y in &g.0 {
                    degrees.extend(cat.hom_dims(x, y).keys().copied());
                }
            }
            let bad = degrees.iter().copied().find(|&n| {
                let expected: usize = f.0.iter().flat_map(|x| g.0.iter().map(move |y| (x, y))).map(|(x, y)| cat.hom_dim(x, y, n)).sum();
                complex.dim(n) != expected
            });
            (bad.map(|n| format!("{name}: {} -> {} in degree {n}", t.describe(&f), t.describe(&g))), degrees.len())
        });
        for (bad, d) in results {
            if let Some(b) = bad {
                return Err(b);
            }
            degrees_seen += d;
        }
    }
    Ok(format!("600 pairs, {degrees_seen} represented degrees"))
}

fn unit_fully_faithful() -> Outcome {
    let mut pairs = 0;
    for field in [Field::Rational, F5] {
        for (name, cat) in bases(field) {
            let e = eta(cat.clone());
            let t = Families::new(cat.clone());
            for x in objects(&cat) {
                for y in objects(&cat) {
                    let base = cat.hom(&x, &y);
                    let lifted = t.hom(&e.map_obj(&x), &e.map_obj(&y));
                    if base != lifted {
                        return Err(format!("{name}: Hom complexes differ at ({x}, {y})"));
                    }
                    let h = e.hom_map(&x, &y);
                    let identity = h.components.iter().all(|(&n, m)| *m == Matrix::identity(field, base.dim(n)));
                    if h.source != base || h.target != base || !identity {
                        return Err(format!("{name}: unit is not the identity on Hom({x}, {y})"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} object pairs over Q and F_5"))
}

fn universal_property() -> Outcome {
    let g = build_generators(Field::Rational);
    let hull = additive_hull(g.morphism.cat.clone());
    let cat = hull.carrier().clone();
    let field = cat.field();
    let pool = objects(&g.morphism.cat);
    let results = Sampler::new(42, 100).run("acceptance-universal", |_, rng| {
        let family: Vec<Family<usize>> = sample_family(rng, &[0usize, 1], 3)
            .0
            .into_iter()
            .map(|_| sample_family(rng, &pool, 3))
            .collect();
        let z = sample_family(rng, &pool, 3);
        let sum = hull.sum_obj(&family);
        let mut degrees: BTreeSet<i32> = cat.hom_dims(&sum, &z).keys().copied().collect();
        for fx in &family {
            degrees.extend(cat.hom_dims(fx, &z).keys().copied());
        }
        let restriction = |n: i32| {
            let blocks: Vec<Matrix> = family
                .iter()
                .enumerate()
                .map(|(x, fx)| precomposition_matrix(&cat, fx, &sum, &z, &hull.injection(&family, x), n))
                .collect();
            blocks
                .into_iter()
                .fold(Matrix::zeros(field, 0, cat.hom_dim(&sum, &z, n)), |acc, b| acc.vstack(&b))
        };
        let product_d = |n: i32| {
            let blocks: Vec<Matrix> = family.iter().map(|fx| cat.hom(fx, &z).d(n)).collect();
            Matrix::block_diag(field, &blocks)
        };
        let sum_hom = cat.hom(&sum, &z);
        let bad = degrees.iter().copied().find(|&n| {
            let m = restriction(n);
            let iso = m.rows() == m.cols() && m.is_invertible();
            let chain = restriction(n + 1).mul(&sum_hom.d(n)) == product_d(n).mul(&m);
            !(iso && chain)
        });
        bad.map(|n| format!("family of length {} against {} in degree {n}", family.len(), cat.describe(&z)))
    });
    match results.into_iter().flatten().next() {
        Some(b) => Err(b),
        None => Ok("100 (family, Z) samples in additive_hull(M)".into()),
    }
}

fn path_factorization() -> Outcome {
    let lattice = Lattice::default();
    let mut sizes = Vec::new();
    for (name, cat) in bases(Field::Rational) {
        let fact = build_path(cat, &lattice);
        let report = factorization_report(&fact, &lattice);
        require(&report, name)?;
        for prefix in ["q-after-i-is-diagonal", "i/", "q/", "terminal/"] {
            if !report.checks.iter().any(|c| c.law.starts_with(prefix)) {
                return Err(format!("{name}: no {prefix} check"));
            }
        }
        sizes.push(format!("|P({name})| = {}", fact.objects.len()));
    }
    Ok(sizes.join(", "))
}

fn cycle_law() -> Outcome {
    let g = build_generators(Field::Rational);
    let fact = build_path(g.cone.cat.clone(), &Lattice::default());
    let report = check_cycle_law(&PathCategory::new(g.cone.cat.clone()), &fact.objects, &Sampler::new(42, 200));
    require(&report, "C")?;
    let n = at_least(&report, "cycle-law", 200, "C")?;
    Ok(format!("{n} triples over P(C)"))
}

fn cone_matrix() -> Outcome {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let path = PathCategory::new(tw.clone());
    let mut pool: Vec<_> = twisted_pool(&tw, 2, &Lattice::default())
        .iter()
        .map(|x| path.identity_object(x))
        .collect();
    let x = tw.yoneda(0);
    let two = tw.field().from_i64(2);
    pool.push(path.object(x.clone(), x.clone(), tw.identity(&x).scale(&two)).map_err(|e| e.to_string())?);
    let report = check_cone_matrix(&path, &pool, 10, &Sampler::new(42, 50));
    require(&report, "Tw(M)")?;
    let phi = at_least(&report, "phi-closed", 50, "Tw(M)")?;
    at_least(&report, "phi-corner-is-h", 50, "Tw(M)")?;
    let z = at_least(&report, "corepresentability", 500, "Tw(M)")?;
    Ok(format!("{phi} path morphisms over {} path objects, {z} test objects", pool.len()))
}

fn generator_tables() -> Outcome {
    for field in [Field::Rational, F5] {
        let g = build_generators(field);
        let p = Twisted::new(g.point.cat.clone());
        let x = p.yoneda(0);
        let checks = [
            ("S", materialize(&p, &[x.clone(), p.shift_obj(&x, 1)]), &g.suspension),
            ("S^-1", materialize(&p, &[x.clone(), p.shift_obj(&x, -1)]), &g.cosuspension),
        ];
        for (name, engine, table) in checks {
            if let Some(d) = engine.table_difference(&table.cat) {
                return Err(format!("{name} over {}: {d}", field.tag()));
            }
        }
        let m = Twisted::new(g.morphism.cat.clone());
        let (a, b) = (m.yoneda(0), m.yoneda(1));
        let f = dgex::dgcat::Elem::new(0, vec![field.one(); m.hom_dim(&a, &b, 0)]);
        let k = m.cone_obj(&a, &b, &f).map_err(|e| e.to_string())?;
        if let Some(d) = materialize(&m, &[a, b, k]).table_difference(&g.cone.cat) {
            return Err(format!("C over {}: {d}", field.tag()));
        }
    }
    Ok("S, S^-1 and C over Q and F_5".into())
}

fn families_up_to(n: usize, max_len: usize) -> Vec<Family<usize>> {
    let mut out = vec![Family(Vec::new())];
    let mut layer = out.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|f| (0..n).map(move |x| Family(f.0.iter().copied().chain([x]).collect())))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn exact_structure() -> Outcome {
    let g = build_generators(Field::Rational);
    let lattice = Lattice::default();
    let sampler = Sampler::new(42, 100);
    let e = canonical_exact(g.morphism.cat.clone());
    let fams = families_up_to(2, 2);
    let embedding = check_algebra_morphism(
        &FamilyEmbedding::new(g.morphism.cat.clone()),
        &additive_hull(g.morphism.cat.clone()),
        &e.sums,
        &fams,
        &sampler,
    );
    require(&embedding, "additive hull embedding")?;
    let pool = ExactPool::enumerate(e.tw(), twisted_pool(e.tw(), 2, &lattice), &lattice, 1);
    require(&validate_exact(&e, &pool, &sampler), "canonical")?;

    let reps = ExactPool::enumerate(e.tw(), vec![e.tw().yoneda(0), e.tw().yoneda(1)], &lattice, 1);
    let mut caught = Vec::new();
    for kind in [ChoiceKind::Suspension, ChoiceKind::Cosuspension, ChoiceKind::Cone] {
        let corrupt = Corrupt {
            inner: canonical_exact(g.morphism.cat.clone()),
            kind,
        };
        let report = validate_exact(&corrupt, &reps, &sampler);
        let law = format!("{}-witness", kind.name());
        let first = report.failures().next().cloned();
        match first {
            Some(c) if c.law == law && !c.sample.is_empty() => caught.push(format!("{law} at {}", c.sample)),
            Some(c) => return Err(format!("{} corruption reported as {}", kind.name(), c.law)),
            None => return Err(format!("{} corruption went undetected", kind.name())),
        }
    }

    let config = CompletionConfig::default();
    let done = ex_completion(CompletionInput::from_families(g.morphism.cat.clone(), &fams), &config);
    if !done.complete() {
        return Err(format!("completion left {} deficiencies", done.deficiencies.len()));
    }
    let again = done.rerun(&config);
    if again.adjoined() != 0 || again.objects != done.objects {
        return Err(format!("completion is not a fixed point: {} adjoined", again.adjoined()));
    }
    Ok(format!(
        "{} objects, {} cycles; caught {}; completion fixed at {} objects",
        pool.objects.len(),
        pool.cycles.len(),
        caught.join(", "),
        done.objects.len()
    ))
}

type Table = TwMap<dgex::dgcat::TableFunctor<FiniteDgCategory>>;

fn collapse(source: &Generator, target: &Generator, obj_map: Vec<usize>) -> Table {
    tw_map(dgex::dgcat::TableFunctor::from_fn(
        source.cat.clone(),
        (*target.cat).clone(),
        obj_map,
        |_, _, e| e.clone(),
    ))
}

fn split_transfer() -> Outcome {
    let field = Field::Rational;
    let a = codiscrete(field, &["XX", "XY", "YX", "YY"]);
    let b = codiscrete(field, &["X", "Y"]);
    let d = build_generators(field).point;
    let split = Split {
        g1: collapse(&a, &b, vec![0, 0, 1, 1]),
        g2: collapse(&a, &b, vec![0, 1, 0, 1]),
        r: collapse(&b, &a, vec![0, 2]),
        l: collapse(&b, &d, vec![0, 0]),
        s: collapse(&d, &b, vec![0]),
    };
    let (ta, tb, td) = (Twisted::new((*a.cat).clone()), Twisted::new((*b.cat).clone()), Twisted::new((*d.cat).clone()));
    let small = |tw: &Twisted<FiniteDgCategory>, n: usize| {
        let mut out: Vec<_> = (0..n).map(|i| tw.yoneda(i)).collect();
        let x = tw.yoneda(0);
        out.push(tw.shift_obj(&x, 1));
        out.push(tw.cone_obj(&x, &x, &tw.identity(&x)).unwrap());
        out
    };
    let (pa, pb, pd) = (small(&ta, 4), small(&tb, 2), small(&td, 1));
    let pools = SplitPools {
        a: &pa,
        b: &pb,
        d: &pd,
    };
    let identities = check_split_identities(&split, &pools);
    require(&identities, "split identities")?;
    let laws: BTreeSet<&str> = identities.checks.iter().map(|c| c.law.as_str()).collect();
    if laws.len() != 4 {
        return Err(format!("expected four split identities, found {laws:?}"));
    }
    let e = split_coequalizer_transfer(canonical_exact((*b.cat).clone()), TwistedSums { carrier: td.clone() }, split, &pools)
        .map_err(|e| e.to_string())?;
    let pool = ExactPool::enumerate(&td, pd.clone(), &Lattice::default(), 2);
    require(&validate_exact(&e, &pool, &Sampler::new(42, 100)), "transferred")?;
    Ok(format!("4 split identities, {} cycles over the collapsed point", pool.cycles.len()))
}

fn comparisons() -> Outcome {
    let g = build_generators(Field::Rational);
    let e = canonical_exact(g.point.cat.clone());
    let pool = twisted_pool(e.tw(), 1, &Lattice::default());
    let tests = Sampler::new(42, 10);
    let results = Sampler::new(42, 40).run("acceptance-comparison", |i, rng| {
        let family = sample_family(rng, &pool, 3).0;
        let sc = canonical_comparison(&e.sums, &family).map_err(|err| err.to_string())?;
        let report = cone_acyclicity_report(
            &e.sums,
            &sc,
            &pool,
            &Sampler {
                seed: tests.seed.wrapping_add(i as u64),
                ..tests
            },
        );
        require(&report, &format!("family {i} of length {}", family.len()))?;
        at_least(&report, "cone-acyclic", 10, "comparison")
    });
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    let bad = DroppedCoordinate { inner: e.sums.clone() };
    let x = e.tw().yoneda(0);
    let sc = canonical_comparison(&bad, &[x.clone(), x]).map_err(|err| err.to_string())?;
    let report = cone_acyclicity_report(&bad, &sc, &pool, &tests);
    let witness = match report.failures_of("cone-acyclic").next() {
        Some(c) if c.witness["dim"].as_u64().is_some_and(|d| d > 0) => c.witness.clone(),
        _ => return Err("dropped-coordinate control produced no homology witness".into()),
    };
    Ok(format!("40 families, {checked} acyclic cones; control witness in degree {}", witness["degree"]))
}

fn cli_determinism() -> Outcome {
    let config = HarnessConfig::default();
    let mut reports = 0;
    for name in ["point", "morphism", "cone"] {
        let cat = builtin(name, Field::Rational).ok_or("missing builtin")?;
        let (a, code) = run("laws-all", &cat, &config);
        let (b, _) = run("laws-all", &cat, &config);
        if code != 0 {
            return Err(format!("laws-all on {name} exited {code}"));
        }
        if a != b {
            return Err(format!("laws-all on {name} differs between runs"));
        }
        reports += 1;
    }
    for field in [Field::Rational, F5] {
        for name in BUILTINS {
            let cat = builtin(name, field).ok_or("missing builtin")?;
            let text = serialize(&cat);
            let back = parse(&text).map_err(|e| format!("{name}: {e}"))?;
            if serialize(&back) != text || back.table_difference(&cat).is_some() {
                return Err(format!("{name} over {} does not round-trip", field.tag()));
            }
        }
    }
    Ok(format!("{reports} laws-all reports stable, {} documents round-trip", 2 * BUILTINS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("monad laws", monad_laws),
        ("hom dimensions of T", hom_dimensions),
        ("unit fully faithful", unit_fully_faithful),
        ("algebra universal property", universal_property),
        ("path factorization", path_factorization),
        ("degree-0 cycle law", cycle_law),
        ("cone matrix", cone_matrix),
        ("generator tables", generator_tables),
        ("exact structure", exact_structure),
        ("split-coequalizer transfer", split_transfer),
        ("sum comparisons", comparisons),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{ms} ms]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
