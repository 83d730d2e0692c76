//! Seeded law-check runs over a presented category, with JSON reports and
//! exit codes.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::comparison::{canonical_comparison, cone_acyclicity_report, is_strict_iso};
use crate::dgcat::functor::Identity;
use crate::dgcat::h0::{check_h0_well_defined, h0};
use crate::dgcat::predicates::{is_fibration, is_quasi_equivalence};
use crate::dgcat::product::ToTerminal;
use crate::dgcat::validate::validate_dgcat_with;
use crate::dgcat::{DgCat, FiniteDgCategory};
use crate::error::{Error, Result};
use crate::exact::completion::{ex_completion, CompletionConfig, CompletionInput, FamilyEmbedding};
use crate::exact::{canonical_exact, enumerate_cycles, validate_exact, ExactPool};
use crate::exec::{Execution, Sampler};
use crate::families::algebra::{additive_hull, check_algebra, check_algebra_morphism, free_algebra};
use crate::families::laws::{check_monad_laws, check_regularity, sample_family};
use crate::families::{AlphaCutoff, Family};
use crate::lattice::Lattice;
use crate::path::{build_path, check_cone_matrix, check_cycle_law, factorization_report, PathCategory};
use crate::report::{Check, Report};
use crate::twisted::pretriangulated::check_pretriangulated;
use crate::twisted::{TwObj, Twisted, TwistedSums};

pub const VERBS: [&str; 12] = [
    "validate",
    "h0",
    "quasi-equiv",
    "fibration",
    "path",
    "pretr",
    "fam-laws",
    "algebra-check",
    "exact-check",
    "ex-complete",
    "dalpha-check",
    "laws-all",
];

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Samples per sampled law.
    pub samples: usize,
    /// Stages the completion may use.
    pub budget: usize,
    pub lattice: Lattice,
    /// Longest sampled family.
    pub max_len: usize,
    pub cutoff: AlphaCutoff,
    pub exec: Execution,
}

impl Default for HarnessConfig {
    fn default() -> HarnessConfig {
        HarnessConfig {
            seed: 42,
            samples: 100,
            budget: 2,
            lattice: Lattice::default(),
            max_len: 4,
            cutoff: AlphaCutoff::Countable,
            exec: Execution::default(),
        }
    }
}

impl HarnessConfig {
    pub fn check(&self) -> Result<()> {
        if self.samples == 0 || self.max_len == 0 || self.lattice.bound == 0 || self.lattice.limit == 0 {
            return Err(Error::Precondition("samples, family length and lattice bound must be positive".into()));
        }
        Ok(())
    }

    fn sampler(&self) -> Sampler {
        Sampler {
            seed: self.seed,
            count: self.samples,
            max_len: self.max_len,
            exec: self.exec,
        }
    }

    /// A smaller sampler for laws whose samples are expensive.
    fn sampler_scaled(&self, divisor: usize) -> Sampler {
        self.sampler().with_count((self.samples / divisor).max(1))
    }

    fn to_json(self) -> Value {
        let cutoff = match self.cutoff {
            AlphaCutoff::Countable => "countable".to_string(),
            AlphaCutoff::Finite(n) => format!("finite:{n}"),
        };
        json!({
            "seed": self.seed,
            "samples": self.samples,
            "budget": self.budget,
            "bound": self.lattice.bound,
            "max_len": self.max_len,
            "cutoff": cutoff,
        })
    }
}

/// Parses `countable` or `finite:<n>`.
pub fn parse_cutoff(s: &str) -> Result<AlphaCutoff> {
    if s == "countable" {
        return Ok(AlphaCutoff::Countable);
    }
    s.strip_prefix("finite:")
        .and_then(|n| n.parse().ok())
        .filter(|&n: &usize| n > 0)
        .map(AlphaCutoff::Finite)
        .ok_or_else(|| Error::Precondition(format!("unknown cutoff {s:?}")))
}

pub fn usage() -> String {
    format!(
        "usage: dgex <verb> <document> [--field Q|Fp:<p>] [--seed N] [--samples N] [--budget N] [--bound N] [--cutoff countable|finite:N] [--out FILE]\n\
         verbs: {}\n\
         documents: a JSON file or builtin:<name> with name one of point, suspension, cosuspension, morphism, cone\n",
        VERBS.join(", ")
    )
}

struct Section {
    name: &'static str,
    report: Report,
    data: Option<Value>,
}

impl Section {
    fn new(name: &'static str, report: Report) -> Section {
        Section { name, report, data: None }
    }
}

type Cat = Arc<FiniteDgCategory>;

fn objects(cat: &Cat) -> Vec<usize> {
    (0..cat.len()).collect()
}

/// Representables, a shift, sums and the cone of one enumerated cycle per
/// ordered pair of objects.
pub fn twisted_pool<C: DgCat<Obj = usize>>(tw: &Twisted<C>, n: usize, lattice: &Lattice) -> Vec<TwObj<usize>> {
    let reps: Vec<_> = (0..n).map(|x| tw.yoneda(x)).collect();
    let mut pool = reps.clone();
    if n == 0 {
        return pool;
    }
    pool.push(tw.shift_obj(&reps[0], 1));
    pool.push(tw.shift_obj(&reps[n - 1], -1));
    pool.push(tw.direct_sum(&[reps[0].clone(), reps[n - 1].clone()]));
    for x in &reps {
        for y in &reps {
            if let Some(f) = enumerate_cycles(tw, x, y, lattice, 1).into_iter().next() {
                if let Ok(c) = tw.cone_obj(x, y, &f) {
                    if !pool.contains(&c) {
                        pool.push(c);
                    }
                }
            }
        }
    }
    pool
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

fn validate(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    vec![Section::new("validate", validate_dgcat_with(cat, &objects(cat), c.exec))]
}

fn h0_section(cat: &Cat, _: &HarnessConfig) -> Vec<Section> {
    let objs = objects(cat);
    let h = h0(cat, &objs);
    let dims: Vec<Vec<usize>> = objs.iter().map(|&x| objs.iter().map(|&y| h.dim(x, y)).collect()).collect();
    vec![Section {
        name: "h0",
        report: check_h0_well_defined(cat, &objs),
        data: Some(json!({"dims": dims})),
    }]
}

fn quasi_equiv(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let fact = build_path(cat.clone(), &c.lattice);
    vec![
        Section::new("quasi-equiv/identity", is_quasi_equivalence(&Identity(cat.clone()), &c.lattice)),
        Section::new("quasi-equiv/path-unit", is_quasi_equivalence(&fact.i, &c.lattice)),
    ]
}

fn fibration(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let fact = build_path(cat.clone(), &c.lattice);
    vec![
        Section::new("fibration/path-ends", is_fibration(&fact.q, &c.lattice)),
        Section::new("fibration/terminal", is_fibration(&ToTerminal::new(cat.clone()), &c.lattice)),
    ]
}

fn path(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let fact = build_path(cat.clone(), &c.lattice);
    let factorization = factorization_report(&fact, &c.lattice);
    let cycles = check_cycle_law(&PathCategory::new(cat.clone()), &fact.objects, &c.sampler());
    let tw = Twisted::new(cat.clone());
    let pool: Vec<_> = twisted_pool(&tw, cat.len(), &c.lattice)
        .iter()
        .take(4)
        .map(|x| PathCategory::new(tw.clone()).identity_object(x))
        .collect();
    let cones = if pool.is_empty() {
        Report::new()
    } else {
        check_cone_matrix(&PathCategory::new(tw.clone()), &pool, 2, &c.sampler_scaled(10))
    };
    vec![
        Section {
            name: "path/factorization",
            report: factorization,
            data: Some(json!({"path_objects": fact.objects.len()})),
        },
        Section::new("path/cycle-law", cycles),
        Section::new("path/cone-matrix", cones),
    ]
}

fn pretr(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let tw = Twisted::new(cat.clone());
    let pool = twisted_pool(&tw, cat.len(), &c.lattice);
    let mut sections = vec![Section::new("pretr/dg-category", validate_dgcat_with(&tw, &pool, c.exec))];
    if !pool.is_empty() {
        sections.push(Section::new("pretr/triangles", check_pretriangulated(&tw, &pool, &c.sampler())));
    }
    sections
}

fn fam_laws(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let objs = objects(cat);
    vec![
        Section::new("fam-laws/monad", check_monad_laws(cat, &objs, &c.sampler())),
        Section::new("fam-laws/regularity", check_regularity(cat, &objs, c.cutoff, &c.sampler())),
    ]
}

fn algebra_check(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let families = families_up_to(cat.len(), 2);
    let tw = Twisted::new(cat.clone());
    let pool = twisted_pool(&tw, cat.len(), &c.lattice);
    vec![
        Section::new("algebra-check/free", check_algebra(&free_algebra(cat.clone()), &families, &c.sampler())),
        Section::new("algebra-check/additive-hull", check_algebra(&additive_hull(cat.clone()), &families, &c.sampler())),
        Section::new("algebra-check/twisted", check_algebra(&TwistedSums { carrier: tw }, &pool, &c.sampler())),
    ]
}

fn exact_check(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let e = canonical_exact(cat.clone());
    let objs = twisted_pool(e.tw(), cat.len(), &c.lattice);
    let pool = ExactPool::enumerate(e.tw(), objs, &c.lattice, 1);
    vec![Section {
        name: "exact-check",
        report: validate_exact(&e, &pool, &c.sampler()),
        data: Some(json!({"objects": pool.objects.len(), "cycles": pool.cycles.len()})),
    }]
}

fn ex_complete(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let families = families_up_to(cat.len(), 2);
    let config = CompletionConfig {
        budget: c.budget,
        lattice: c.lattice,
        sampler: c.sampler(),
        ..CompletionConfig::default()
    };
    let done = ex_completion(CompletionInput::from_families(cat.clone(), &families), &config);
    let mut report = Report::new();
    let sample = format!("{} seed families", families.len());
    report.push(if done.complete() {
        Check::pass("complete", sample.clone())
    } else {
        Check::fail("complete", sample.clone(), json!({"deficiencies": done.deficiencies.len()}))
    });
    if done.complete() {
        let again = done.rerun(&config);
        report.push(if again.adjoined() == 0 {
            Check::pass("fixed-point", sample)
        } else {
            Check::fail("fixed-point", sample, json!({"adjoined": again.adjoined()}))
        });
    }
    let embedding = FamilyEmbedding::new(cat.clone());
    let sums = TwistedSums {
        carrier: Twisted::new(cat.clone()),
    };
    let morphism = check_algebra_morphism(&embedding, &additive_hull(cat.clone()), &sums, &families, &c.sampler_scaled(4));
    vec![
        Section {
            name: "ex-complete",
            report,
            data: Some(done.to_json()),
        },
        Section::new("ex-complete/embedding", morphism),
    ]
}

fn dalpha_check(cat: &Cat, c: &HarnessConfig) -> Vec<Section> {
    let e = canonical_exact(cat.clone());
    let pool = twisted_pool(e.tw(), cat.len(), &c.lattice);
    if pool.is_empty() {
        return vec![Section::new("dalpha-check", Report::new())];
    }
    let sampler = c.sampler_scaled(10);
    let tests = c.sampler().with_count(10);
    let parts = sampler.run("dalpha-families", |i, rng| {
        let family = sample_family(rng, &pool, 3).0;
        let sample = format!("family {i} of length {}", family.len());
        let mut r = Report::new();
        match canonical_comparison(&e.sums, &family) {
            Ok(sc) => {
                r.push(if is_strict_iso(&e.sums, &sc) {
                    Check::pass("comparison-iso", sample)
                } else {
                    Check::fail("comparison-iso", sample, sc.morphism.to_json())
                });
                let tests = Sampler {
                    seed: tests.seed.wrapping_add(i as u64),
                    ..tests
                };
                r.extend(cone_acyclicity_report(&e.sums, &sc, &pool, &tests));
            }
            Err(err) => r.push(Check::fail("comparison-defined", sample, json!(err.to_string()))),
        }
        r
    });
    let mut report = Report::new();
    for p in parts {
        report.extend(p);
    }
    vec![Section::new("dalpha-check", report)]
}

fn sections(verb: &str, cat: &Cat, c: &HarnessConfig) -> Option<Vec<Section>> {
    let run: fn(&Cat, &HarnessConfig) -> Vec<Section> = match verb {
        "validate" => validate,
        "h0" => h0_section,
        "quasi-equiv" => quasi_equiv,
        "fibration" => fibration,
        "path" => path,
        "pretr" => pretr,
        "fam-laws" => fam_laws,
        "algebra-check" => algebra_check,
        "exact-check" => exact_check,
        "ex-complete" => ex_complete,
        "dalpha-check" => dalpha_check,
        "laws-all" => {
            return Some(VERBS[..VERBS.len() - 1].iter().flat_map(|v| sections(v, cat, c).unwrap_or_default()).collect());
        }
        _ => return None,
    };
    Some(run(cat, c))
}

/// Runs a verb and returns the report text and exit code: 0 when every
/// check passes, 1 on a failure, 2 for a bad configuration, 64 for an
/// unknown verb (with usage text instead of a report).
pub fn run(verb: &str, cat: &FiniteDgCategory, config: &HarnessConfig) -> (String, i32) {
    if !VERBS.contains(&verb) {
        return (usage(), EXIT_USAGE);
    }
    if let Err(e) = config.check() {
        return (format!("{}\n", json!({"error": e.to_string()})), EXIT_INPUT);
    }
    let cat = Arc::new(cat.clone());
    let sections = sections(verb, &cat, config).unwrap_or_default();
    let passed = sections.iter().all(|s| s.report.passed());
    let failures: usize = sections.iter().map(|s| s.report.failures().count()).sum();
    let body: Vec<Value> = sections
        .iter()
        .map(|s| {
            let mut v = json!({"name": s.name, "passed": s.report.passed(), "checks": s.report.to_json()});
            if let Some(d) = &s.data {
                v["data"] = d.clone();
            }
            v
        })
        .collect();
    let doc = json!({
        "verb": verb,
        "field": cat.field().tag(),
        "objects": cat.names(),
        "config": config.to_json(),
        "sections": body,
        "passed": passed,
        "failures": failures,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
    text.push('\n');
    (text, if passed { EXIT_PASS } else { EXIT_FAIL })
}
