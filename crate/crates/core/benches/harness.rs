use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dgex::dgcat::validate::validate_dgcat_with;
use dgex::exec::{Execution, Sampler};
use dgex::families::laws::check_monad_laws;
use dgex::harness::{run, twisted_pool, HarnessConfig};
use dgex::lattice::Lattice;
use dgex::path::{check_cone_matrix, PathCategory};
use dgex::twisted::generators::build_generators;
use dgex::twisted::Twisted;
use dgex::Field;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn dg_axioms(c: &mut Criterion) {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let pool = twisted_pool(&tw, 2, &Lattice::default());
    let mut group = c.benchmark_group("validate-twisted");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| validate_dgcat_with(&tw, &pool, exec))
        });
    }
    group.finish();
}

fn monad(c: &mut Criterion) {
    let g = build_generators(Field::Prime(5));
    let cat = g.cone.cat.clone();
    let mut group = c.benchmark_group("monad-laws");
    for (name, exec) in MODES {
        let sampler = Sampler {
            exec,
            ..Sampler::new(42, 100)
        };
        group.bench_function(name, |b| b.iter(|| check_monad_laws(&cat, &[0, 1, 2], &sampler)));
    }
    group.finish();
}

fn cone_matrix(c: &mut Criterion) {
    let g = build_generators(Field::Rational);
    let tw = Twisted::new(g.morphism.cat.clone());
    let path = PathCategory::new(tw.clone());
    let pool: Vec<_> = twisted_pool(&tw, 2, &Lattice::default())
        .iter()
        .map(|x| path.identity_object(x))
        .collect();
    let mut group = c.benchmark_group("cone-matrix");
    group.sample_size(10);
    for (name, exec) in MODES {
        let sampler = Sampler {
            exec,
            ..Sampler::new(42, 20)
        };
        group.bench_function(name, |b| b.iter(|| check_cone_matrix(&path, &pool, 4, &sampler)));
    }
    group.finish();
}

fn laws_all(c: &mut Criterion) {
    let cat = Arc::unwrap_or_clone(build_generators(Field::Rational).morphism.cat);
    let mut group = c.benchmark_group("laws-all");
    group.sample_size(10);
    for (name, exec) in MODES {
        let config = HarnessConfig {
            exec,
            ..HarnessConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| run("laws-all", &cat, &config)));
    }
    group.finish();
}

criterion_group!(benches, dg_axioms, monad, cone_matrix, laws_all);
criterion_main!(benches);
