use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_integer::Integer;

use knotcert::exec::Execution;
use knotcert::obstruct::{lens_generic, topological_sweep};
use knotcert::signature::{braid_seifert_matrix, sigma_oracle, torus_jumps};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(e: Execution) -> &'static str {
    match e {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

fn oracle_sweep(c: &mut Criterion) {
    let pairs: Vec<(i64, i64)> = (2..=4i64)
        .flat_map(|r| {
            (r + 1..=30 / r)
                .filter(move |s| r.gcd(s) == 1)
                .map(move |s| (r, s))
        })
        .collect();
    let mut group = c.benchmark_group("signature_oracle");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(
            BenchmarkId::from_parameter(label(mode)),
            &pairs,
            |b, pairs| {
                b.iter(|| {
                    mode.map(pairs.clone(), |(r, s)| {
                        let v = braid_seifert_matrix(r, s).unwrap();
                        let spectrum = torus_jumps(r, s).unwrap();
                        spectrum
                            .midpoints()
                            .iter()
                            .map(|t| sigma_oracle(&v, t).unwrap())
                            .sum::<i64>()
                    })
                })
            },
        );
    }
    group.finish();
}

fn topological(c: &mut Criterion) {
    let mut group = c.benchmark_group("topological_sweep");
    for mode in MODES {
        group.bench_function(label(mode), |b| {
            b.iter(|| topological_sweep(5, 2, 3, black_box(16), mode))
        });
    }
    group.finish();
}

fn congruence(c: &mut Criterion) {
    let jobs: Vec<(i64, i64, i64)> = (2..=16i64)
        .flat_map(|p| {
            (1..p)
                .filter(move |q| p.gcd(q) == 1)
                .flat_map(move |q| (1..p).filter(move |l| 2 * l != p).map(move |l| (p, q, l)))
        })
        .collect();
    let mut group = c.benchmark_group("lens_generic_sweep");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(
            BenchmarkId::from_parameter(label(mode)),
            &jobs,
            |b, jobs| {
                b.iter(|| {
                    mode.map(jobs.clone(), |(p, q, l)| {
                        lens_generic(p, q, l).unwrap().is_distinguished()
                    })
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, oracle_sweep, topological, congruence);
criterion_main!(benches);
