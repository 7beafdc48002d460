use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nbamin::{
    build_encoding, complement_nba, minimize, reduce, seed_words, CandidateOptions, CandidateQuery,
    MinimizationConfig,
};
use nbamin_bench::random_suite;

fn bench_reduce(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce");
    for states in [5, 10, 20] {
        let suite = random_suite(states, 2, 0..20);
        g.bench_with_input(BenchmarkId::from_parameter(states), &suite, |b, suite| {
            b.iter(|| {
                suite
                    .iter()
                    .map(|a| reduce(black_box(a)).num_states())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn bench_complement(c: &mut Criterion) {
    let mut g = c.benchmark_group("complement");
    g.sample_size(20);
    for states in [2, 3, 4] {
        let suite = random_suite(states, 2, 0..10);
        g.bench_with_input(BenchmarkId::from_parameter(states), &suite, |b, suite| {
            b.iter(|| {
                suite
                    .iter()
                    .map(|a| complement_nba(black_box(a)).unwrap().num_states())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn bench_encoding(c: &mut Criterion) {
    let a = &random_suite(4, 2, 0..1)[0];
    let samples = seed_words(a).unwrap();
    let options = CandidateOptions::default();
    let mut g = c.benchmark_group("encoding");
    for n in [2, 4, 8] {
        let q = CandidateQuery {
            n,
            alphabet: a.alphabet(),
            samples: &samples,
            options: &options,
        };
        g.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| build_encoding(black_box(&q)).unwrap().2.clause_count)
        });
    }
    g.finish();
}

fn bench_minimize(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimize");
    g.sample_size(10);
    let cfg = MinimizationConfig::default();
    for states in [3, 4] {
        let suite = random_suite(states, 2, 0..5);
        g.bench_with_input(BenchmarkId::from_parameter(states), &suite, |b, suite| {
            b.iter(|| {
                suite
                    .iter()
                    .map(|a| minimize(black_box(a), &cfg).unwrap().automaton.num_states())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_reduce,
    bench_complement,
    bench_encoding,
    bench_minimize
);
criterion_main!(benches);
