use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperhec::synth::{random_digraph, random_uniform_hypergraph, reaction_network, seeded_rng, EdgeShape};
use hyperhec::{hec, hec_directed, KStepOperator, OrbitTensor, SolverConfig};

const SIZES: [usize; 3] = [100, 1_000, 10_000];

fn tensor_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor_apply");
    for n in SIZES {
        let h = random_uniform_hypergraph(&mut seeded_rng(1), n, 3, EdgeShape::Undirected, 4 * n, 0.5..2.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        let x = vec![1.0 / n as f64; n];
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| t.apply(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn kstep_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("kstep_apply");
    for k in [2, 3, 4] {
        let a = random_digraph(&mut seeded_rng(2), 2_000, 8_000, 0.5..2.0);
        let op = KStepOperator::new(a, k).unwrap();
        let x = vec![1.0; 2_000];
        group.bench_with_input(BenchmarkId::from_parameter(k), &x, |b, x| {
            b.iter(|| op.apply(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let cfg = SolverConfig {
        tol: 1e-8,
        ..SolverConfig::default()
    };
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for n in [100, 1_000] {
        let h = random_uniform_hypergraph(&mut seeded_rng(3), n, 3, EdgeShape::Undirected, 4 * n, 0.5..2.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        group.bench_with_input(BenchmarkId::new("hec", n), &t, |b, t| b.iter(|| hec(t, &cfg).unwrap()));
        let r = reaction_network(&mut seeded_rng(4), n, 2 * n);
        group.bench_with_input(BenchmarkId::new("hec_directed", n), &r, |b, r| {
            b.iter(|| hec_directed(r, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tensor_apply, kstep_apply, solvers);
criterion_main!(benches);
