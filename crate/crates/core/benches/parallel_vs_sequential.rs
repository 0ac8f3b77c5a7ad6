use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_qubits::analyze::analyze_batch;
use toric_qubits::measures::epsilon_contraction;
use toric_qubits::sample::haar_state;
use toric_qubits::toric::max_segre_residual_with;
use toric_qubits::Execution;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_epsilon(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = haar_state(4, &mut rng);
    let mut group = c.benchmark_group("epsilon_contraction");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| epsilon_contraction(black_box(s.amplitudes()), exec)));
    }
    group.finish();
}

fn bench_residual(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut group = c.benchmark_group("max_segre_residual");
    for m in [6usize, 8] {
        let s = haar_state(m, &mut rng);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, m), &s, |b, s| {
                b.iter(|| max_segre_residual_with(black_box(s), exec))
            });
        }
    }
    group.finish();
}

fn bench_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let states: Vec<_> = (0..64).map(|_| haar_state(4, &mut rng)).collect();
    let mut group = c.benchmark_group("analyze_batch_4q");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| analyze_batch(black_box(&states), 1e-10, exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_epsilon, bench_residual, bench_batch);
criterion_main!(benches);
