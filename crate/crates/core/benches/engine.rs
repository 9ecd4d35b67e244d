use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use gpcode::code::{kernel_words, LinearCode};
use gpcode::constructions::Family;
use gpcode::field::FieldSpec;
use gpcode::geometry::{distances, DistanceOracle};
use gpcode::traces::{blocking_sets_of_size, DEFAULT_SUBSET_GUARD};

fn thread_counts() -> Vec<usize> {
    let n = std::env::var("GPCODE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if n > 1 { vec![1, n] } else { vec![1] }
}

fn bench_threads(c: &mut Criterion) {
    let hexagon = Family::Hexagon.build(2).unwrap();
    let w3 = Family::Wq.build(3).unwrap();
    let w3_dist = distances(&w3).unwrap();
    let hex_code = LinearCode::build(&hexagon, &FieldSpec::prime(5).unwrap()).unwrap();

    let mut group = c.benchmark_group("engine");
    group.sample_size(10);
    for threads in thread_counts() {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        group.bench_with_input(BenchmarkId::new("distances_h2", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| DistanceOracle::compute(&hexagon)))
        });
        group.bench_with_input(BenchmarkId::new("weight3_words_h2_gf5", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| kernel_words(hex_code.field(), hex_code.parity_check(), hex_code.length(), 3)))
        });
        group.bench_with_input(BenchmarkId::new("blocking_4_sets_w3", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| blocking_sets_of_size(&w3, &w3_dist, 4, DEFAULT_SUBSET_GUARD).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_threads);
criterion_main!(benches);
