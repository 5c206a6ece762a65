use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperjac_bench::{field, random_sparse};
use hyperjac_core::rank_profile;

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_profile");
    for (size, density) in [(200, 0.05), (400, 0.05), (400, 0.3)] {
        let m = random_sparse(size, size, density, 7);
        group.bench_with_input(
            BenchmarkId::new(format!("density {density}"), size),
            &m,
            |b, m| b.iter(|| rank_profile(field(), black_box(m)).rank),
        );
    }
    group.finish();
}

criterion_group!(benches, rank);
criterion_main!(benches);
