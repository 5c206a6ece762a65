use criterion::{criterion_group, criterion_main, Criterion};
use hyperjac_bench::ring;
use hyperjac_core::{Hypersurface, JacobianRing};

fn hilbert(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobian_ring");
    group.sample_size(10);
    for (n, degree) in [(4, 4), (5, 5), (3, 8)] {
        let x = Hypersurface::fermat(ring(n), degree).unwrap();
        group.bench_function(format!("fermat n={n} N={degree}"), |b| {
            b.iter(|| JacobianRing::new(&x).unwrap().hilbert_function())
        });
    }
    group.finish();
}

criterion_group!(benches, hilbert);
criterion_main!(benches);
