use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kmholim::examples;
use kmholim::holim::{LimContext, Method};
use kmholim::Variant;

fn limits(c: &mut Criterion) {
    let mut group = c.benchmark_group("lim_table");
    group.sample_size(10);
    let cases = [
        ("two_spherical", examples::two_spherical(), 8),
        ("affine_a2", examples::affine_a2(), 8),
    ];
    for (name, gcm, d) in cases {
        let ctx = LimContext::new(&gcm, Variant::Full).expect("spherical poset");
        group.bench_with_input(BenchmarkId::new("parallel", name), &d, |b, &d| {
            b.iter(|| black_box(ctx.table(d, Method::Reduced)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", name), &d, |b, &d| {
            b.iter(|| black_box(ctx.table_seq(d, Method::Reduced)))
        });
    }
    group.finish();
}

criterion_group!(benches, limits);
criterion_main!(benches);
