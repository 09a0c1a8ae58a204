use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sdrep_bench::{convhull, dense_matrix};
use sdrep_core::{membership, Point};

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_min");
    for k in [4, 14, 40] {
        let m = dense_matrix(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &m, |b, m| {
            b.iter(|| black_box(m).lambda_min())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let rep = convhull();
    let mut group = c.benchmark_group("membership_convhull");
    group.sample_size(20);
    for (name, p) in [("inside", [1.0, 1.0]), ("outside", [-0.1, 1.0])] {
        let x = Point::new(p.to_vec());
        group.bench_function(name, |b| {
            b.iter(|| membership(black_box(&rep), black_box(&x), 1e-6, 1e6).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, eigen, oracle);
criterion_main!(benches);
