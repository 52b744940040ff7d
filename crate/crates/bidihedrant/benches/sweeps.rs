use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use bidihedrant::matgf::{verify_mdq, verify_mdq_seq};

// Grid size is (q^d - 1) * d * e, so these span ~50k to ~1M candidate pairs.
const SWEEPS: &[(u32, u64, u64)] = &[(2, 64, 2), (3, 27, 1), (2, 256, 2)];

fn bench_mdq(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_mdq");
    for &(d, q, m) in SWEEPS {
        let label = format!("d{d}_q{q}_m{m}");
        group.bench_function(format!("parallel/{label}"), |b| {
            b.iter(|| verify_mdq(black_box(d), black_box(q), black_box(m)).unwrap())
        });
        group.bench_function(format!("sequential/{label}"), |b| {
            b.iter(|| verify_mdq_seq(black_box(d), black_box(q), black_box(m)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mdq);
criterion_main!(benches);
