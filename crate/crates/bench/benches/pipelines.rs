use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use quotcoh::lie::ce_complex;
use quotcoh::torus::torus_betti;
use quotcoh::witness::{build_bumps, verify_bounds};
use quotcoh::ExactMatrix;
use quotcoh_bench::{filiform_like, full_torus, irrational_t5};

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [8usize, 16, 32] {
        // Hilbert-like rational matrix: dense, full rank, growing denominators.
        let rows = (0..n)
            .map(|i| (0..n).map(|j| quotcoh::scalar::frac(1, (i + j + 1) as i64)).collect())
            .collect();
        let m = ExactMatrix::from_rows(rows);
        group.bench_with_input(BenchmarkId::new("hilbert", n), &m, |b, m| b.iter(|| black_box(m.rank())));
    }
    group.finish();
}

fn chevalley_eilenberg(c: &mut Criterion) {
    let mut group = c.benchmark_group("ce");
    group.sample_size(10);
    for dim in [5usize, 7, 9] {
        let g = filiform_like(dim);
        group.bench_with_input(BenchmarkId::new("filiform_betti", dim), &g, |b, g| {
            b.iter(|| black_box(ce_complex(g).betti().betti))
        });
    }
    group.finish();
}

fn torus_audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus");
    group.sample_size(10);
    for n in [3usize, 4] {
        let spec = full_torus(n, 3);
        group.bench_with_input(BenchmarkId::new("full_torus_trunc3", n), &spec, |b, s| {
            b.iter(|| black_box(torus_betti(s).unwrap().audited_modes))
        });
    }
    let spec = irrational_t5();
    group.bench_function("irrational_t5", |b| b.iter(|| black_box(torus_betti(&spec).unwrap().betti)));
    group.finish();
}

fn witness(c: &mut Criterion) {
    let ks: Vec<u32> = (2..=8).collect();
    let family = build_bumps(&ks, 4, 10_001).unwrap();
    let mut group = c.benchmark_group("witness");
    group.sample_size(10);
    group.bench_function("verify_bounds_k2_8_m4", |b| b.iter(|| black_box(verify_bounds(&family).unwrap().rows.len())));
    group.finish();
}

criterion_group!(benches, rank, chevalley_eilenberg, torus_audit, witness);
criterion_main!(benches);
