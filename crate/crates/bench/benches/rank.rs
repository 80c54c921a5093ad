use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syzygy_core::linalg::{rank_dense_mod_p, rank_mod_p, rank_wiedemann};
use syzygy_core::multilinear::gamma;
use syzygy_core::{MapVariant, PrimeField, SparseMatrix};

const P: u64 = 32003;

fn random_sparse(field: &PrimeField, n: usize, per_col: usize, seed: u64) -> SparseMatrix<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triplets: Vec<_> = (0..n)
        .flat_map(|c| (0..per_col).map(move |_| c))
        .map(|c| (rng.gen_range(0..n), c, rng.gen_range(1..P)))
        .collect();
    SparseMatrix::from_triplets(field, n, n, triplets).unwrap()
}

fn sparse_elimination(c: &mut Criterion) {
    let field = PrimeField::new(P).unwrap();
    let mut group = c.benchmark_group("rank_mod_p");
    for n in [500, 2000] {
        let m = random_sparse(&field, n, 4, n as u64);
        group.bench_with_input(BenchmarkId::new("random", n), &m, |b, m| b.iter(|| rank_mod_p(m)));
    }
    for g in [8, 10] {
        let m = gamma(g, 2, MapVariant::Tangent, &field).unwrap();
        group.bench_with_input(BenchmarkId::new("gamma-p2", g), &m, |b, m| b.iter(|| rank_mod_p(m)));
    }
    group.finish();
}

fn dense_and_wiedemann(c: &mut Criterion) {
    let field = PrimeField::new(P).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 200;
    let data: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..P)).collect();
    c.bench_function("rank_dense_mod_p/200", |b| {
        b.iter(|| rank_dense_mod_p(P, n, n, data.clone()))
    });
    let m = random_sparse(&field, 500, 3, 2);
    c.bench_function("rank_wiedemann/500", |b| b.iter(|| rank_wiedemann(&m, 1, 7)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = sparse_elimination, dense_and_wiedemann
}
criterion_main!(benches);
