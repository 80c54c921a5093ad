use num_bigint::BigInt;
use proptest::prelude::*;
use syzygy_core::linalg::{
    homology_dim, kernel_basis, rank_dense_mod_p, rank_integer, rank_wiedemann, span_reduce, Field, PrimeField,
    RankConfig, Rationals, SparseMatrix, SparseVec,
};

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i64)>)> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        let entries = proptest::collection::vec((0..r, 0..c, -3i64..4), 0..(r * c));
        (Just(r), Just(c), entries)
    })
}

fn build<F: Field>(f: &F, r: usize, c: usize, entries: &[(usize, usize, i64)]) -> SparseMatrix<F> {
    // Later duplicates overwrite earlier ones.
    let mut dense = vec![vec![0i64; c]; r];
    for &(i, j, v) in entries {
        dense[i][j] = v;
    }
    let triplets = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter(|&(i, j)| dense[i][j] != 0)
        .map(|(i, j)| (i, j, f.from_i64(dense[i][j])))
        .collect::<Vec<_>>();
    SparseMatrix::from_triplets(f, r, c, triplets).unwrap()
}

fn dense_u64(m: &SparseMatrix<PrimeField>) -> Vec<u64> {
    m.to_dense().into_iter().flatten().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_engines_agree((r, c, entries) in small_matrix(), prime_ix in 0usize..4) {
        let p = [2u64, 3, 7, 32003][prime_ix];
        let f = PrimeField::new(p).unwrap();
        let m = build(&f, r, c, &entries);
        let sparse = m.rank();
        prop_assert_eq!(sparse, rank_dense_mod_p(p, r, c, dense_u64(&m)));
        prop_assert_eq!(sparse, m.transpose().rank());
        // Forcing the dense switch immediately must not change the answer.
        let eager = PrimeField::with_config(p, RankConfig { dense_percent: 0, ..RankConfig::default() }).unwrap();
        prop_assert_eq!(sparse, build(&eager, r, c, &entries).rank());
    }

    #[test]
    fn modular_rank_bounded_by_rational_rank((r, c, entries) in small_matrix()) {
        let q = build(&Rationals, r, c, &entries);
        let over_q = q.rank();
        let ints: Vec<Vec<BigInt>> = (0..r)
            .map(|i| (0..c).map(|j| BigInt::from(entries.iter().rev().find(|e| e.0 == i && e.1 == j).map_or(0, |e| e.2))).collect())
            .collect();
        prop_assert_eq!(over_q, rank_integer(ints));
        for p in [2u64, 5, 32003] {
            prop_assert!(build(&PrimeField::new(p).unwrap(), r, c, &entries).rank() <= over_q);
        }
    }

    #[test]
    fn wiedemann_matches_elimination((r, c, entries) in small_matrix()) {
        let f = PrimeField::new(1_000_003).unwrap();
        let m = build(&f, r, c, &entries);
        prop_assert_eq!(rank_wiedemann(&m, 3, 11), m.rank());
    }

    #[test]
    fn kernel_vectors_are_killed((r, c, entries) in small_matrix()) {
        let f = PrimeField::new(7).unwrap();
        let m = build(&f, r, c, &entries);
        let (_, kernel) = kernel_basis(&m);
        prop_assert_eq!(kernel.len() + m.rank(), c);
        for v in &kernel {
            let mut dense = vec![0u64; c];
            for (i, x) in v {
                dense[*i] = *x;
            }
            prop_assert!(m.apply(&dense).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn echelon_coordinates_reconstruct((r, c, entries) in small_matrix()) {
        let f = PrimeField::new(11).unwrap();
        let m = build(&f, r, c, &entries);
        let cols: Vec<SparseVec<PrimeField>> = m
            .columns()
            .iter()
            .map(|col| col.iter().map(|(i, x)| (*i as usize, *x)).collect())
            .collect();
        let mut basis = span_reduce(&f, r, &cols);
        prop_assert_eq!(basis.dim(), m.rank());
        for v in &cols {
            let coords = basis.coordinates(v).unwrap();
            let mut back = basis.combine(&coords);
            back.retain(|(_, x)| *x != 0);
            let mut want = v.clone();
            want.retain(|(_, x)| *x != 0);
            prop_assert_eq!(back, want);
        }
    }
}

#[test]
fn homology_of_a_split_complex() {
    // 0 -> k --(1,0)--> k^2 --(0,1)--> k -> 0 is exact; replacing the second
    // map by zero leaves one-dimensional homology.
    let f = PrimeField::new(5).unwrap();
    let a = SparseMatrix::from_triplets(&f, 2, 1, vec![(0, 0, 1)]).unwrap();
    let b = SparseMatrix::from_triplets(&f, 1, 2, vec![(0, 1, 1)]).unwrap();
    assert_eq!(homology_dim(&a, &b).unwrap(), 0);
    let zero = SparseMatrix::zero(&f, 1, 2);
    assert_eq!(homology_dim(&a, &zero).unwrap(), 1);
    assert!(homology_dim(&a, &a.transpose()).is_err());
}
