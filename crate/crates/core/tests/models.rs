use std::collections::BTreeMap;

use proptest::prelude::*;
use syzygy_core::koszul::{duality_check, hilbert_numerator_check, KoszulEngine, SectionRing};
use syzygy_core::models::{
    compute_betti_table, koszul_betti, load_ring, store_ring, BettiOptions, ModelError, ModelSpec,
};
use syzygy_core::{Certification, CharZeroPolicy, Error, FieldSpec, PrimeField};

fn table(spec: &str, characteristic: u64) -> syzygy_core::BettiTable {
    compute_betti_table(
        spec.parse().unwrap(),
        FieldSpec::new(characteristic).unwrap(),
        &CharZeroPolicy::default(),
        &BettiOptions::default(),
    )
    .unwrap()
}

/// Nonzero `(p, κ_{p,q})` of rows `q = 0..=3`.
fn rows(t: &syzygy_core::BettiTable) -> Vec<Vec<(usize, usize)>> {
    (0..=3).map(|q| t.row(q)).collect()
}

#[test]
fn elliptic_degree_nine() {
    let t = table("elliptic:d=9", 0);
    assert_eq!(t.certification, Certification::MultiPrimeChar0);
    assert_eq!(
        rows(&t),
        vec![
            vec![(0, 1)],
            vec![(1, 9), (2, 3)],
            vec![(1, 6), (2, 81), (3, 171), (4, 165), (5, 81), (6, 18), (7, 2)],
            vec![(6, 1)],
        ]
    );
    assert!(t.row(4).is_empty());
    assert_eq!(
        t.to_pretty(),
        concat!(
            "     0   1   2   3   4   5   6   7\n",
            "0:   1   -   -   -   -   -   -   -\n",
            "1:   -   9   3   -   -   -   -   -\n",
            "2:   -   6  81 171 165  81  18   2\n",
            "3:   -   -   -   -   -   -   1   -\n",
            "4:   -   -   -   -   -   -   -   -\n",
        )
    );
}

#[test]
fn elliptic_degree_ten() {
    let t = table("elliptic:d=10", 0);
    assert_eq!(
        rows(&t),
        vec![
            vec![(0, 1)],
            vec![(1, 15), (2, 20)],
            vec![(2, 70), (3, 252), (4, 350), (5, 260), (6, 105), (7, 20), (8, 2)],
            vec![(7, 1)],
        ]
    );
    assert_eq!(t.get(8, 3), 0);
}

#[test]
fn rational_normal_cubic_in_characteristic_five() {
    let t = table("tangent-rnc:g=3", 5);
    assert_eq!(t.certification, Certification::ExactFp);
    let nonzero: BTreeMap<_, _> = t
        .entries
        .iter()
        .filter(|(_, v)| **v != 0)
        .map(|(k, v)| (*k, *v))
        .collect();
    assert_eq!(nonzero, BTreeMap::from([((0, 0), 1), ((1, 3), 1)]));
}

#[test]
fn quintic_in_characteristic_three_has_a_quadratic_syzygy() {
    // (g+2)/2 = 3.5 > 3, so the vanishing of K_{1,2} fails.
    let t = table("tangent-rnc:g=5", 3);
    assert_ne!(t.get(1, 2), 0);
    assert_eq!(table("tangent-rnc:g=5", 0).get(1, 2), 0);
}

#[test]
fn rational_normal_curve_tables_are_self_dual() {
    for g in 3..=8 {
        for c in [0, 3, 7] {
            let t = table(&format!("tangent-rnc:g={g}"), c);
            assert!(duality_check(&t, g), "g={g} char={c}");
            assert_eq!(t.get(0, 0), 1);
            assert_eq!(t.get(g - 2, 3), 1);
        }
    }
}

#[test]
fn hilbert_functions_up_to_degree_four() {
    let f = PrimeField::new(32003).unwrap();
    for (spec, expect) in [
        ("tangent-rnc:g=4", [1, 5, 14, 29, 50]),
        ("tangent-rnc:g=7", [1, 8, 26, 56, 98]),
        ("elliptic:d=9", [1, 9, 36, 81, 144]),
        ("elliptic:d=10", [1, 10, 40, 90, 160]),
        ("genus2:deg13", [1, 12, 54, 124, 222]),
    ] {
        let spec: ModelSpec = spec.parse().unwrap();
        let ring = spec.build(&f, 4).unwrap();
        assert_eq!(ring.dims(), &expect, "{spec}");
        assert_eq!(ring.num_vars(), spec.dim_v());
    }
}

#[test]
fn preconditions_are_enforced() {
    let err = compute_betti_table(
        ModelSpec::TangentRnc { g: 3 },
        FieldSpec::new(2).unwrap(),
        &CharZeroPolicy::default(),
        &BettiOptions::default(),
    )
    .unwrap_err();
    assert_eq!(err, Error::Model(ModelError::CharTwoUnsupported));
    let f = PrimeField::new(7).unwrap();
    assert!(matches!(
        ModelSpec::Elliptic { d: 9 }.build(&f, 2),
        Err(ModelError::CharTooSmall { min: 10, .. })
    ));
}

#[test]
fn table_json_and_numerator() {
    let t = table("tangent-rnc:g=4", 0);
    let json = t.to_json();
    assert!(json.starts_with(
        r#"{"schema":1,"model":"tangent-rnc:g=4","char":0,"certification":"multi-prime-char0","entries":["#
    ));
    assert_eq!(syzygy_core::BettiTable::entries_from_json(&json).unwrap(), t.entries);
    let h = ModelSpec::TangentRnc { g: 4 }.hilbert();
    assert!(hilbert_numerator_check(&t, |m| h.value(m)));
    let mut broken = t.clone();
    *broken.entries.get_mut(&(1, 1)).unwrap() += 1;
    assert!(!hilbert_numerator_check(&broken, |m| h.value(m)));
}

#[test]
fn cached_rings_round_trip() {
    let dir = std::env::temp_dir().join(format!("syzygy-cache-test-{}", std::process::id()));
    let f = PrimeField::new(101).unwrap();
    let spec = ModelSpec::Elliptic { d: 9 };
    assert!(load_ring(&dir, &spec, &f, 3).unwrap().is_none());
    let ring = spec.build(&f, 3).unwrap();
    store_ring(&dir, &spec, &ring).unwrap();
    let back = load_ring(&dir, &spec, &f, 3).unwrap().unwrap();
    assert_eq!(back.dims(), ring.dims());
    for m in 0..3 {
        for v in 0..ring.num_vars() {
            assert_eq!(back.mult(v, m), ring.mult(v, m));
        }
    }
    let cached = compute_betti_table(
        spec,
        FieldSpec::new(101).unwrap(),
        &CharZeroPolicy::default(),
        &BettiOptions {
            cache_dir: Some(dir.clone()),
            ..BettiOptions::default()
        },
    )
    .unwrap();
    assert_eq!(cached.get(2, 2), 81);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn direct_cells_match_the_engine_table() {
    let f = PrimeField::new(32003).unwrap();
    let ring = ModelSpec::Elliptic { d: 9 }.build(&f, 4).unwrap();
    assert_eq!(koszul_betti(&ring, 1, 1).unwrap(), 9);
    assert_eq!(koszul_betti(&ring, 0, 0).unwrap(), 1);
    let (entries, _) = KoszulEngine::new(&ring).table(3, 2).unwrap();
    assert_eq!(entries[&(2, 1)], 3);
    assert_eq!(entries[&(1, 2)], 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dividing_out_a_regular_sequence_keeps_the_table(g in 3usize..7, prime_ix in 0usize..3, seed in any::<u64>()) {
        let c = [5u64, 7, 32003][prime_ix];
        let spec = ModelSpec::TangentRnc { g };
        let run = |reduce| {
            compute_betti_table(
                spec,
                FieldSpec::new(c).unwrap(),
                &CharZeroPolicy::default(),
                &BettiOptions { reduce, seed, q_max: 3, ..BettiOptions::default() },
            )
            .unwrap()
            .entries
        };
        prop_assert_eq!(run(true), run(false));
    }
}
