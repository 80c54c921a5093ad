use syzygy_core::gates::{
    expected_vanishing, run_theorem, theorem_records, theorem_verdict, Gate, Report, Suite, SuiteConfig, Theorem,
    TheoremConfig,
};
use syzygy_core::models::ModelSpec;
use syzygy_core::FieldSpec;

fn small_theorem_config(theorem: Theorem) -> TheoremConfig {
    TheoremConfig {
        genera: 3..=8,
        ..TheoremConfig::default_for(theorem)
    }
}

/// Brute-force statement of the tangent boundary for a prime `c`, written
/// directly from the inequalities rather than through `expected_vanishing`.
fn tangent_oracle(g: usize, p: usize, c: u64) -> Option<bool> {
    let b = (g - 3) / 2;
    let small = c != 0 && 2 * c <= g as u64 + 1;
    match (small, p.cmp(&b)) {
        (false, std::cmp::Ordering::Greater) => Some(false),
        (false, _) => Some(true),
        (true, std::cmp::Ordering::Less) => None,
        (true, _) => Some(false),
    }
}

#[test]
fn expectation_matches_the_inequalities() {
    for g in 3..=14 {
        for p in 0..=g - 3 {
            for c in [0u64, 2, 3, 5, 7, 11, 13] {
                assert_eq!(
                    expected_vanishing(Theorem::T1, g, p, c),
                    tangent_oracle(g, p, c),
                    "g={g} p={p} c={c}"
                );
            }
        }
    }
}

#[test]
fn tangent_sweep_passes_and_inverted_expectation_fails() {
    let cfg = small_theorem_config(Theorem::T1);
    let records = theorem_records(Theorem::T1, &cfg).unwrap();
    let ok = theorem_verdict(Theorem::T1, &records, |g, p, c| {
        expected_vanishing(Theorem::T1, g, p, c)
    });
    assert!(ok.passed, "{:?}", ok.failures);
    let inverted = theorem_verdict(Theorem::T1, &records, |g, p, c| {
        expected_vanishing(Theorem::T1, g, p, c).map(|v| !v)
    });
    assert!(!inverted.passed);
    assert_eq!(inverted.failures.len(), inverted.checked);
    // g = 3 in characteristic 2 is the smallest sharp case.
    let r = records.iter().find(|r| r.g == 3 && r.characteristic == 2).unwrap();
    assert_eq!(r.value, 1);
}

#[test]
fn carpet_sweep_passes() {
    let report = run_theorem(Theorem::T2, &small_theorem_config(Theorem::T2)).unwrap();
    assert!(report.passed(), "{}", report.summary());
    assert!(report.records.iter().all(|r| r.characteristic != 2));
    assert!(report
        .records
        .iter()
        .all(|r| r.q == 2 && r.model == "koszul-module:carpet"));
}

#[test]
fn reports_are_deterministic() {
    let cfg = small_theorem_config(Theorem::T1);
    let a = run_theorem(Theorem::T1, &cfg).unwrap();
    let b = run_theorem(Theorem::T1, &cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv(), b.to_csv());
    let back: Report = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert!(a.to_csv().starts_with("model,g,char,p,q,value,certification,ms\n"));
}

fn light_suite() -> Suite {
    Suite::new(SuiteConfig {
        chars: [0u64, 2, 3, 5].map(|c| FieldSpec::new(c).unwrap()).to_vec(),
        sweep_g_max: 9,
        rnc_g_max: 6,
        fiber_p_max: 3,
        curve_models: vec![ModelSpec::Elliptic { d: 9 }],
        ..SuiteConfig::default()
    })
}

#[test]
fn map_level_gates_pass() {
    let report = light_suite()
        .run(&[
            Gate::Exactness,
            Gate::Adjointness,
            Gate::Complex,
            Gate::Propagation,
            Gate::Fiber,
        ])
        .unwrap();
    assert!(report.passed(), "{}", report.summary());
    // The fiber at h = 1 fails in characteristic 3 once p + 2 >= 3.
    let h1 = |p, c| {
        report
            .records
            .iter()
            .find(|r| r.model == "fiber-h1:tangent" && r.p == p && r.characteristic == c)
            .unwrap()
            .value
    };
    assert_eq!(h1(0, 3), 1);
    assert_eq!(h1(1, 3), 0);
    assert_eq!(h1(1, 0), 1);
    assert_eq!(h1(0, 2), 0);
}

#[test]
fn table_gates_pass() {
    let report = light_suite()
        .run(&[
            Gate::Duality,
            Gate::Ends,
            Gate::Numerator,
            Gate::Hilbert,
            Gate::DirectVsGamma,
            Gate::EllipticBounds,
        ])
        .unwrap();
    assert!(report.passed(), "{}", report.summary());
    assert!(report.notes.iter().any(|n| n.contains("elliptic:d=9")));
    assert_eq!(
        report.verdict("direct-vs-gamma").unwrap().checked,
        2 * 2 * (1 + 2 + 3 + 4)
    );
}
