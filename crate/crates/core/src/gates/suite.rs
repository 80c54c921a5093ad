//! The structural property suite.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GateRun, Report, Verdict};
use crate::error::Error;
use crate::koszul::{duality_failures, hilbert_numerator_check, BettiTable, CellRecord};
use crate::linalg::{run_certified, Certification, CharZeroPolicy, Field, FieldComputation, FieldSpec};
use crate::models::{compute_betti_table, koszul_betti, BettiOptions, ModelSpec};
use crate::multilinear::{
    binomial, co_wahl_delta, conic_inclusion, double_line_inclusion, fiber_dual_injectivity, gamma,
    gamma_prime_surjective, kernel_regularity, koszul_module_dim, multiplication, tau_map, wahl_map, MapVariant,
};

/// A named check of the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    /// The conic and double-line sequences: composites vanish, ranks add up.
    Exactness,
    /// `Δ` is the transpose of the Wahl map.
    Adjointness,
    /// `mult ∘ γ = 0`.
    Complex,
    /// `κ_{p,q} = κ_{g-p-2, 3-q}` on rational normal curve tables.
    Duality,
    /// `κ_{0,0} = 1` and `κ_{r-2,3} = 1` on every table.
    Ends,
    /// `dim R_m` against the Hilbert polynomial for `m <= 4`.
    Hilbert,
    /// The Hilbert numerator identity on every table.
    Numerator,
    /// Surjectivity of `γ'_p` propagates to `γ'_k` for `k > p`.
    Propagation,
    /// The fiber at `h = 1` fails exactly when `0 < char <= p + 2`, and a
    /// failing fiber is never seen together with surjective `γ'`.
    Fiber,
    /// Direct Koszul cohomology of the section ring against the `γ` route.
    DirectVsGamma,
    /// `K_{p,1} = 0` for `p >= ⌊(d-3)/2⌋` and `K_{p,2} = 0` for
    /// `p <= ⌊(d-7)/3⌋` on the elliptic tables, with row 2 starting right
    /// after that bound.
    EllipticBounds,
    /// `κ_{1,1} = (r-2)(r-3)/2 - 6·genus` on the curve tables.
    K11,
}

impl Gate {
    pub const ALL: [Gate; 12] = [
        Gate::Exactness,
        Gate::Adjointness,
        Gate::Complex,
        Gate::Duality,
        Gate::Ends,
        Gate::Hilbert,
        Gate::Numerator,
        Gate::Propagation,
        Gate::Fiber,
        Gate::DirectVsGamma,
        Gate::EllipticBounds,
        Gate::K11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::Exactness => "exactness",
            Gate::Adjointness => "adjointness",
            Gate::Complex => "complex",
            Gate::Duality => "duality",
            Gate::Ends => "ends",
            Gate::Hilbert => "hilbert",
            Gate::Numerator => "numerator",
            Gate::Propagation => "propagation",
            Gate::Fiber => "fiber",
            Gate::DirectVsGamma => "direct-vs-gamma",
            Gate::EllipticBounds => "elliptic-bounds",
            Gate::K11 => "k11",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gate::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| {
            let names: Vec<_> = Gate::ALL.iter().map(|g| g.name()).collect();
            format!("unknown gate {s:?} (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Characteristics for the map-level gates and the rational normal curve
    /// tables. Characteristic 2 is skipped where a gate does not apply.
    pub chars: Vec<FieldSpec>,
    pub policy: CharZeroPolicy,
    pub betti: BettiOptions,
    /// Largest `d` for the two short exact sequences.
    pub exactness_d_max: usize,
    pub adjoint_p_max: usize,
    /// Largest genus for the complex and propagation gates.
    pub sweep_g_max: usize,
    /// Largest genus of the rational normal curve tables.
    pub rnc_g_max: usize,
    pub fiber_p_max: usize,
    /// Seeded random functionals per `p`, on top of monomials and binomials.
    pub fiber_random: usize,
    /// Curve models whose char-0 tables enter the ends and numerator gates.
    pub curve_models: Vec<ModelSpec>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            chars: [0u64, 2, 3, 5, 7]
                .into_iter()
                .map(|c| FieldSpec::new(c).expect("listed characteristics are prime"))
                .collect(),
            policy: CharZeroPolicy::default(),
            betti: BettiOptions::default(),
            exactness_d_max: 8,
            adjoint_p_max: 6,
            sweep_g_max: 12,
            rnc_g_max: 9,
            fiber_p_max: 5,
            fiber_random: 8,
            curve_models: vec![
                ModelSpec::Elliptic { d: 9 },
                ModelSpec::Elliptic { d: 10 },
                ModelSpec::Genus2,
            ],
            seed: 0x5eed,
        }
    }
}

/// One observation of a map-level check. The meaning of `g`, `p` and `q`
/// depends on the check and is spelled out where the probe is made.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Probe {
    model: String,
    g: usize,
    p: usize,
    q: usize,
    value: usize,
    failure: Option<String>,
}

impl Probe {
    fn new(model: impl Into<String>, g: usize, p: usize, q: usize, value: usize) -> Self {
        Probe {
            model: model.into(),
            g,
            p,
            q,
            value,
            failure: None,
        }
    }

    fn fail_unless(mut self, ok: bool, why: impl FnOnce() -> String) -> Self {
        if !ok {
            self.failure = Some(why());
        }
        self
    }
}

#[derive(Clone, Debug)]
enum Check {
    Exactness {
        d_max: usize,
    },
    Adjointness {
        p_max: usize,
    },
    Complex {
        g_max: usize,
    },
    Propagation {
        g_max: usize,
    },
    Fiber {
        p_max: usize,
        g_max: usize,
        random: usize,
        seed: u64,
    },
    DirectVsGamma {
        g: usize,
    },
    Hilbert {
        spec: ModelSpec,
        m_max: usize,
    },
}

/// A check run over one characteristic; `characteristic` is the one asked
/// for, which differs from the field's own when proxy primes stand in for 0.
struct CheckTask {
    check: Check,
    characteristic: u64,
}

impl FieldComputation for CheckTask {
    type Output = Vec<Probe>;
    type Error = Error;

    fn run<F: Field>(&self, field: &F) -> Result<Vec<Probe>, Error> {
        let c = self.characteristic;
        match self.check {
            Check::Exactness { d_max } => exactness(field, c, d_max),
            Check::Adjointness { p_max } => Ok(adjointness(field, p_max)),
            Check::Complex { g_max } => complex(field, c, g_max),
            Check::Propagation { g_max } => Ok(propagation(field, c, g_max)),
            Check::Fiber {
                p_max,
                g_max,
                random,
                seed,
            } => fiber(field, c, p_max, g_max, random, seed),
            Check::DirectVsGamma { g } => direct_vs_gamma(field, g),
            Check::Hilbert { spec, m_max } => {
                let ring = spec.build(field, m_max)?;
                let h = spec.hilbert();
                Ok((0..=m_max)
                    .map(|m| {
                        let (found, expected) = (ring.dims()[m], h.value(m));
                        Probe::new(spec.to_string(), spec.degree(), 0, m, found).fail_unless(found == expected, || {
                            format!("{spec}: dim R_{m} = {found}, expected {expected}")
                        })
                    })
                    .collect())
            }
        }
    }
}

fn variants(characteristic: u64) -> Vec<MapVariant> {
    if characteristic == 2 {
        vec![MapVariant::Tangent]
    } else {
        vec![MapVariant::Tangent, MapVariant::Carpet]
    }
}

/// Probes carry `g = d`. The conic sequence is checked in characteristic 0,
/// the double-line sequence in every characteristic but 2 (with the rank
/// sum only in characteristic 0).
fn exactness<F: Field>(field: &F, c: u64, d_max: usize) -> Result<Vec<Probe>, Error> {
    let mut out = Vec::new();
    for d in 0..=d_max {
        let top = binomial(d + 3, 2);
        if c == 0 {
            let inc = conic_inclusion(d, field);
            let mu = wahl_map(d + 2, field);
            let zero = mu.compose(&inc).map_err(Error::from)?.is_zero();
            let sum = inc.rank() + mu.rank();
            out.push(
                Probe::new("conic-sequence", d, 0, 0, sum).fail_unless(zero && sum == top, || {
                    format!("d={d}: composite zero {zero}, rank sum {sum} against {top}")
                }),
            );
        }
        if c != 2 {
            let inc = double_line_inclusion(d, field);
            let tau = tau_map(d + 2, field);
            let zero = tau.compose(&inc).map_err(Error::from)?.is_zero();
            let rank = tau.rank();
            let sum_ok = c != 0 || inc.rank() + rank == top;
            out.push(
                Probe::new("double-line-sequence", d, 0, 0, rank)
                    .fail_unless(zero && rank == 2 * d + 3 && sum_ok, || {
                        format!("d={d} char={c}: composite zero {zero}, rank of tau {rank}, rank sum ok {sum_ok}")
                    }),
            );
        }
    }
    Ok(out)
}

/// Probes carry `p`; the value is the number of entries compared.
fn adjointness<F: Field>(field: &F, p_max: usize) -> Vec<Probe> {
    (0..=p_max)
        .map(|p| {
            let delta = co_wahl_delta(p, MapVariant::Tangent, field);
            let mu = wahl_map(p + 2, field);
            let same = delta.transpose().to_dense() == mu.to_dense();
            Probe::new("co-wahl-adjoint", 0, p, 0, delta.domain_dim() * delta.codomain_dim())
                .fail_unless(same, || format!("p={p}: Δ differs from the transpose of the Wahl map"))
        })
        .collect()
}

/// Probes carry `(g, p, q)`; the value is the number of nonzero entries of
/// `mult ∘ γ`.
fn complex<F: Field>(field: &F, c: u64, g_max: usize) -> Result<Vec<Probe>, Error> {
    let mut out = Vec::new();
    for variant in variants(c) {
        for g in 3..=g_max {
            for p in 0..=g - 3 {
                let q = g - p - 3;
                let gm = gamma(g, p, variant, field)?;
                let nnz = multiplication(q + 1, p + 3, field)
                    .compose(&gm)
                    .map_err(Error::from)?
                    .nnz();
                out.push(
                    Probe::new(format!("mult-gamma:{variant}"), g, p, q, nnz).fail_unless(nnz == 0, || {
                        format!("{variant} g={g} p={p} char={c}: mult ∘ γ has {nnz} nonzero entries")
                    }),
                );
            }
        }
    }
    Ok(out)
}

/// Probes carry `p`, `q = k` and `g = p + k + 3`, the genus at which `γ'_k`
/// computes `K_{p,2}`; the value is 1 for surjective.
fn propagation<F: Field>(field: &F, c: u64, g_max: usize) -> Vec<Probe> {
    let mut out = Vec::new();
    for variant in variants(c) {
        let model = format!("gamma-prime:{variant}");
        let mut p = 0;
        while 2 * p + 4 <= g_max {
            let base = gamma_prime_surjective(p, p, variant, field);
            out.push(Probe::new(&model, 2 * p + 3, p, p, base as usize));
            if base {
                for k in p + 1..=g_max - p - 3 {
                    let onto = gamma_prime_surjective(p, k, variant, field);
                    out.push(
                        Probe::new(&model, p + k + 3, p, k, onto as usize).fail_unless(onto, || {
                            format!("{variant} p={p} char={c}: γ'_{p} is onto but γ'_{k} is not")
                        }),
                    );
                }
            }
            p += 1;
        }
    }
    out
}

/// Structured functionals `x^a`, `x^a ± x^b`, then seeded random ones.
fn sample_functionals<F: Field>(field: &F, p: usize, random: usize, seed: u64) -> Vec<Vec<F::Elem>> {
    let n = p + 3;
    let unit = |a: usize| {
        let mut h = vec![field.zero(); n];
        h[a] = field.one();
        h
    };
    let mut out: Vec<Vec<F::Elem>> = (0..n).map(unit).collect();
    for a in 0..n {
        for b in a + 1..n {
            for sign in [1, -1] {
                let mut h = unit(b);
                h[a] = field.from_i64(sign);
                out.push(h);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..random {
        let h: Vec<F::Elem> = (0..n).map(|_| field.random(&mut rng)).collect();
        if h.iter().any(|x| !field.is_zero(x)) {
            out.push(h);
        }
    }
    out
}

/// Probes: `fiber-h1:<variant>` with value 1 when the fiber at `h = 1` is
/// injective, and `fiber-consistency:<variant>` with the number of failing
/// sampled fibers. Both carry `p`.
fn fiber<F: Field>(
    field: &F,
    c: u64,
    p_max: usize,
    g_max: usize,
    random: usize,
    seed: u64,
) -> Result<Vec<Probe>, Error> {
    let mut out = Vec::new();
    for variant in variants(c) {
        for p in 0..=p_max {
            let hs = sample_functionals(field, p, random, seed);
            let mut failing = 0;
            for h in &hs {
                if !fiber_dual_injectivity(p, h, variant, field)? {
                    failing += 1;
                }
            }
            if variant == MapVariant::Tangent {
                let injective = fiber_dual_injectivity(p, &hs[0], variant, field)?;
                let expect_failure = c != 0 && c as usize <= p + 2;
                out.push(Probe::new("fiber-h1:tangent", 0, p, 0, injective as usize).fail_unless(
                    injective != expect_failure,
                    || {
                        let wanted = if expect_failure { "fail" } else { "be injective" };
                        format!("p={p} char={c}: the fiber at h = 1 should {wanted}")
                    },
                ));
            }
            let mut probe = Probe::new(format!("fiber-consistency:{variant}"), 0, p, 0, failing);
            if failing > 0 {
                let regular = kernel_regularity(p, variant, field).regular;
                let k_max = g_max.saturating_sub(p + 3).max(p);
                let all_onto = (p..=k_max).all(|k| gamma_prime_surjective(p, k, variant, field));
                probe = probe.fail_unless(!(regular && all_onto), || {
                    format!("{variant} p={p} char={c}: {failing} fibers fail yet K is regular and every γ' is onto")
                });
            }
            out.push(probe);
        }
    }
    Ok(out)
}

/// Probes carry `(g, p)`: `direct-vs-gamma:k2` with `κ_{p,2}` of the section
/// ring and `direct-vs-gamma:k1` with `κ_{p+1,1}`.
fn direct_vs_gamma<F: Field>(field: &F, g: usize) -> Result<Vec<Probe>, Error> {
    let ring = ModelSpec::TangentRnc { g }.build(field, 3)?;
    let mut out = Vec::new();
    for p in 0..=g - 3 {
        let k2 = koszul_betti(&ring, p, 2)?;
        let module = koszul_module_dim(g, p, MapVariant::Tangent, field)?;
        out.push(
            Probe::new("direct-vs-gamma:k2", g, p, 2, k2).fail_unless(k2 == module, || {
                format!("g={g} p={p}: κ_{{p,2}} = {k2} but the Koszul module has dimension {module}")
            }),
        );
        let k1 = koszul_betti(&ring, p + 1, 1)?;
        let gm = gamma(g, p, MapVariant::Tangent, field)?;
        let kernel = gm.domain_dim() - gm.rank();
        out.push(
            Probe::new("direct-vs-gamma:k1", g, p + 1, 1, k1).fail_unless(k1 == kernel, || {
                format!("g={g} p={p}: κ_{{p+1,1}} = {k1} but dim ker γ = {kernel}")
            }),
        );
    }
    Ok(out)
}

/// Runs the suite, memoizing Betti tables across gates.
pub struct Suite {
    config: SuiteConfig,
    tables: Mutex<BTreeMap<(ModelSpec, u64), BettiTable>>,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Self {
        Suite {
            config,
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    /// Supplies a table computed elsewhere, so that it is not recomputed.
    pub fn insert_table(&self, spec: ModelSpec, table: BettiTable) {
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert((spec, table.characteristic), table);
    }

    pub fn table(&self, spec: ModelSpec, field: FieldSpec) -> Result<BettiTable, Error> {
        let key = (spec, field.characteristic());
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let table = compute_betti_table(spec, field, &self.config.policy, &self.config.betti)?;
        self.insert_table(spec, table.clone());
        Ok(table)
    }

    pub fn run(&self, gates: &[Gate]) -> Result<Report, Error> {
        let mut report = Report::new();
        for &gate in gates {
            report.add(self.run_gate(gate)?);
        }
        Ok(report)
    }

    pub fn run_gate(&self, gate: Gate) -> Result<GateRun, Error> {
        let cfg = &self.config;
        match gate {
            Gate::Exactness => self.map_gate(gate, &cfg.chars, |_| Check::Exactness {
                d_max: cfg.exactness_d_max,
            }),
            Gate::Adjointness => self.map_gate(gate, &cfg.chars, |_| Check::Adjointness {
                p_max: cfg.adjoint_p_max,
            }),
            Gate::Complex => self.map_gate(gate, &cfg.chars, |_| Check::Complex { g_max: cfg.sweep_g_max }),
            Gate::Propagation => self.map_gate(gate, &cfg.chars, |_| Check::Propagation { g_max: cfg.sweep_g_max }),
            Gate::Fiber => self.map_gate(gate, &cfg.chars, |_| Check::Fiber {
                p_max: cfg.fiber_p_max,
                g_max: cfg.sweep_g_max,
                random: cfg.fiber_random,
                seed: cfg.seed,
            }),
            Gate::DirectVsGamma => {
                let mut runs = Vec::new();
                for g in 3..=cfg.rnc_g_max {
                    for c in [0, smallest_good_prime(g)] {
                        runs.push(self.certified_probes(FieldSpec::new(c)?, Check::DirectVsGamma { g })?);
                    }
                }
                Ok(gate_from_probes(gate, runs))
            }
            Gate::Hilbert => {
                let mut runs = Vec::new();
                for (spec, field) in self.rnc_fields().into_iter().chain(self.curve_fields()) {
                    runs.push(self.certified_probes(field, Check::Hilbert { spec, m_max: 4 })?);
                }
                Ok(gate_from_probes(gate, runs))
            }
            Gate::Duality => {
                let mut checked = 0;
                let mut failures = Vec::new();
                let mut records = Vec::new();
                for (spec, field) in self.rnc_fields() {
                    let t = self.table(spec, field)?;
                    checked += 1;
                    let g = spec.degree();
                    let bad = duality_failures(&t, g);
                    if !bad.is_empty() {
                        failures.push(format!("{spec} char={}: duality fails at {bad:?}", t.characteristic));
                    }
                    records.extend(t.records());
                }
                let mut notes = Vec::new();
                for (spec, field) in self.curve_fields() {
                    let t = self.table(spec, field)?;
                    let r = spec.dim_v() - 1;
                    let bad = duality_failures(&t, r);
                    let outcome = if bad.is_empty() {
                        "holds".to_string()
                    } else {
                        format!("fails at {} cells", bad.len())
                    };
                    notes.push(format!(
                        "duality on {spec} (char {}): {outcome}; reported only",
                        t.characteristic
                    ));
                    records.extend(t.records());
                }
                Ok(GateRun {
                    verdict: Verdict::new(gate.name(), checked, failures),
                    records,
                    notes,
                })
            }
            Gate::Ends => self.table_gate(gate, &self.all_table_fields(), |spec, t| {
                let r = spec.dim_v() - 1;
                let (k00, k3) = (t.get(0, 0), t.get(r - 2, 3));
                (k00 == 1 && k3 == 1).then_some(()).ok_or_else(|| {
                    format!(
                        "{spec} char={}: κ_{{0,0}} = {k00}, κ_{{{},3}} = {k3}",
                        t.characteristic,
                        r - 2
                    )
                })
            }),
            Gate::Numerator => self.table_gate(gate, &self.all_table_fields(), |spec, t| {
                let h = spec.hilbert();
                hilbert_numerator_check(t, |m| h.value(m))
                    .then_some(())
                    .ok_or_else(|| format!("{spec} char={}: numerator identity fails", t.characteristic))
            }),
            Gate::EllipticBounds => {
                let fields: Vec<_> = [9, 10]
                    .map(|d| (ModelSpec::Elliptic { d }, FieldSpec::RATIONALS))
                    .to_vec();
                self.table_gate(gate, &fields, |spec, t| {
                    let d = spec.degree();
                    let mut errs = Vec::new();
                    let linear_bound = (d - 3) / 2;
                    let row1: Vec<usize> = t
                        .row(1)
                        .into_iter()
                        .map(|(p, _)| p)
                        .filter(|&p| p >= linear_bound)
                        .collect();
                    if !row1.is_empty() {
                        errs.push(format!("K_{{p,1}} nonzero at p = {row1:?} (bound {linear_bound})"));
                    }
                    let quad_bound = (d - 7) / 3;
                    let first = t.row(2).first().map(|(p, _)| *p);
                    if first != Some(quad_bound + 1) {
                        errs.push(format!("row 2 starts at {first:?}, expected p = {}", quad_bound + 1));
                    }
                    errs.is_empty()
                        .then_some(())
                        .ok_or_else(|| format!("{spec}: {}", errs.join("; ")))
                })
            }
            Gate::K11 => {
                let fields: Vec<_> = [
                    ModelSpec::Elliptic { d: 9 },
                    ModelSpec::Elliptic { d: 10 },
                    ModelSpec::Genus2,
                ]
                .map(|s| (s, FieldSpec::RATIONALS))
                .to_vec();
                self.table_gate(gate, &fields, |spec, t| {
                    let (found, expected) = (t.get(1, 1) as i64, spec.expected_k11());
                    (found == expected)
                        .then_some(())
                        .ok_or_else(|| format!("{spec}: κ_{{1,1}} = {found}, expected {expected}"))
                })
            }
        }
    }

    fn rnc_fields(&self) -> Vec<(ModelSpec, FieldSpec)> {
        (3..=self.config.rnc_g_max)
            .flat_map(|g| {
                self.config
                    .chars
                    .iter()
                    .filter(|c| c.characteristic() != 2)
                    .map(move |&c| (ModelSpec::TangentRnc { g }, c))
            })
            .collect()
    }

    fn curve_fields(&self) -> Vec<(ModelSpec, FieldSpec)> {
        self.config
            .curve_models
            .iter()
            .map(|&s| (s, FieldSpec::RATIONALS))
            .collect()
    }

    fn all_table_fields(&self) -> Vec<(ModelSpec, FieldSpec)> {
        let mut v = self.rnc_fields();
        v.extend(self.curve_fields());
        v
    }

    fn certified_probes(&self, field: FieldSpec, check: Check) -> Result<(u64, Certification, Vec<Probe>), Error> {
        let task = CheckTask {
            check,
            characteristic: field.characteristic(),
        };
        let certified = run_certified(field, &self.config.policy, &task)?;
        Ok((field.characteristic(), certified.certification, certified.value))
    }

    fn map_gate(&self, gate: Gate, chars: &[FieldSpec], check: impl Fn(FieldSpec) -> Check) -> Result<GateRun, Error> {
        let runs = chars
            .iter()
            .map(|&c| self.certified_probes(c, check(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(gate_from_probes(gate, runs))
    }

    fn table_gate(
        &self,
        gate: Gate,
        fields: &[(ModelSpec, FieldSpec)],
        check: impl Fn(&ModelSpec, &BettiTable) -> Result<(), String>,
    ) -> Result<GateRun, Error> {
        let mut failures = Vec::new();
        let mut records = Vec::new();
        for &(spec, field) in fields {
            let t = self.table(spec, field)?;
            if let Err(e) = check(&spec, &t) {
                failures.push(e);
            }
            records.extend(t.records());
        }
        Ok(GateRun {
            verdict: Verdict::new(gate.name(), fields.len(), failures),
            records,
            notes: Vec::new(),
        })
    }
}

/// The smallest prime `c` with `2c >= g + 2`.
fn smallest_good_prime(g: usize) -> u64 {
    (2..)
        .find(|&c: &u64| 2 * c >= g as u64 + 2 && crate::linalg::is_prime(c))
        .expect("primes are unbounded")
}

fn gate_from_probes(gate: Gate, runs: Vec<(u64, Certification, Vec<Probe>)>) -> GateRun {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut records = Vec::new();
    for (characteristic, certification, probes) in runs {
        for probe in probes {
            checked += 1;
            if let Some(f) = probe.failure {
                failures.push(f);
            }
            records.push(CellRecord {
                model: probe.model,
                g: probe.g,
                characteristic,
                p: probe.p,
                q: probe.q,
                value: probe.value,
                certification,
                ms: None,
            });
        }
    }
    GateRun {
        verdict: Verdict::new(gate.name(), checked, failures),
        records,
        notes: Vec::new(),
    }
}
