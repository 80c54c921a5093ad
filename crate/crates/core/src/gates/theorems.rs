//! Vanishing of `K_{p,2}` computed as the homology of `mult ∘ γ`, swept over
//! genera and characteristics.
//!
//! With `b = ⌊(g-3)/2⌋`:
//!
//! * T1 (tangent surfaces of rational normal curves): the module vanishes for
//!   `p <= b` when the characteristic is 0 or at least `(g+2)/2`, and is
//!   nonzero at `p = b` in characteristics `2 <= c <= (g+1)/2`. Beyond the
//!   boundary it is nonzero in every characteristic. Below the boundary in
//!   small characteristic nothing is predicted.
//! * T2 (K3 carpets): the module vanishes for `p <= b` in characteristic 0
//!   and in every prime `c >= max(3, ⌊(g-1)/2⌋)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Report, Verdict};
use crate::error::Error;
use crate::koszul::CellRecord;
use crate::linalg::{run_certified, CharZeroPolicy, Field, FieldComputation, FieldSpec};
use crate::multilinear::{koszul_module_dim, MapError, MapVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
}

impl Theorem {
    pub fn variant(self) -> MapVariant {
        match self {
            Theorem::T1 => MapVariant::Tangent,
            Theorem::T2 => MapVariant::Carpet,
        }
    }

    /// Whether a characteristic belongs to the sweep for genus `g`.
    pub fn in_scope(self, g: usize, characteristic: u64) -> bool {
        match self {
            Theorem::T1 => true,
            Theorem::T2 => {
                characteristic == 0 || (characteristic != 2 && characteristic as usize >= ((g - 1) / 2).max(3))
            }
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(Theorem::T1),
            "T2" => Ok(Theorem::T2),
            _ => Err(format!("unknown theorem {s:?} (expected T1 or T2)")),
        }
    }
}

/// `Some(true)` if the module must vanish, `Some(false)` if it must not,
/// `None` where the theorem says nothing.
pub fn expected_vanishing(theorem: Theorem, g: usize, p: usize, characteristic: u64) -> Option<bool> {
    let b = (g - 3) / 2;
    match theorem {
        Theorem::T1 => {
            let good = characteristic == 0 || 2 * characteristic >= g as u64 + 2;
            if good {
                Some(p <= b)
            } else if p >= b {
                Some(false)
            } else {
                None
            }
        }
        Theorem::T2 => (p <= b && theorem.in_scope(g, characteristic)).then_some(true),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremConfig {
    pub genera: RangeInclusive<usize>,
    pub chars: Vec<FieldSpec>,
    pub policy: CharZeroPolicy,
    pub timings: bool,
}

impl TheoremConfig {
    /// `g = 3..=12` over `{0, 2, 3, 5, 7, 11, 13}`; characteristic 2 is
    /// dropped for T2.
    pub fn default_for(theorem: Theorem) -> Self {
        let chars = [0u64, 2, 3, 5, 7, 11, 13]
            .into_iter()
            .filter(|&c| theorem == Theorem::T1 || c != 2)
            .map(|c| FieldSpec::new(c).expect("listed characteristics are prime"))
            .collect();
        TheoremConfig {
            genera: 3..=12,
            chars,
            policy: CharZeroPolicy::default(),
            timings: false,
        }
    }
}

struct ModuleDim {
    g: usize,
    p: usize,
    variant: MapVariant,
}

impl FieldComputation for ModuleDim {
    type Output = usize;
    type Error = MapError;

    fn run<F: Field>(&self, field: &F) -> Result<usize, MapError> {
        koszul_module_dim(self.g, self.p, self.variant, field)
    }
}

/// `dim K_{p,2}` for every `g` in range, every in-scope characteristic and
/// every `0 <= p <= g-3`, as records with `q = 2`.
pub fn theorem_records(theorem: Theorem, config: &TheoremConfig) -> Result<Vec<CellRecord>, Error> {
    if config.genera.is_empty() || *config.genera.start() < 3 {
        return Err(MapError::InvalidRange(format!(
            "genus range {:?} must be nonempty and start at 3 or more",
            config.genera
        ))
        .into());
    }
    if config.chars.is_empty() {
        return Err(MapError::InvalidRange("no characteristics given".into()).into());
    }
    let variant = theorem.variant();
    let cells: Vec<(usize, FieldSpec, usize)> = config
        .genera
        .clone()
        .flat_map(|g| {
            config
                .chars
                .iter()
                .filter(move |c| theorem.in_scope(g, c.characteristic()))
                .flat_map(move |&c| (0..=g - 3).map(move |p| (g, c, p)))
        })
        .collect();
    let mut records = cells
        .par_iter()
        .map(|&(g, field, p)| {
            let start = Instant::now();
            let certified = run_certified(field, &config.policy, &ModuleDim { g, p, variant })?;
            Ok(CellRecord {
                model: format!("koszul-module:{variant}"),
                g,
                characteristic: field.characteristic(),
                p,
                q: 2,
                value: certified.value,
                certification: certified.certification,
                ms: config.timings.then(|| start.elapsed().as_millis()),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    records.sort_by_key(|r| (r.g, r.characteristic, r.p));
    Ok(records)
}

/// Compares each record with `expect(g, p, char)`.
pub fn theorem_verdict(
    theorem: Theorem,
    records: &[CellRecord],
    expect: impl Fn(usize, usize, u64) -> Option<bool>,
) -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in records {
        let Some(vanishes) = expect(r.g, r.p, r.characteristic) else {
            continue;
        };
        checked += 1;
        if (r.value == 0) != vanishes {
            let wanted = if vanishes { "zero" } else { "nonzero" };
            failures.push(format!(
                "g={} p={} char={}: expected {wanted}, found {}",
                r.g, r.p, r.characteristic, r.value
            ));
        }
    }
    Verdict::new(theorem.to_string(), checked, failures)
}

pub fn run_theorem(theorem: Theorem, config: &TheoremConfig) -> Result<Report, Error> {
    let records = theorem_records(theorem, config)?;
    let verdict = theorem_verdict(theorem, &records, |g, p, c| expected_vanishing(theorem, g, p, c));
    let mut report = Report::new();
    report.add(super::GateRun {
        verdict,
        records,
        notes: Vec::new(),
    });
    Ok(report)
}
