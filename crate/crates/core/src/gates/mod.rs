//! Theorem sweeps and property suites, collected into reports.
//!
//! Every check records the cells it looked at, and its verdict is computed
//! from those cells alone. A [`Report`] gathers the records of several
//! gates, sorted so that identical configurations give identical output.

mod suite;
mod theorems;

pub use suite::{Gate, Suite, SuiteConfig};
pub use theorems::{expected_vanishing, run_theorem, theorem_records, theorem_verdict, Theorem, TheoremConfig};

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::koszul::CellRecord;

/// Version of the report layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Outcome of one gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub gate: String,
    pub passed: bool,
    /// Number of cells the verdict was decided on.
    pub checked: usize,
    /// One line per failing cell.
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn new(gate: impl Into<String>, checked: usize, failures: Vec<String>) -> Self {
        Verdict {
            gate: gate.into(),
            passed: failures.is_empty(),
            checked,
            failures,
        }
    }
}

/// The cells one gate looked at, with its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateRun {
    pub verdict: Verdict,
    pub records: Vec<CellRecord>,
    /// Observations that are reported but do not affect the verdict.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub records: Vec<CellRecord>,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema: REPORT_SCHEMA,
            records: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, run: GateRun) {
        self.records.extend(run.records);
        self.verdicts.push(run.verdict);
        self.notes.extend(run.notes);
        self.normalize();
    }

    /// Sorts records by `(model, g, char, p, q)` and drops exact duplicates,
    /// which arise when two gates read the same table.
    fn normalize(&mut self) {
        self.records.sort_by(|a, b| {
            (&a.model, a.g, a.characteristic, a.p, a.q).cmp(&(&b.model, b.g, b.characteristic, b.p, b.q))
        });
        let mut seen = HashSet::new();
        self.records
            .retain(|r| seen.insert((r.model.clone(), r.g, r.characteristic, r.p, r.q, r.value)));
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, gate: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.gate == gate)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CellRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }

    /// One `PASS`/`FAIL` line per gate, failing cells indented below.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let status = if v.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {} ({} cells)", v.gate, v.checked);
            for f in &v.failures {
                let _ = writeln!(out, "  {f}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
