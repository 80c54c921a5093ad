use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::linalg::Certification;

/// Version of the JSON layout written by [`BettiTable::to_json`].
pub const TABLE_SCHEMA: u32 = 1;

/// Graded Betti numbers `κ_{p,q}` of a model over one characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// Model identifier such as `elliptic:d=9`.
    pub model: String,
    /// Genus for rational normal curves, embedding degree otherwise.
    pub g_or_degree: usize,
    /// `dim V = r + 1`.
    pub dim_v: usize,
    pub characteristic: u64,
    pub certification: Certification,
    /// Set when an exact rational recomputation disagreed.
    pub flagged: Option<String>,
    pub p_max: usize,
    pub q_max: usize,
    pub entries: BTreeMap<(usize, usize), usize>,
    /// Milliseconds spent on the rank of the differential leaving each cell.
    pub timings_ms: Option<BTreeMap<(usize, usize), u128>>,
}

/// One cell of a report, as written to CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub model: String,
    pub g: usize,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub p: usize,
    pub q: usize,
    pub value: usize,
    pub certification: Certification,
    pub ms: Option<u128>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    p: usize,
    q: usize,
    v: usize,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    schema: u32,
    model: String,
    #[serde(rename = "char")]
    characteristic: u64,
    certification: Certification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flagged: Option<String>,
    entries: Vec<JsonEntry>,
}

impl BettiTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero entries of row `q`, as `(p, κ_{p,q})`.
    pub fn row(&self, q: usize) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|((_, qq), v)| *qq == q && **v != 0)
            .map(|((p, _), v)| (*p, *v))
            .collect()
    }

    /// `{"schema":1,"model":…,"char":…,"certification":…,"entries":[{"p","q","v"}]}`
    /// with one entry per computed cell, zeros included.
    pub fn to_json(&self) -> String {
        let t = JsonTable {
            schema: TABLE_SCHEMA,
            model: self.model.clone(),
            characteristic: self.characteristic,
            certification: self.certification,
            flagged: self.flagged.clone(),
            entries: self.entries.iter().map(|(&(p, q), &v)| JsonEntry { p, q, v }).collect(),
        };
        serde_json::to_string(&t).expect("table serializes")
    }

    /// Entries of a JSON table, keyed by `(p, q)`; used for golden files.
    pub fn entries_from_json(json: &str) -> Result<BTreeMap<(usize, usize), usize>, serde_json::Error> {
        let t: JsonTable = serde_json::from_str(json)?;
        Ok(t.entries.into_iter().map(|e| ((e.p, e.q), e.v)).collect())
    }

    /// The usual layout: one row per `q`, one column per `p`, `-` for zero.
    /// Columns run up to the last `p` carrying a nonzero entry.
    pub fn to_pretty(&self) -> String {
        let last_p = self
            .entries
            .iter()
            .filter(|(_, v)| **v != 0)
            .map(|((p, _), _)| *p)
            .max()
            .unwrap_or(0);
        let cell = |p: usize, q: usize| match self.get(p, q) {
            0 => "-".to_string(),
            v => v.to_string(),
        };
        let width = (0..=last_p)
            .flat_map(|p| (0..=self.q_max).map(move |q| (p, q)))
            .map(|(p, q)| cell(p, q).len())
            .chain((0..=last_p).map(|p| p.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = self.q_max.to_string().len() + 1;
        let mut out = String::new();
        let _ = write!(out, "{:label$}", "");
        for p in 0..=last_p {
            let _ = write!(out, " {p:>width$}");
        }
        out.push('\n');
        for q in 0..=self.q_max {
            let _ = write!(out, "{:<label$}", format!("{q}:"));
            for p in 0..=last_p {
                let _ = write!(out, " {:>width$}", cell(p, q));
            }
            out.push('\n');
        }
        out
    }

    /// One record per computed cell, in `(p, q)` order.
    pub fn records(&self) -> Vec<CellRecord> {
        self.entries
            .iter()
            .map(|(&(p, q), &value)| CellRecord {
                model: self.model.clone(),
                g: self.g_or_degree,
                characteristic: self.characteristic,
                p,
                q,
                value,
                certification: self.certification,
                ms: self.timings_ms.as_ref().and_then(|t| t.get(&(p, q)).copied()),
            })
            .collect()
    }
}

impl CellRecord {
    pub const CSV_HEADER: &'static str = "model,g,char,p,q,value,certification,ms";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.model,
            self.g,
            self.characteristic,
            self.p,
            self.q,
            self.value,
            self.certification,
            self.ms.map(|m| m.to_string()).unwrap_or_default()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BettiTable {
        let mut entries = BTreeMap::new();
        for p in 0..4 {
            for q in 0..4 {
                entries.insert((p, q), 0);
            }
        }
        entries.insert((0, 0), 1);
        entries.insert((1, 3), 1);
        BettiTable {
            model: "tangent-rnc:g=3".into(),
            g_or_degree: 3,
            dim_v: 4,
            characteristic: 5,
            certification: Certification::ExactFp,
            flagged: None,
            p_max: 3,
            q_max: 3,
            entries,
            timings_ms: None,
        }
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let json = t.to_json();
        assert!(json
            .starts_with(r#"{"schema":1,"model":"tangent-rnc:g=3","char":5,"certification":"exact-Fp","entries":["#));
        assert_eq!(BettiTable::entries_from_json(&json).unwrap(), t.entries);
    }

    #[test]
    fn pretty_layout() {
        assert_eq!(sample().to_pretty(), "   0 1\n0: 1 -\n1: - -\n2: - -\n3: - 1\n");
    }

    #[test]
    fn csv_rows() {
        let r = &sample().records()[0];
        assert_eq!(r.to_csv(), "tangent-rnc:g=3,3,5,0,0,1,exact-Fp,");
    }
}
