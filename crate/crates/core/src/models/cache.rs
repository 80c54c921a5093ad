//! On-disk memoization of graded pieces, one JSON file per model, field and
//! top degree.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ModelError, ModelSpec};
use crate::koszul::{GradedRing, SectionRing};
use crate::linalg::{Field, SparseMatrix};

#[derive(Serialize, Deserialize)]
struct CachedRing {
    model: String,
    characteristic: u64,
    num_vars: usize,
    dims: Vec<usize>,
    /// `mult[m][v]` as `(row, col, value)` triplets.
    mult: Vec<Vec<Vec<(usize, usize, String)>>>,
}

fn path_for(dir: &Path, spec: &ModelSpec, characteristic: u64, top: usize) -> PathBuf {
    let name: String = spec
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    dir.join(format!("{name}-char{characteristic}-top{top}.json"))
}

/// The cached ring, if a matching file exists.
pub fn load_ring<F: Field>(
    dir: &Path,
    spec: &ModelSpec,
    field: &F,
    top: usize,
) -> Result<Option<GradedRing<F>>, ModelError> {
    let path = path_for(dir, spec, field.characteristic(), top);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(ModelError::Cache(format!("{}: {e}", path.display()))),
    };
    let bad = |what: &str| ModelError::Cache(format!("{}: {what}", path.display()));
    let cached: CachedRing = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    if cached.model != spec.to_string() || cached.characteristic != field.characteristic() {
        return Err(bad("file describes a different model or field"));
    }
    let mut mult = Vec::with_capacity(cached.mult.len());
    for (m, level) in cached.mult.into_iter().enumerate() {
        let mut mats = Vec::with_capacity(level.len());
        for triplets in level {
            let rows = *cached.dims.get(m + 1).ok_or_else(|| bad("too many levels"))?;
            let entries = triplets
                .into_iter()
                .map(|(r, c, v)| {
                    field
                        .parse(&v)
                        .map(|x| (r, c, x))
                        .ok_or_else(|| bad("unreadable entry"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            mats.push(SparseMatrix::from_triplets(field, rows, cached.dims[m], entries)?);
        }
        mult.push(mats);
    }
    let ring = GradedRing::new(field, cached.num_vars, cached.dims, mult)?;
    Ok(Some(ring.with_hilbert(spec.hilbert())))
}

/// Writes `ring` to the cache directory, creating it if necessary.
pub fn store_ring<F: Field>(dir: &Path, spec: &ModelSpec, ring: &GradedRing<F>) -> Result<(), ModelError> {
    let field = ring.field();
    let top = ring.top_degree();
    let cached = CachedRing {
        model: spec.to_string(),
        characteristic: field.characteristic(),
        num_vars: ring.num_vars(),
        dims: ring.dims().to_vec(),
        mult: (0..top)
            .map(|m| {
                (0..ring.num_vars())
                    .map(|v| {
                        ring.mult(v, m)
                            .triplets()
                            .map(|(r, c, x)| (r, c, field.display(x)))
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    };
    let io = |e: std::io::Error| ModelError::Cache(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let path = path_for(dir, spec, field.characteristic(), top);
    let json = serde_json::to_string(&cached).map_err(|e| ModelError::Cache(e.to_string()))?;
    fs::write(path, json).map_err(io)
}
