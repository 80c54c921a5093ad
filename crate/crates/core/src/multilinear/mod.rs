//! Multilinear algebra over `U = <1, x>`: bases and the explicit maps
//! between symmetric, divided and exterior powers.

mod basis;
mod maps;

pub use basis::{binomial, wedge2, wedge2_index, wedge2_pairs, BasisSpace, MonomialBasis, WedgeBasis};
pub use maps::{
    co_wahl_delta, conic_inclusion, double_line_inclusion, fiber_dual_injectivity, gamma, gamma_in_degree, gamma_prime,
    gamma_prime_surjective, hermite_dims, kernel_regularity, koszul_module_dim, koszul_pair, line_bundle_cohomology,
    multiplication, tau_map, w_dim, wahl_map, KernelRegularity,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::LinalgError;

/// Which degenerate hyperplane section the dual Wahl map comes from: a
/// smooth conic (tangent developable) or a double line (K3 carpet).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapVariant {
    Tangent,
    Carpet,
}

impl fmt::Display for MapVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapVariant::Tangent => "tangent",
            MapVariant::Carpet => "carpet",
        })
    }
}

impl FromStr for MapVariant {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tangent" => Ok(MapVariant::Tangent),
            "carpet" => Ok(MapVariant::Carpet),
            other => Err(MapError::InvalidRange(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("the functional h is zero")]
    ZeroFunctional,

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
