//! Section rings of tangent developable surfaces.
//!
//! Each surface is parametrized as `(P, u) ↦ φ(P) + u·Dφ(P)` where `φ` lists
//! a basis of sections on the curve and `D` is a nowhere-vanishing
//! derivation of its function field. The degree-`m` piece of the section
//! ring is the span of all `m`-fold products of the coordinates of this
//! parametrization, computed in normal-form coordinates:
//!
//! * rational normal curve of degree `g`: `φ_i = s^i`, `D = d/ds`, so the
//!   generators are `s^i + i u s^{i-1}`;
//! * the plane cubic `y^2 = x^3 - x` with sections `x^i y^j`, `2i + 3j <= d`,
//!   and `D = 2y ∂_x + (3x^2 - 1) ∂_y`;
//! * the curve `s^2 (t^3 + 1) + t^2 - t = 0` of bidegree `(2, 3)` with
//!   sections `s^a t^b`, `a <= 3`, `b <= 2`, and the Hamiltonian derivation
//!   `F_t ∂_s - F_s ∂_t`, computed in the Laurent ring in `s` with basis
//!   `1, t, t^2`.

mod build;
mod cache;
mod poly;

pub use build::{compute_betti_table, koszul_betti, BettiOptions, TableData};
pub use cache::{load_ring, store_ring};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::koszul::{GradedRing, KoszulError, QuadraticHilbert};
use crate::linalg::{Field, LinalgError};
use poly::{Derivation, IntPoly, Mono, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("the tangent surface of a rational normal curve is not modelled in characteristic 2")]
    CharTwoUnsupported,

    #[error("unsupported degree {degree} (allowed: {allowed})")]
    UnsupportedDegree { degree: usize, allowed: &'static str },

    #[error("characteristic {characteristic} is too small for this model (need 0 or at least {min})")]
    CharTooSmall { characteristic: u64, min: u64 },

    #[error("unknown model {0:?} (expected tangent-rnc:g=N, elliptic:d=N or genus2:deg13)")]
    UnknownModel(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Koszul(#[from] KoszulError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A surface model, addressed on the command line as `tangent-rnc:g=<n>`,
/// `elliptic:d=<n>` or `genus2:deg13`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelSpec {
    TangentRnc { g: usize },
    Elliptic { d: usize },
    Genus2,
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::TangentRnc { g } => write!(f, "tangent-rnc:g={g}"),
            ModelSpec::Elliptic { d } => write!(f, "elliptic:d={d}"),
            ModelSpec::Genus2 => f.write_str("genus2:deg13"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ModelError::UnknownModel(s.to_string());
        let number = |rest: &str, key: &str| -> Result<usize, ModelError> {
            rest.strip_prefix(key).and_then(|n| n.parse().ok()).ok_or_else(unknown)
        };
        let spec = match s.split_once(':') {
            Some(("tangent-rnc", rest)) => ModelSpec::TangentRnc { g: number(rest, "g=")? },
            Some(("elliptic", rest)) => ModelSpec::Elliptic { d: number(rest, "d=")? },
            Some(("genus2", "deg13")) => ModelSpec::Genus2,
            _ => return Err(unknown()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ModelSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            ModelSpec::TangentRnc { g } if g < 3 => Err(ModelError::UnsupportedDegree {
                degree: g,
                allowed: "g >= 3",
            }),
            ModelSpec::Elliptic { d } if !(7..=16).contains(&d) => Err(ModelError::UnsupportedDegree {
                degree: d,
                allowed: "7 <= d <= 16",
            }),
            _ => Ok(()),
        }
    }

    /// Genus of the underlying curve.
    pub fn curve_genus(&self) -> usize {
        match self {
            ModelSpec::TangentRnc { .. } => 0,
            ModelSpec::Elliptic { .. } => 1,
            ModelSpec::Genus2 => 2,
        }
    }

    /// Degree of the curve in its embedding; for rational normal curves this
    /// is also the `g` of the theorems.
    pub fn degree(&self) -> usize {
        match *self {
            ModelSpec::TangentRnc { g } => g,
            ModelSpec::Elliptic { d } => d,
            ModelSpec::Genus2 => 13,
        }
    }

    /// `dim V = r + 1`, the number of homogeneous coordinates.
    pub fn dim_v(&self) -> usize {
        self.degree() + 1 - self.curve_genus()
    }

    /// `H(m) = (deg + genus - 1) m^2 + 2 - 2 genus` for `m >= 1`.
    pub fn hilbert(&self) -> QuadraticHilbert {
        let (deg, genus) = (self.degree() as i64, self.curve_genus() as i64);
        QuadraticHilbert {
            a: deg + genus - 1,
            b: 2 - 2 * genus,
        }
    }

    /// `κ_{1,1} = (r-2)(r-3)/2 - 6 genus`, the number of quadrics.
    pub fn expected_k11(&self) -> i64 {
        let r = self.dim_v() as i64 - 1;
        (r - 2) * (r - 3) / 2 - 6 * self.curve_genus() as i64
    }

    pub fn check_characteristic(&self, characteristic: u64) -> Result<(), ModelError> {
        match *self {
            ModelSpec::TangentRnc { .. } if characteristic == 2 => Err(ModelError::CharTwoUnsupported),
            ModelSpec::TangentRnc { .. } => Ok(()),
            _ => {
                let min = self.degree() as u64 + 1;
                if characteristic != 0 && characteristic < min {
                    Err(ModelError::CharTooSmall { characteristic, min })
                } else {
                    Ok(())
                }
            }
        }
    }

    fn relation(&self) -> Relation {
        match self {
            ModelSpec::TangentRnc { .. } => Relation::Free,
            ModelSpec::Elliptic { .. } => Relation::Elliptic,
            ModelSpec::Genus2 => Relation::Genus2,
        }
    }

    /// Monomial sections spanning `H^0(L)`.
    fn sections(&self) -> Vec<Mono> {
        match *self {
            ModelSpec::TangentRnc { g } => (0..=g as i32).map(|i| Mono::new(i, 0, 0)).collect(),
            ModelSpec::Elliptic { d } => {
                // Ordered by pole order at the point at infinity.
                let mut out: Vec<(usize, Mono)> = Vec::new();
                for j in 0..=1usize {
                    for i in 0.. {
                        let pole = 2 * i + 3 * j;
                        if pole > d {
                            break;
                        }
                        out.push((pole, Mono::new(i as i32, j as u8, 0)));
                    }
                }
                out.sort();
                out.into_iter().map(|(_, m)| m).collect()
            }
            ModelSpec::Genus2 => (0..=2u8)
                .flat_map(|b| (0..=3).map(move |a| Mono::new(a, b, 0)))
                .collect(),
        }
    }

    fn derivation(&self) -> Derivation {
        let m = |e, b| Mono::new(e, b, 0);
        let (on_main, on_aux): (IntPoly, IntPoly) = match self {
            ModelSpec::TangentRnc { .. } => (vec![(Mono::ONE, 1)], vec![]),
            // D(x) = 2y, D(y) = 3x^2 - 1.
            ModelSpec::Elliptic { .. } => (vec![(m(0, 1), 2)], vec![(m(0, 0), -1), (m(2, 0), 3)]),
            // D(s) = F_t = 3 s^2 t^2 + 2t - 1 and D(t) = -F_s = -2s (t^3 + 1),
            // which is -2 s^-1 t + 2 s^-1 t^2 in normal form.
            ModelSpec::Genus2 => (
                vec![(m(0, 0), -1), (m(0, 1), 2), (m(2, 2), 3)],
                vec![(m(-1, 1), -2), (m(-1, 2), 2)],
            ),
        };
        Derivation {
            relation: self.relation(),
            on_main,
            on_aux,
        }
    }

    /// The jets `f + u D(f)` of the sections, with integer coefficients.
    pub(crate) fn generators(&self) -> Vec<IntPoly> {
        let d = self.derivation();
        self.sections().into_iter().map(|f| d.jet(f)).collect()
    }

    /// The section ring up to degree `top`, with its declared Hilbert
    /// function attached.
    pub fn build<F: Field>(&self, field: &F, top: usize) -> Result<GradedRing<F>, ModelError> {
        self.validate()?;
        self.check_characteristic(field.characteristic())?;
        let ring = build::section_ring(field, self.relation(), &self.generators(), top)?;
        Ok(ring.with_hilbert(self.hilbert()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for s in ["tangent-rnc:g=7", "elliptic:d=9", "genus2:deg13"] {
            assert_eq!(s.parse::<ModelSpec>().unwrap().to_string(), s);
        }
        assert!("tangent-rnc:g=2".parse::<ModelSpec>().is_err());
        assert!("elliptic:d=6".parse::<ModelSpec>().is_err());
        assert!("genus2:deg12".parse::<ModelSpec>().is_err());
        assert!("conic".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn numerical_invariants() {
        let e9 = ModelSpec::Elliptic { d: 9 };
        assert_eq!((e9.dim_v(), e9.expected_k11()), (9, 9));
        assert_eq!((ModelSpec::Genus2.dim_v(), ModelSpec::Genus2.expected_k11()), (12, 24));
        assert_eq!(ModelSpec::Genus2.hilbert(), QuadraticHilbert { a: 14, b: -2 });
        assert_eq!(ModelSpec::TangentRnc { g: 9 }.hilbert().value(2), 34);
    }

    #[test]
    fn section_counts() {
        assert_eq!(ModelSpec::Elliptic { d: 9 }.sections().len(), 9);
        assert_eq!(ModelSpec::Elliptic { d: 10 }.sections().len(), 10);
        assert_eq!(ModelSpec::Genus2.sections().len(), 12);
    }

    #[test]
    fn characteristic_preconditions() {
        let rnc = ModelSpec::TangentRnc { g: 3 };
        assert_eq!(rnc.check_characteristic(2), Err(ModelError::CharTwoUnsupported));
        assert!(rnc.check_characteristic(3).is_ok());
        assert!(matches!(
            ModelSpec::Genus2.check_characteristic(13),
            Err(ModelError::CharTooSmall { min: 14, .. })
        ));
        assert!(ModelSpec::Elliptic { d: 9 }.check_characteristic(11).is_ok());
    }
}
