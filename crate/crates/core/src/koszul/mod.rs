//! Koszul cohomology of graded rings and the resulting Betti tables.
//!
//! A graded ring generated in degree one is given by the dimensions of its
//! pieces `R_m` and by the matrices of multiplication with each degree-one
//! generator. From these the engine assembles the Koszul complexes
//!
//! ```text
//! ∧^{p+1} V ⊗ R_{q-1} → ∧^p V ⊗ R_q → ∧^{p-1} V ⊗ R_{q+1}
//! ```
//!
//! and reads off `κ_{p,q}` as the middle homology. Before that, a verified
//! regular sequence of linear forms can be divided out, which leaves every
//! Betti number unchanged and shrinks the complexes considerably.

mod checks;
mod engine;
mod reduce;
mod ring;
mod table;

pub use checks::{duality_check, duality_failures, hilbert_check, hilbert_numerator_check};
pub use engine::KoszulEngine;
pub use reduce::{reduce_by_regular_sequence, Reduction};
pub use ring::{GradedRing, QuadraticHilbert, SectionRing};
pub use table::{BettiTable, CellRecord, TABLE_SCHEMA};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("piece R_{degree} is not available (ring computed up to degree {top})")]
    PieceUnavailable { degree: usize, top: usize },

    #[error("dim R_{degree} is {found}, expected {expected}")]
    HilbertMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("multiplication does not commute: v{left} v{right} on R_{degree}")]
    NotCommutative { left: usize, right: usize, degree: usize },

    #[error("Betti numbers of {0} do not match its Hilbert series")]
    NumeratorMismatch(String),

    #[error("malformed ring: {0}")]
    Malformed(String),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
