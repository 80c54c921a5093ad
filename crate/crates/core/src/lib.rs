//! Exact computation of Koszul modules and graded Betti tables of tangent
//! developable surfaces.
//!
//! * [`linalg`]: exact fields, sparse matrices and the rank engine.
//! * [`multilinear`]: bases over `U = <1, x>` and the explicit maps between
//!   symmetric, divided and exterior powers (Wahl map, its dual, Koszul
//!   differentials and their composites).
//! * [`koszul`]: Koszul cohomology of graded section rings and Betti tables.
//! * [`models`]: section rings of tangent surfaces of rational normal curves
//!   and of two curves of genus one and two.
//! * [`gates`]: theorem sweeps and property suites built on all of the above.

pub mod gates;
pub mod koszul;
pub mod linalg;
pub mod models;
pub mod multilinear;

mod error;

pub use error::Error;
pub use koszul::{BettiTable, SectionRing};
pub use linalg::{Certification, CharZeroPolicy, Field, FieldSpec, PrimeField, RankConfig, Rationals, SparseMatrix};
pub use multilinear::MapVariant;
