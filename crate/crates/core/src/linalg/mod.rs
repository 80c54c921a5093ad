//! Exact linear algebra over `Q` and `F_p`.
//!
//! Everything downstream reduces to ranks of sparse integer-entried
//! matrices. The prime-field rank engine splits a matrix into connected
//! blocks, runs Markowitz-ordered sparse elimination on each block and hands
//! the dense remainder to a lazily reduced dense kernel. A Wiedemann
//! black-box rank is available above a configurable size.

mod bareiss;
mod certified;
mod dense;
mod field;
mod homology;
mod matrix;
mod rank;
mod span;
mod wiedemann;

pub use bareiss::{rank_integer, rank_rational};
pub use certified::{run_certified, Certification, Certified, CharZeroPolicy, FieldComputation, DEFAULT_PROXY_PRIMES};
pub use dense::rank_dense_mod_p;
pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use homology::{check_complex, homology_dim};
pub use matrix::SparseMatrix;
pub use rank::{rank_mod_p, RankConfig, RankStats};
pub use span::{kernel_basis, pivot_columns, span_reduce, EchelonBasis, SparseVec};
pub use wiedemann::rank_wiedemann;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} does not fit the 31-bit prime-field kernel")]
    ModulusTooLarge(u64),

    #[error("dimension mismatch: {context} ({left} vs {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("composite of the two maps is not zero ({nonzero} nonzero entries)")]
    CompositionNotZero { nonzero: usize },

    #[error("vector is not in the span (residual at coordinate {coordinate})")]
    NotInSpan { coordinate: usize },

    #[error("proxy primes disagree: {0}")]
    ProxyDisagreement(String),

    #[error("characteristic-zero policy needs at least two proxy primes, all above {min}")]
    BadProxyPrimes { min: u64 },
}
