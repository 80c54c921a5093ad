//! Dimension of the middle homology of a two-term complex.

use super::field::Field;
use super::matrix::SparseMatrix;
use super::LinalgError;

/// Checks that `a` and `b` compose (`codomain(a) = domain(b)`) and that
/// `b ∘ a = 0`.
pub fn check_complex<F: Field>(a: &SparseMatrix<F>, b: &SparseMatrix<F>) -> Result<(), LinalgError> {
    if a.codomain_dim() != b.domain_dim() {
        return Err(LinalgError::DimensionMismatch {
            context: "complex: codomain of the first map vs domain of the second",
            left: a.codomain_dim(),
            right: b.domain_dim(),
        });
    }
    let ba = b.compose(a)?;
    if !ba.is_zero() {
        return Err(LinalgError::CompositionNotZero { nonzero: ba.nnz() });
    }
    Ok(())
}

/// `dim ker(b) - rank(a)` for a complex `· --a--> · --b--> ·`.
pub fn homology_dim<F: Field>(a: &SparseMatrix<F>, b: &SparseMatrix<F>) -> Result<usize, LinalgError> {
    check_complex(a, b)?;
    let kernel = b.domain_dim() - b.rank();
    let image = a.rank();
    debug_assert!(image <= kernel);
    Ok(kernel - image)
}
