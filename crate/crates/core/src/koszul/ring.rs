use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::KoszulError;
use crate::linalg::{Field, SparseMatrix};

/// A graded ring `R = ⊕ R_m` generated by `num_vars` elements of degree one,
/// known up to some top degree.
pub trait SectionRing<F: Field>: Sync {
    fn field(&self) -> &F;

    /// Number of degree-one generators, i.e. `dim V`.
    fn num_vars(&self) -> usize;

    /// Highest degree whose piece is available.
    fn top_degree(&self) -> usize;

    /// `dim R_m` for `m <= top_degree()`.
    fn piece_dim(&self, m: usize) -> usize;

    /// Multiplication by generator `var` as a map `R_m → R_{m+1}`, for
    /// `m < top_degree()`.
    fn mult(&self, var: usize, m: usize) -> &SparseMatrix<F>;

    /// The Hilbert function the ring is supposed to have, when known.
    fn expected_hilbert(&self, _m: usize) -> Option<usize> {
        None
    }
}

/// Hilbert functions of the shape `H(0) = 1`, `H(m) = a m^2 + b` for `m >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticHilbert {
    pub a: i64,
    pub b: i64,
}

impl QuadraticHilbert {
    pub fn value(&self, m: usize) -> usize {
        if m == 0 {
            return 1;
        }
        let m = m as i64;
        let v = self.a * m * m + self.b;
        assert!(v >= 0, "negative Hilbert value");
        v as usize
    }
}

/// A section ring with every piece and multiplication matrix held in memory.
#[derive(Clone, Debug)]
pub struct GradedRing<F: Field> {
    field: F,
    num_vars: usize,
    dims: Vec<usize>,
    /// `mult[m][v]` is multiplication by `v` from `R_m` to `R_{m+1}`.
    mult: Vec<Vec<SparseMatrix<F>>>,
    hilbert: Option<QuadraticHilbert>,
}

impl<F: Field> GradedRing<F> {
    pub fn new(
        field: &F,
        num_vars: usize,
        dims: Vec<usize>,
        mult: Vec<Vec<SparseMatrix<F>>>,
    ) -> Result<Self, KoszulError> {
        if dims.first() != Some(&1) {
            return Err(KoszulError::Malformed("R_0 must be one-dimensional".into()));
        }
        if mult.len() + 1 != dims.len() {
            return Err(KoszulError::Malformed(format!(
                "{} pieces need {} multiplication levels, got {}",
                dims.len(),
                dims.len() - 1,
                mult.len()
            )));
        }
        for (m, level) in mult.iter().enumerate() {
            if level.len() != num_vars {
                return Err(KoszulError::Malformed(format!(
                    "level {m} has {} generators",
                    level.len()
                )));
            }
            for a in level {
                if a.domain_dim() != dims[m] || a.codomain_dim() != dims[m + 1] {
                    return Err(KoszulError::Malformed(format!(
                        "multiplication R_{m} → R_{} has shape {}x{}",
                        m + 1,
                        a.codomain_dim(),
                        a.domain_dim()
                    )));
                }
            }
        }
        Ok(GradedRing {
            field: field.clone(),
            num_vars,
            dims,
            mult,
            hilbert: None,
        })
    }

    /// Copies any section ring into memory.
    pub fn materialize<R: SectionRing<F>>(ring: &R) -> Self {
        let top = ring.top_degree();
        GradedRing {
            field: ring.field().clone(),
            num_vars: ring.num_vars(),
            dims: (0..=top).map(|m| ring.piece_dim(m)).collect(),
            mult: (0..top)
                .map(|m| (0..ring.num_vars()).map(|v| ring.mult(v, m).clone()).collect())
                .collect(),
            hilbert: None,
        }
    }

    pub fn with_hilbert(mut self, hilbert: QuadraticHilbert) -> Self {
        self.hilbert = Some(hilbert);
        self
    }

    pub fn hilbert(&self) -> Option<QuadraticHilbert> {
        self.hilbert
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Multiplication by the linear form `sum_v coeffs[v] x_v` from `R_m`
    /// to `R_{m+1}`.
    pub fn linear_form_mult(&self, coeffs: &[F::Elem], m: usize) -> SparseMatrix<F> {
        let f = &self.field;
        let (rows, cols) = (self.dims[m + 1], self.dims[m]);
        let mut triplets = Vec::new();
        for (v, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (r, col, x) in self.mult[m][v].triplets() {
                triplets.push((r, col, f.mul(c, x)));
            }
        }
        SparseMatrix::from_triplets(f, rows, cols, triplets).expect("indices come from valid matrices")
    }

    /// Checks `v (w f) = w (v f)` on `samples` random triples.
    pub fn check_commutative(&self, samples: usize, seed: u64) -> Result<(), KoszulError> {
        let top = self.top_degree();
        if top < 2 || self.num_vars < 2 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let m = rng.gen_range(0..top - 1);
            let v = rng.gen_range(0..self.num_vars);
            let w = rng.gen_range(0..self.num_vars);
            if self.dims[m] == 0 {
                continue;
            }
            let mut f = vec![self.field.zero(); self.dims[m]];
            f[rng.gen_range(0..self.dims[m])] = self.field.one();
            let vw = self.mult[m + 1][v].apply(&self.mult[m][w].apply(&f));
            let wv = self.mult[m + 1][w].apply(&self.mult[m][v].apply(&f));
            if vw != wv {
                return Err(KoszulError::NotCommutative {
                    left: v,
                    right: w,
                    degree: m,
                });
            }
        }
        Ok(())
    }
}

impl<F: Field> SectionRing<F> for GradedRing<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    fn piece_dim(&self, m: usize) -> usize {
        self.dims[m]
    }

    fn mult(&self, var: usize, m: usize) -> &SparseMatrix<F> {
        &self.mult[m][var]
    }

    fn expected_hilbert(&self, m: usize) -> Option<usize> {
        self.hilbert.map(|h| h.value(m))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::multilinear::MonomialBasis;

    /// The polynomial ring in `n` variables up to degree `top`.
    pub(crate) fn polynomial_ring<F: Field>(field: &F, n: usize, top: usize) -> GradedRing<F> {
        let bases: Vec<MonomialBasis> = (0..=top).map(|d| MonomialBasis::new(n, d)).collect();
        let dims = bases.iter().map(MonomialBasis::dim).collect();
        let mult = (0..top)
            .map(|d| {
                let table = bases[d].times_variable_table(&bases[d + 1]);
                table
                    .iter()
                    .map(|t| {
                        SparseMatrix::from_columns(field, bases[d + 1].dim(), bases[d].dim(), |c| {
                            vec![(t[c], field.one())]
                        })
                    })
                    .collect()
            })
            .collect();
        GradedRing::new(field, n, dims, mult).unwrap()
    }

    #[test]
    fn polynomial_ring_is_commutative() {
        let f = PrimeField::new(101).unwrap();
        let r = polynomial_ring(&f, 3, 4);
        assert_eq!(r.dims(), &[1, 3, 6, 10, 15]);
        r.check_commutative(50, 1).unwrap();
    }

    #[test]
    fn malformed_rings_are_rejected() {
        let f = PrimeField::new(7).unwrap();
        assert!(GradedRing::new(&f, 1, vec![2], vec![]).is_err());
        assert!(GradedRing::new(&f, 1, vec![1, 1], vec![]).is_err());
        let bad = SparseMatrix::zero(&f, 2, 1);
        assert!(GradedRing::new(&f, 1, vec![1, 1], vec![vec![bad]]).is_err());
    }

    #[test]
    fn quadratic_hilbert_values() {
        let h = QuadraticHilbert { a: 14, b: -2 };
        assert_eq!(
            (0..5).map(|m| h.value(m)).collect::<Vec<_>>(),
            vec![1, 12, 54, 124, 222]
        );
    }
}
