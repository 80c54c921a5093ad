//! Dividing out a regular sequence of linear forms.
//!
//! If `l ∈ V` is a nonzerodivisor on `R` in degrees up to `N`, then
//! `K_{p,q}(R, V) = K_{p,q}(R/lR, V/l)` for all `q < N`. The forms tried are
//! the generators themselves and then seeded random combinations; each one
//! is accepted only after checking that multiplication by it is injective on
//! every available piece.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ring::{GradedRing, SectionRing};
use crate::linalg::{EchelonBasis, Field, SparseMatrix, SparseVec};

/// A quotient of a ring by a verified regular sequence.
#[derive(Clone, Debug)]
pub struct Reduction<F: Field> {
    pub ring: GradedRing<F>,
    /// The forms, each in the variables of the ring it was applied to.
    pub forms: Vec<Vec<F::Elem>>,
    /// For each variable of the quotient, its index in the original ring.
    pub kept_vars: Vec<usize>,
}

/// Divides out up to `max_forms` linear forms, trying every generator first
/// and then `random_tries` random forms at each step.
pub fn reduce_by_regular_sequence<F: Field, R: SectionRing<F>>(
    ring: &R,
    max_forms: usize,
    random_tries: usize,
    seed: u64,
) -> Reduction<F> {
    let field = ring.field().clone();
    let mut current = GradedRing::materialize(ring);
    let mut kept_vars: Vec<usize> = (0..ring.num_vars()).collect();
    let mut forms = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_forms {
        let n = current.num_vars();
        if n == 0 {
            break;
        }
        let unit = |v: usize| -> Vec<F::Elem> {
            (0..n)
                .map(|i| if i == v { field.one() } else { field.zero() })
                .collect()
        };
        let found = (0..n)
            .map(unit)
            .chain((0..random_tries).map(|_| (0..n).map(|_| field.random(&mut rng)).collect()))
            .find(|l: &Vec<F::Elem>| l.iter().any(|c| !field.is_zero(c)) && is_regular(&current, l));
        let Some(form) = found else {
            break;
        };
        let (next, dropped) = quotient(&current, &form);
        kept_vars.remove(dropped);
        current = next;
        forms.push(form);
    }
    Reduction {
        ring: current,
        forms,
        kept_vars,
    }
}

/// Whether multiplication by `form` is injective `R_{m-1} → R_m` for every
/// available `m`.
pub fn is_regular<F: Field>(ring: &GradedRing<F>, form: &[F::Elem]) -> bool {
    (1..=ring.top_degree()).all(|m| ring.linear_form_mult(form, m - 1).rank() == ring.piece_dim(m - 1))
}

/// `R / lR` together with the index of the variable that was eliminated.
fn quotient<F: Field>(ring: &GradedRing<F>, form: &[F::Elem]) -> (GradedRing<F>, usize) {
    let f = ring.field().clone();
    let top = ring.top_degree();
    let dropped = form.iter().rposition(|c| !f.is_zero(c)).expect("nonzero form");
    let kept: Vec<usize> = (0..ring.num_vars()).filter(|&v| v != dropped).collect();

    // The image l R_{m-1} ⊂ R_m in reduced echelon form, and the positions of
    // its non-pivot coordinates, which index a basis of the quotient.
    let mut images: Vec<EchelonBasis<F>> = Vec::with_capacity(top + 1);
    let mut free: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut position: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut basis = EchelonBasis::new(&f, ring.piece_dim(m));
        if m > 0 {
            let lm = ring.linear_form_mult(form, m - 1);
            for c in 0..lm.domain_dim() {
                basis.insert(&column(&lm, c));
            }
        }
        basis.finish();
        let mut pos = vec![usize::MAX; ring.piece_dim(m)];
        let fr: Vec<usize> = (0..ring.piece_dim(m))
            .filter(|&i| basis.row_with_pivot(i).is_none())
            .collect();
        for (k, &i) in fr.iter().enumerate() {
            pos[i] = k;
        }
        images.push(basis);
        free.push(fr);
        position.push(pos);
    }

    let dims: Vec<usize> = free.iter().map(Vec::len).collect();
    let mut mult = Vec::with_capacity(top);
    for m in 0..top {
        let mut level = Vec::with_capacity(kept.len());
        for &v in &kept {
            let a = ring.mult(v, m);
            let mut cols = Vec::with_capacity(dims[m]);
            for &c in &free[m] {
                let rem = images[m + 1].reduce(&column(a, c));
                cols.push(
                    rem.into_iter()
                        .map(|(i, x)| {
                            debug_assert_ne!(position[m + 1][i], usize::MAX);
                            (position[m + 1][i], x)
                        })
                        .collect::<Vec<_>>(),
                );
            }
            let mut it = cols.into_iter();
            level.push(SparseMatrix::from_columns(&f, dims[m + 1], dims[m], |_| {
                it.next().unwrap()
            }));
        }
        mult.push(level);
    }
    let q = GradedRing::new(&f, kept.len(), dims, mult).expect("quotient has consistent shapes");
    (q, dropped)
}

fn column<F: Field>(a: &SparseMatrix<F>, c: usize) -> SparseVec<F> {
    a.column(c).iter().map(|(r, x)| (*r as usize, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::ring::tests::polynomial_ring;
    use crate::linalg::PrimeField;

    #[test]
    fn polynomial_ring_reduces_to_the_field() {
        let f = PrimeField::new(101).unwrap();
        let r = polynomial_ring(&f, 3, 4);
        let red = reduce_by_regular_sequence(&r, 5, 3, 7);
        assert_eq!(red.forms.len(), 3);
        assert!(red.kept_vars.is_empty());
        assert_eq!(red.ring.dims(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn quotient_by_one_variable() {
        let f = PrimeField::new(7).unwrap();
        let r = polynomial_ring(&f, 3, 3);
        let red = reduce_by_regular_sequence(&r, 1, 0, 0);
        assert_eq!(red.ring.dims(), &[1, 2, 3, 4]);
        assert_eq!(red.kept_vars, vec![1, 2]);
        red.ring.check_commutative(30, 2).unwrap();
    }

    #[test]
    fn artinian_ring_has_no_regular_element() {
        let f = PrimeField::new(5).unwrap();
        // k[x]/(x^2) up to degree 3.
        let x0 = SparseMatrix::from_triplets(&f, 1, 1, vec![(0, 0, 1)]).unwrap();
        let ring = GradedRing::new(
            &f,
            1,
            vec![1, 1, 0, 0],
            vec![
                vec![x0],
                vec![SparseMatrix::zero(&f, 0, 1)],
                vec![SparseMatrix::zero(&f, 0, 0)],
            ],
        )
        .unwrap();
        assert!(reduce_by_regular_sequence(&ring, 1, 4, 0).forms.is_empty());
    }
}
