//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational matrices are first scaled column by column to integers, which
//! does not change the rank. Every intermediate entry is then a minor of the
//! scaled matrix, so the divisions are exact and entries stay bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Rationals;
use super::matrix::SparseMatrix;

/// Rank of a rational matrix.
pub fn rank_rational(m: &SparseMatrix<Rationals>) -> usize {
    let rows = m.codomain_dim();
    let cols = m.domain_dim();
    let mut dense = vec![vec![BigInt::zero(); cols]; rows];
    for (c, col) in m.columns().iter().enumerate() {
        let lcm = col
            .iter()
            .fold(BigInt::one(), |acc, (_, v): &(u32, BigRational)| acc.lcm(v.denom()));
        for (r, v) in col {
            dense[*r as usize][c] = v.numer() * (&lcm / v.denom());
        }
    }
    rank_integer(dense)
}

/// Rank of an integer matrix given by rows.
pub fn rank_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &piv * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn int_rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn integer_ranks() {
        assert_eq!(rank_integer(int_rows(&[&[2, 4], &[1, 2]])), 1);
        assert_eq!(rank_integer(int_rows(&[&[0, 0, 1], &[0, 2, 3], &[4, 5, 6]])), 3);
        assert_eq!(rank_integer(int_rows(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_integer(int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn rational_rank_with_fractions() {
        let q = Rationals;
        let half = q.div(&q.one(), &q.from_i64(2));
        let m = SparseMatrix::from_triplets(
            &q,
            2,
            2,
            vec![
                (0, 0, half.clone()),
                (1, 0, q.one()),
                (0, 1, q.one()),
                (1, 1, q.from_i64(2)),
            ],
        )
        .unwrap();
        assert_eq!(rank_rational(&m), 1);
    }
}
