//! Black-box rank over `F_p` by the Wiedemann method.
//!
//! With random nonsingular diagonals `D1`, `D2` the symmetric-looking product
//! `B = D1 A^T D2 A D1` has the same rank as `A` and, with high probability,
//! a minimal polynomial of degree `rank + 1` (or `rank` when `B` is
//! invertible). The minimal polynomial is recovered from the scalar sequence
//! `u^T B^i v` by Berlekamp-Massey. Every trial yields a lower bound, so the
//! maximum over trials is returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::inverse;
use super::field::PrimeField;
use super::matrix::SparseMatrix;

/// Wiedemann rank of a prime-field matrix. Exact with high probability for
/// large `p`; prefer [`super::rank_mod_p`] when certainty is required.
pub fn rank_wiedemann(m: &SparseMatrix<PrimeField>, trials: u32, seed: u64) -> usize {
    let rows: Vec<Vec<(u32, u32)>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|(r, v)| (*r, *v as u32)).collect())
        .collect();
    rank_wiedemann_rows(m.field().modulus(), &rows, m.codomain_dim(), trials, seed)
}

pub(crate) fn rank_wiedemann_rows(p: u64, rows: &[Vec<(u32, u32)>], ncols: usize, trials: u32, seed: u64) -> usize {
    let nrows = rows.len();
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = nrows.min(ncols);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let d1: Vec<u64> = (0..ncols).map(|_| rng.gen_range(1..p)).collect();
        let d2: Vec<u64> = (0..nrows).map(|_| rng.gen_range(1..p)).collect();
        let u: Vec<u64> = (0..ncols).map(|_| rng.gen_range(0..p)).collect();
        let mut x: Vec<u64> = (0..ncols).map(|_| rng.gen_range(0..p)).collect();
        let len = 2 * (bound + 1) + 2;
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(dot(&u, &x, p));
            x = apply_b(p, rows, ncols, &d1, &d2, &x);
        }
        let poly = berlekamp_massey(&seq, p);
        let deg = poly.len() - 1;
        let r = if poly[0] == 0 { deg.saturating_sub(1) } else { deg };
        best = best.max(r.min(bound));
        if best == bound {
            break;
        }
    }
    best
}

fn dot(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter().zip(b).fold(0, |acc, (x, y)| (acc + x * y) % p)
}

fn apply_b(p: u64, rows: &[Vec<(u32, u32)>], ncols: usize, d1: &[u64], d2: &[u64], x: &[u64]) -> Vec<u64> {
    let y: Vec<u64> = x.iter().zip(d1).map(|(a, b)| a * b % p).collect();
    let mut out = vec![0u64; ncols];
    for (i, row) in rows.iter().enumerate() {
        let mut s = 0u64;
        for &(c, v) in row {
            s = (s + v as u64 * y[c as usize]) % p;
        }
        s = s * d2[i] % p;
        if s == 0 {
            continue;
        }
        for &(c, v) in row {
            let o = &mut out[c as usize];
            *o = (*o + v as u64 * s) % p;
        }
    }
    out.iter().zip(d1).map(|(a, b)| a * b % p).collect()
}

/// Minimal connection polynomial of a sequence, returned as coefficients
/// `c_0 .. c_L` of the reversed (characteristic-style) polynomial with
/// `c_L = 1`.
pub(crate) fn berlekamp_massey(seq: &[u64], p: u64) -> Vec<u64> {
    let mut c: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![1];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u64;
    for n in 0..seq.len() {
        let mut d = seq[n];
        for i in 1..=l {
            d = (d + c[i] * seq[n - i]) % p;
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = d * inverse(bd, p) % p;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = (c[i + m] + p - coef * bi % p) % p;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, 0);
    // c(x) = 1 + c1 x + ... + cL x^L is the connection polynomial; the
    // minimal polynomial is its reversal x^L c(1/x).
    c.reverse();
    c
}
