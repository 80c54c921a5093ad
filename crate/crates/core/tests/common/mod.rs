//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here reuses the library's bases or rank engine: spaces are keyed
//! by explicit labels in `BTreeMap`s and ranks come from a plain dense
//! Gaussian elimination mod a prime.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// A prime unrelated to the proxy primes, used as a characteristic-zero
/// stand-in by the oracles.
pub const ORACLE_PRIME: i64 = 1_000_000_007;

pub fn modp(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

fn inv(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (p, a.rem_euclid(p), 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

/// Rank of a dense matrix (list of columns) mod p.
#[allow(clippy::needless_range_loop)]
pub fn dense_rank(cols: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = cols.iter().map(|c| c.iter().map(|&x| modp(x, p)).collect()).collect();
    let nrows = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for r in 0..nrows {
        let Some(pc) = (rank..m.len()).find(|&c| m[c][r] != 0) else {
            continue;
        };
        m.swap(rank, pc);
        let iv = inv(m[rank][r], p);
        for c in rank + 1..m.len() {
            let f = m[c][r] * iv % p;
            if f != 0 {
                for k in r..nrows {
                    m[c][k] = modp(m[c][k] - f * m[rank][k] % p, p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All exponent vectors of degree `d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub type Vector = BTreeMap<String, i64>;

pub fn add_to(v: &mut Vector, key: String, c: i64) {
    *v.entry(key).or_insert(0) += c;
}

/// Columns of a linear map given as images of domain vectors, expanded in
/// the listed codomain keys.
pub fn to_columns(images: &[Vector], codomain: &[String]) -> Vec<Vec<i64>> {
    images
        .iter()
        .map(|img| {
            for k in img.keys() {
                assert!(codomain.contains(k), "key {k} outside codomain");
            }
            codomain.iter().map(|k| img.get(k).copied().unwrap_or(0)).collect()
        })
        .collect()
}

fn mono_key(e: &[usize]) -> String {
    format!("{e:?}")
}

fn times(e: &[usize], i: usize) -> Vec<usize> {
    let mut f = e.to_vec();
    f[i] += 1;
    f
}

/// Brute-force Koszul module dimension for the tangent variant, written
/// directly from `Δ(x^(k)) = Σ_{i+j=k+1, i>j} (i-j) v_i ∧ v_j` and
/// `δ(f ⊗ v_i ∧ v_j) = f v_i ⊗ v_j - f v_j ⊗ v_i`.
pub fn tangent_koszul_module(g: usize, p: usize, prime: i64) -> (usize, usize, usize) {
    let n = p + 3;
    let q = g - p - 3;
    let mut images = Vec::new();
    for f in monomials(n, q) {
        for k in 0..=2 * p + 2 {
            let mut img = Vector::new();
            for i in 0..n {
                if k + 1 < i {
                    continue;
                }
                let j = k + 1 - i;
                if j >= i {
                    continue;
                }
                let c = (i - j) as i64;
                add_to(&mut img, format!("{}|{j}", mono_key(&times(&f, i))), c);
                add_to(&mut img, format!("{}|{i}", mono_key(&times(&f, j))), -c);
            }
            images.push(img);
        }
    }
    let middle: Vec<String> = monomials(n, q + 1)
        .iter()
        .flat_map(|m| (0..n).map(move |v| format!("{}|{v}", mono_key(m))))
        .collect();
    let top: Vec<String> = monomials(n, q + 2).iter().map(|m| mono_key(m)).collect();
    let mut mult_images = Vec::new();
    for m in monomials(n, q + 1) {
        for v in 0..n {
            let mut img = Vector::new();
            add_to(&mut img, mono_key(&times(&m, v)), 1);
            mult_images.push(img);
        }
    }
    let rank_gamma = dense_rank(&to_columns(&images, &middle), prime);
    let rank_mult = dense_rank(&to_columns(&mult_images, &top), prime);
    let kernel = middle.len() - rank_mult;
    (kernel - rank_gamma, rank_gamma, kernel)
}
