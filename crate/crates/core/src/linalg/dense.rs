//! Dense rank kernel mod `p` with delayed reduction.
//!
//! Rows are stored as `u64` and updated with `row += m * pivot_row` where both
//! factors are below `p`. Each update adds less than `(p-1)^2`, so a row can
//! absorb `u64::MAX / (p-1)^2` updates before it must be reduced. For the
//! 15-bit proxy primes that budget is never reached in practice.

/// Rank of a dense `rows x cols` matrix mod `p`, given in row-major order
/// with entries already reduced below `p`. The buffer is consumed.
pub fn rank_dense_mod_p(p: u64, rows: usize, cols: usize, mut data: Vec<u64>) -> usize {
    assert_eq!(data.len(), rows * cols);
    assert!((2..1 << 31).contains(&p));
    if rows == 0 || cols == 0 {
        return 0;
    }
    let budget: u64 = if p == 2 {
        u64::MAX / 2
    } else {
        (u64::MAX - p) / ((p - 1) * (p - 1))
    };
    let mut pending = vec![0u64; rows];
    let mut active: Vec<usize> = (0..rows).collect();
    let mut pivot_row: Vec<u32> = vec![0; cols];
    let mut rank = 0;
    let max_rank = rows.min(cols);

    for c in 0..cols {
        if rank == max_rank || active.is_empty() {
            break;
        }
        let found = active.iter().position(|&r| data[r * cols + c] % p != 0);
        let Some(pos) = found else { continue };
        let pr = active.swap_remove(pos);
        let prow = &data[pr * cols..(pr + 1) * cols];
        for j in c..cols {
            pivot_row[j] = (prow[j] % p) as u32;
        }
        let inv = inverse(pivot_row[c] as u64, p);
        rank += 1;

        for &r in &active {
            let row = &mut data[r * cols..(r + 1) * cols];
            let lead = row[c] % p;
            if lead == 0 {
                continue;
            }
            if pending[r] >= budget {
                for x in row[c..].iter_mut() {
                    *x %= p;
                }
                pending[r] = 0;
            }
            let m = ((p - lead) * inv % p) as u32;
            row[c] = 0;
            axpy(&mut row[c + 1..], m, &pivot_row[c + 1..]);
            pending[r] += 1;
        }
    }
    rank
}

#[inline]
fn axpy(row: &mut [u64], m: u32, pivot: &[u32]) {
    let m = m as u64;
    for (x, &y) in row.iter_mut().zip(pivot) {
        *x = x.wrapping_add(m * y as u64);
    }
}

pub(crate) fn inverse(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}
