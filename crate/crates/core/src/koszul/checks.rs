//! Consistency checks between Betti tables, duality and Hilbert functions.

use super::ring::SectionRing;
use super::table::BettiTable;
use super::KoszulError;
use crate::linalg::Field;
use crate::multilinear::binomial;

/// `κ_{p,q} = κ_{g-p-2, 3-q}` for every `q <= 3` and every `p` in the table;
/// entries whose partner index is negative must vanish.
pub fn duality_check(table: &BettiTable, g: usize) -> bool {
    duality_failures(table, g).is_empty()
}

/// The cells `(p, q)` at which [`duality_check`] fails.
pub fn duality_failures(table: &BettiTable, g: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in 0..=3.min(table.q_max) {
        for p in 0..=table.p_max {
            let ok = match g.checked_sub(p + 2) {
                Some(partner) => table.get(p, q) == table.get(partner, 3 - q),
                None => table.get(p, q) == 0,
            };
            if !ok {
                out.push((p, q));
            }
        }
    }
    out
}

/// Compares `dim R_m` with the ring's declared Hilbert function for
/// `m <= m_max`. Degrees without a declared value are skipped.
pub fn hilbert_check<F: Field, R: SectionRing<F>>(ring: &R, m_max: usize) -> Result<(), KoszulError> {
    let top = ring.top_degree();
    if m_max > top {
        return Err(KoszulError::PieceUnavailable { degree: m_max, top });
    }
    for m in 0..=m_max {
        if let Some(expected) = ring.expected_hilbert(m) {
            let found = ring.piece_dim(m);
            if found != expected {
                return Err(KoszulError::HilbertMismatch {
                    degree: m,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(())
}

/// Checks `sum (-1)^p κ_{p,q} t^{p+q} = (sum_m H(m) t^m) (1-t)^{dim V}`
/// coefficientwise up to degree `dim V + q_max`, treating rows above
/// `q_max` as zero. The table must cover every `p <= dim V`.
pub fn hilbert_numerator_check(table: &BettiTable, hilbert: impl Fn(usize) -> usize) -> bool {
    let n = table.dim_v;
    if table.p_max < n {
        return false;
    }
    (0..=n + table.q_max).all(|k| {
        let betti: i128 = (0..=k.min(table.q_max))
            .map(|q| {
                let p = k - q;
                let v = table.get(p, q) as i128;
                if p % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        let series: i128 = (0..=k.min(n))
            .map(|i| {
                let c = binomial(n, i) as i128 * hilbert(k - i) as i128;
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum();
        betti == series
    })
}
