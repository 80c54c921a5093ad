//! Matrices of the explicit multilinear maps over `U = <1, x>`.
//!
//! Conventions: `x^i ∧ x^j` is stored with `i > j` and swapping the factors
//! flips the sign. `V = D^{p+2} U` has basis `v_k = x^(k)`, `W` is the source
//! of the dual Wahl map `Δ`, and `q = g - p - 3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::basis::{binomial, wedge2, wedge2_index, wedge2_pairs, MonomialBasis};
use super::{MapError, MapVariant};
use crate::linalg::{homology_dim, pivot_columns, span_reduce, Field, SparseMatrix, SparseVec};

/// `(dim ∧^n S^d U, dim S^{d-n+1} D^n U)`; the two always agree.
pub fn hermite_dims(n: usize, d: usize) -> Result<(usize, usize), MapError> {
    if n == 0 || n > d + 1 {
        return Err(MapError::InvalidRange(format!(
            "hermite_dims needs 1 <= n <= d+1, got n={n}, d={d}"
        )));
    }
    let wedge = binomial(d + 1, n);
    // dim S^k D^n U = binom(k + n, n) with k = d - n + 1.
    let sym_of_div = binomial(d + 1, n);
    Ok((wedge, sym_of_div))
}

/// The Wahl map `∧² S^m U → S^{2m-2} U`, `x^i ∧ x^j ↦ (i - j) x^{i+j-1}`.
pub fn wahl_map<F: Field>(m: usize, field: &F) -> SparseMatrix<F> {
    assert!(m >= 1, "wahl_map needs m >= 1");
    let pairs = wedge2_pairs(m);
    SparseMatrix::from_columns(field, 2 * m - 1, pairs.len(), |c| {
        let (i, j) = pairs[c];
        vec![(i + j - 1, field.from_i64((i - j) as i64))]
    })
}

fn inclusion<F: Field>(d: usize, middle: i64, field: &F) -> SparseMatrix<F> {
    let pairs = wedge2_pairs(d);
    let target = (d + 2) * (d + 3) / 2;
    SparseMatrix::from_columns(field, target, pairs.len(), |c| {
        let (i, j) = pairs[c];
        [(i + 2, j, 1), (i + 1, j + 1, middle), (i, j + 2, 1)]
            .into_iter()
            .filter_map(|(a, b, coef)| wedge2(a, b).map(|(idx, sign)| (idx, field.from_i64(sign * coef))))
            .collect()
    })
}

/// `∧² S^d U → ∧² S^{d+2} U`,
/// `x^i ∧ x^j ↦ x^{i+2} ∧ x^j - 2 x^{i+1} ∧ x^{j+1} + x^i ∧ x^{j+2}`.
pub fn conic_inclusion<F: Field>(d: usize, field: &F) -> SparseMatrix<F> {
    inclusion(d, -2, field)
}

/// As [`conic_inclusion`] with `+2` in the middle term.
pub fn double_line_inclusion<F: Field>(d: usize, field: &F) -> SparseMatrix<F> {
    inclusion(d, 2, field)
}

/// `τ_m : ∧² S^m U → S^{2m-2} U ⊕ S^{2m} U`:
/// `x^i ∧ x^j ↦ ((-1)^i (i-j) x^{i+j-1}, 0)` when `i ≡ j (mod 2)`, and
/// `(0, (-1)^i x^{i+j})` otherwise.
pub fn tau_map<F: Field>(m: usize, field: &F) -> SparseMatrix<F> {
    assert!(m >= 1, "tau_map needs m >= 1");
    let pairs = wedge2_pairs(m);
    let first = 2 * m - 1;
    SparseMatrix::from_columns(field, first + 2 * m + 1, pairs.len(), |c| {
        let (i, j) = pairs[c];
        let sign = if i % 2 == 0 { 1 } else { -1 };
        if (i + j) % 2 == 0 {
            vec![(i + j - 1, field.from_i64(sign * (i - j) as i64))]
        } else {
            vec![(first + i + j, field.from_i64(sign))]
        }
    })
}

/// Pivot rows of the reduced echelon basis of the column span of `m`; the
/// coordinates of any image vector in that basis are its entries there.
fn image_pivots<F: Field>(m: &SparseMatrix<F>) -> Vec<usize> {
    let cols: Vec<SparseVec<F>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|(r, v)| (*r as usize, v.clone())).collect())
        .collect();
    span_reduce(m.field(), m.codomain_dim(), &cols).pivots().to_vec()
}

/// `Δ_{p+2} : W → ∧² V` with `V = D^{p+2} U`.
///
/// Tangent: `W = D^{2p+2} U` and `Δ(x^(k)) = Σ_{i+j=k+1, i>j} (i-j) v_i ∧ v_j`,
/// the transpose of the Wahl map under the monomial pairings. Carpet: `W` is
/// dual to the image of `τ_{p+2}` and `Δ` is the transpose of `τ_{p+2}`
/// corestricted to the reduced echelon basis of that image.
pub fn co_wahl_delta<F: Field>(p: usize, variant: MapVariant, field: &F) -> SparseMatrix<F> {
    let m = p + 2;
    match variant {
        MapVariant::Tangent => {
            let wedge_dim = m * (m + 1) / 2;
            SparseMatrix::from_columns(field, wedge_dim, 2 * p + 3, |k| {
                (0..=m)
                    .filter_map(|i| {
                        let j = (k + 1).checked_sub(i)?;
                        (j < i).then(|| (wedge2_index(i, j), field.from_i64((i - j) as i64)))
                    })
                    .collect()
            })
        }
        MapVariant::Carpet => {
            let tau = tau_map(m, field);
            let pivots = image_pivots(&tau);
            tau.select_rows(&pivots).transpose()
        }
    }
}

/// Dimension of `W` for the given variant and field.
pub fn w_dim<F: Field>(p: usize, variant: MapVariant, field: &F) -> usize {
    match variant {
        MapVariant::Tangent => 2 * p + 3,
        MapVariant::Carpet => co_wahl_delta(p, variant, field).domain_dim(),
    }
}

/// The Koszul pair `S^q V ⊗ ∧² V --δ--> S^{q+1} V ⊗ V --mult--> S^{q+2} V`
/// for `V` of dimension `v_dim`, with
/// `δ(f ⊗ v_i ∧ v_j) = f v_i ⊗ v_j - f v_j ⊗ v_i`.
pub fn koszul_pair<F: Field>(q: usize, v_dim: usize, field: &F) -> (SparseMatrix<F>, SparseMatrix<F>) {
    let sq = MonomialBasis::new(v_dim, q);
    let sq1 = MonomialBasis::new(v_dim, q + 1);
    let times = sq.times_variable_table(&sq1);
    let pairs = wedge2_pairs(v_dim.saturating_sub(1));
    let wd = pairs.len();
    let one = field.one();
    let minus = field.neg(&one);
    let delta = SparseMatrix::from_columns(field, sq1.dim() * v_dim, sq.dim() * wd, |c| {
        let (f, w) = (c / wd, c % wd);
        let (i, j) = pairs[w];
        vec![
            (times[i][f] * v_dim + j, one.clone()),
            (times[j][f] * v_dim + i, minus.clone()),
        ]
    });
    (delta, multiplication(q + 1, v_dim, field))
}

/// `S^k V ⊗ V → S^{k+1} V`, formal multiplication.
pub fn multiplication<F: Field>(k: usize, v_dim: usize, field: &F) -> SparseMatrix<F> {
    let sk = MonomialBasis::new(v_dim, k);
    let sk1 = MonomialBasis::new(v_dim, k + 1);
    let times = sk.times_variable_table(&sk1);
    SparseMatrix::from_columns(field, sk1.dim(), sk.dim() * v_dim, |c| {
        let (f, i) = (c / v_dim, c % v_dim);
        vec![(times[i][f], field.one())]
    })
}

fn check_range(g: usize, p: usize) -> Result<usize, MapError> {
    if g < 3 || p + 3 > g {
        return Err(MapError::InvalidRange(format!("need 0 <= p <= g-3, got g={g}, p={p}")));
    }
    Ok(g - p - 3)
}

/// The composite `δ ∘ (id ⊗ Δ) : S^k V ⊗ W → S^{k+1} V ⊗ V` for
/// `V = D^{p+2} U`.
pub fn gamma_in_degree<F: Field>(p: usize, k: usize, variant: MapVariant, field: &F) -> SparseMatrix<F> {
    let delta = co_wahl_delta(p, variant, field);
    gamma_from_delta(&delta, p + 3, k, field)
}

fn gamma_from_delta<F: Field>(delta: &SparseMatrix<F>, v_dim: usize, k: usize, field: &F) -> SparseMatrix<F> {
    let sk = MonomialBasis::new(v_dim, k);
    let sk1 = MonomialBasis::new(v_dim, k + 1);
    let times = sk.times_variable_table(&sk1);
    let pairs = wedge2_pairs(v_dim - 1);
    let wd = delta.domain_dim();
    SparseMatrix::from_columns(field, sk1.dim() * v_dim, sk.dim() * wd, |c| {
        let (f, w) = (c / wd, c % wd);
        let mut out = Vec::with_capacity(2 * delta.column(w).len());
        for (row, coef) in delta.column(w) {
            let (i, j) = pairs[*row as usize];
            out.push((times[i][f] * v_dim + j, coef.clone()));
            out.push((times[j][f] * v_dim + i, field.neg(coef)));
        }
        out
    })
}

/// `γ_{p+2} : S^q V ⊗ W → S^{q+1} V ⊗ V` with `q = g - p - 3`.
pub fn gamma<F: Field>(g: usize, p: usize, variant: MapVariant, field: &F) -> Result<SparseMatrix<F>, MapError> {
    let q = check_range(g, p)?;
    Ok(gamma_in_degree(p, q, variant, field))
}

/// Dimension of the Koszul module: the homology of
/// `S^q V ⊗ W --γ--> S^{q+1} V ⊗ V --mult--> S^{q+2} V`.
pub fn koszul_module_dim<F: Field>(g: usize, p: usize, variant: MapVariant, field: &F) -> Result<usize, MapError> {
    let q = check_range(g, p)?;
    let gm = gamma_in_degree(p, q, variant, field);
    let mult = multiplication(q + 1, p + 3, field);
    Ok(homology_dim(&gm, &mult)?)
}

/// `γ'_k : W ⊗ S^k V → ker(S^{k+1} V ⊗ V → S^{k+2} V)`, with the codomain
/// written in the kernel basis attached to the non-pivot columns of the
/// multiplication map (a kernel vector is determined by its entries there).
pub fn gamma_prime<F: Field>(p: usize, k: usize, variant: MapVariant, field: &F) -> SparseMatrix<F> {
    let gm = gamma_in_degree(p, k, variant, field);
    let free = kernel_coordinates(k + 1, p + 3, field);
    gm.select_rows(&free)
}

/// Non-pivot columns of `S^k V ⊗ V → S^{k+1} V`.
fn kernel_coordinates<F: Field>(k: usize, v_dim: usize, field: &F) -> Vec<usize> {
    let mult = multiplication(k, v_dim, field);
    let pivots = pivot_columns(&mult);
    let mut is_pivot = vec![false; mult.domain_dim()];
    for c in pivots {
        is_pivot[c] = true;
    }
    (0..mult.domain_dim()).filter(|&c| !is_pivot[c]).collect()
}

/// Whether `γ'_k` is onto the kernel of multiplication.
pub fn gamma_prime_surjective<F: Field>(p: usize, k: usize, variant: MapVariant, field: &F) -> bool {
    let gp = gamma_prime(p, k, variant, field);
    gp.rank() == gp.codomain_dim()
}

/// Injectivity of `V_h^∨ → ∧² V^∨ → W^∨` at the functional `h ∈ S^{p+2} U`:
/// the vectors `x^j ∧ h` (`j ≠ deg h`) are mapped by the Wahl map (Tangent)
/// or by `τ` (Carpet) and tested for linear independence.
pub fn fiber_dual_injectivity<F: Field>(
    p: usize,
    h: &[F::Elem],
    variant: MapVariant,
    field: &F,
) -> Result<bool, MapError> {
    let m = p + 2;
    if h.len() != m + 1 {
        return Err(MapError::InvalidRange(format!(
            "h must have {} coordinates, got {}",
            m + 1,
            h.len()
        )));
    }
    let Some(deg) = (0..=m).rev().find(|&a| !field.is_zero(&h[a])) else {
        return Err(MapError::ZeroFunctional);
    };
    let dual = match variant {
        MapVariant::Tangent => wahl_map(m, field),
        MapVariant::Carpet => tau_map(m, field),
    };
    let js: Vec<usize> = (0..=m).filter(|&j| j != deg).collect();
    let wedge = SparseMatrix::from_columns(field, m * (m + 1) / 2, js.len(), |c| {
        let j = js[c];
        (0..=m)
            .filter(|&a| !field.is_zero(&h[a]))
            .filter_map(|a| wedge2(j, a).map(|(idx, sign)| (idx, field.mul(&field.from_i64(sign), &h[a]))))
            .collect()
    });
    let images = dual.compose(&wedge)?;
    Ok(images.rank() == js.len())
}

/// `h^i(P^n, O(k))`.
pub fn line_bundle_cohomology(n: usize, i: usize, k: i64) -> usize {
    let n_i = n as i64;
    if i == 0 && k >= 0 {
        binomial((k + n_i) as usize, n)
    } else if i == n && k < -n_i {
        binomial((-k - 1) as usize, n)
    } else {
        0
    }
}

/// Outcome of the regularity check for the kernel bundle `K` of
/// `W ⊗ O → M_V(1)` on `P^{p+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRegularity {
    pub regular: bool,
    /// `(i, m) ↦ dim H^i(K(m))` for `m = p + 1 - i`; entries for `i >= 2`
    /// are upper bounds from the defining sequences, exact when zero.
    pub witness: BTreeMap<(usize, i64), usize>,
}

/// `(p+1)`-regularity of `K`: `H^i(K(p+1-i)) = 0` for all `i >= 1`.
///
/// `H^1(K(p))` is the cokernel of `γ'_p`. For `i >= 2` the sequences
/// `0 → K → W ⊗ O → M_V(1) → 0` and `0 → M_V → V ⊗ O → O(1) → 0` bound
/// `H^i(K(m))` by `dim W · h^i(O(m)) + h^{i-1}(M_V(m+1))`, where `h^1(M_V(n))`
/// is the cokernel of `V ⊗ S^n V → S^{n+1} V` plus `dim V · h^1(O(n))` and,
/// for `j >= 2`, `h^j(M_V(n)) <= h^{j-1}(O(n+1)) + dim V · h^j(O(n))`.
pub fn kernel_regularity<F: Field>(p: usize, variant: MapVariant, field: &F) -> KernelRegularity {
    let n = p + 2;
    let v_dim = p + 3;
    let w = w_dim(p, variant, field);
    let mut witness = BTreeMap::new();

    let gp = gamma_prime(p, p, variant, field);
    witness.insert((1, p as i64), gp.codomain_dim() - gp.rank());

    for i in 2..=n {
        let m = p as i64 + 1 - i as i64;
        let from_w = w * line_bundle_cohomology(n, i, m);
        let j = i - 1;
        let twist = m + 1;
        let from_mv = if j == 1 {
            let coker = if twist >= 0 {
                let mult = multiplication(twist as usize, v_dim, field);
                mult.codomain_dim() - mult.rank()
            } else {
                line_bundle_cohomology(n, 0, twist + 1)
            };
            coker + v_dim * line_bundle_cohomology(n, 1, twist)
        } else {
            line_bundle_cohomology(n, j - 1, twist + 1) + v_dim * line_bundle_cohomology(n, j, twist)
        };
        witness.insert((i, m), from_w + from_mv);
    }
    let regular = witness.values().all(|&d| d == 0);
    KernelRegularity { regular, witness }
}
