use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use super::cache;
use super::poly::{mul_into, IntPoly, Mono, Relation};
use super::{ModelError, ModelSpec};
use crate::error::Error;
use crate::koszul::{
    hilbert_check, hilbert_numerator_check, reduce_by_regular_sequence, BettiTable, GradedRing, KoszulEngine,
    KoszulError, SectionRing,
};
use crate::linalg::{
    run_certified, span_reduce, CharZeroPolicy, Field, FieldComputation, FieldSpec, SparseMatrix, SparseVec,
};

/// Pieces `R_0 .. R_top` of the ring generated by `generators`.
///
/// `R_m` is spanned by the products of the generators with the reduced
/// echelon basis of `R_{m-1}`; coordinates are read off at the pivots, so the
/// same products give the multiplication matrices.
pub(crate) fn section_ring<F: Field>(
    field: &F,
    relation: Relation,
    generators: &[IntPoly],
    top: usize,
) -> Result<GradedRing<F>, ModelError> {
    let gens: Vec<Vec<(Mono, F::Elem)>> = generators
        .iter()
        .map(|g| g.iter().map(|(m, c)| (*m, field.from_i64(*c))).collect())
        .collect();
    let mut previous: Vec<Vec<(Mono, F::Elem)>> = vec![vec![(Mono::ONE, field.one())]];
    let mut dims = vec![1];
    let mut mult = Vec::with_capacity(top);
    for _ in 1..=top {
        let prev_dim = previous.len();
        let mut products: Vec<Vec<(Mono, F::Elem)>> = Vec::with_capacity(gens.len() * prev_dim);
        let mut acc = HashMap::new();
        for g in &gens {
            for b in &previous {
                mul_into(field, relation, b, g, &mut acc);
                products.push(acc.drain().filter(|(_, c)| !field.is_zero(c)).collect());
            }
        }
        let mut monomials: Vec<Mono> = products.iter().flatten().map(|(m, _)| *m).collect();
        monomials.sort_unstable();
        monomials.dedup();
        let index: HashMap<Mono, usize> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let vectors: Vec<SparseVec<F>> = products
            .into_iter()
            .map(|p| {
                let mut v: SparseVec<F> = p.into_iter().map(|(m, c)| (index[&m], c)).collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        let basis = span_reduce(field, monomials.len(), &vectors);
        let dim = basis.dim();
        let level: Vec<SparseMatrix<F>> = (0..gens.len())
            .map(|i| {
                SparseMatrix::from_columns(field, dim, prev_dim, |c| {
                    basis.sparse_coordinates_unchecked(&vectors[i * prev_dim + c])
                })
            })
            .collect();
        mult.push(level);
        dims.push(dim);
        previous = basis
            .rows()
            .iter()
            .map(|row| row.iter().map(|(j, x)| (monomials[*j], x.clone())).collect())
            .collect();
    }
    Ok(GradedRing::new(field, gens.len(), dims, mult)?)
}

/// `κ_{p,q}` of any section ring, with the complex property checked.
pub fn koszul_betti<F: Field, R: SectionRing<F>>(ring: &R, p: usize, q: usize) -> Result<usize, KoszulError> {
    KoszulEngine::new(ring).betti(p, q)
}

/// How a Betti table is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    /// Highest row computed; the ring is built one degree further.
    pub q_max: usize,
    /// Divide out a verified regular sequence first.
    pub reduce: bool,
    /// Random linear forms tried per step once the coordinates fail.
    pub random_tries: usize,
    /// Number of random commutativity checks on the model.
    pub commutativity_samples: usize,
    pub seed: u64,
    /// Record per-cell rank timings.
    pub timings: bool,
    /// Directory for memoized graded pieces.
    pub cache_dir: Option<PathBuf>,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            q_max: 4,
            reduce: true,
            random_tries: 4,
            commutativity_samples: 100,
            seed: 0x5eed,
            timings: false,
            cache_dir: None,
        }
    }
}

/// The field-independent part of a table computation. Equality ignores the
/// timings so that proxy primes can be compared.
#[derive(Clone, Debug)]
pub struct TableData {
    pub entries: BTreeMap<(usize, usize), usize>,
    /// `dim R_m` of the full model.
    pub piece_dims: Vec<usize>,
    /// Dimension of `V` after dividing out the regular sequence.
    pub reduced_vars: usize,
    pub timings_ms: BTreeMap<(usize, usize), u128>,
}

impl PartialEq for TableData {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.piece_dims == other.piece_dims
    }
}

struct BettiTask<'a> {
    spec: ModelSpec,
    options: &'a BettiOptions,
}

impl FieldComputation for BettiTask<'_> {
    type Output = TableData;
    type Error = Error;

    fn run<F: Field>(&self, field: &F) -> Result<TableData, Error> {
        let top = self.options.q_max + 1;
        let ring = match &self.options.cache_dir {
            Some(dir) => match cache::load_ring(dir, &self.spec, field, top)? {
                Some(r) => r,
                None => {
                    let r = self.spec.build(field, top)?;
                    cache::store_ring(dir, &self.spec, &r)?;
                    r
                }
            },
            None => self.spec.build(field, top)?,
        };
        ring.check_commutative(self.options.commutativity_samples, self.options.seed)?;
        hilbert_check(&ring, top)?;
        let dim_v = self.spec.dim_v();
        let (entries, timings_ms, reduced_vars) = if self.options.reduce {
            let red = reduce_by_regular_sequence(&ring, 3, self.options.random_tries, self.options.seed);
            let (e, t) = KoszulEngine::new(&red.ring).table(dim_v, self.options.q_max)?;
            (e, t, red.ring.num_vars())
        } else {
            let (e, t) = KoszulEngine::new(&ring).table(dim_v, self.options.q_max)?;
            (e, t, dim_v)
        };
        Ok(TableData {
            entries,
            piece_dims: ring.dims().to_vec(),
            reduced_vars,
            timings_ms,
        })
    }

    fn size_hint(&self) -> usize {
        self.spec.dim_v() * self.spec.hilbert().value(self.options.q_max + 1)
    }
}

/// The Betti table of `spec` over the field named by `field`, with the
/// proxy-prime policy in characteristic zero.
///
/// Besides the commutativity and Hilbert-function checks on the model and
/// the `d∘d = 0` check on every cell, the table must satisfy the Hilbert
/// numerator identity before it is returned.
pub fn compute_betti_table(
    spec: ModelSpec,
    field: FieldSpec,
    policy: &CharZeroPolicy,
    options: &BettiOptions,
) -> Result<BettiTable, Error> {
    spec.validate()?;
    spec.check_characteristic(field.characteristic())?;
    let task = BettiTask { spec, options };
    let certified = run_certified(field, policy, &task)?;
    let data = certified.value;
    let table = BettiTable {
        model: spec.to_string(),
        g_or_degree: spec.degree(),
        dim_v: spec.dim_v(),
        characteristic: field.characteristic(),
        certification: certified.certification,
        flagged: certified.flagged,
        p_max: spec.dim_v(),
        q_max: options.q_max,
        entries: data.entries,
        timings_ms: options.timings.then_some(data.timings_ms),
    };
    let hilbert = spec.hilbert();
    if !hilbert_numerator_check(&table, |m| hilbert.value(m)) {
        return Err(KoszulError::NumeratorMismatch(spec.to_string()).into());
    }
    Ok(table)
}
