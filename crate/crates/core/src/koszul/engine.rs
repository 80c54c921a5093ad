use std::collections::{BTreeMap, HashMap};
use std::marker::PhantomData;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::ring::SectionRing;
use super::KoszulError;
use crate::linalg::{check_complex, Field, SparseMatrix};
use crate::multilinear::{binomial, WedgeBasis};

/// Koszul complexes of a section ring, with cached differential ranks.
///
/// Column `s * dim R_q + f` of the differential `d_{p,q}` is the basis
/// element `v_S ⊗ f` where `S` is the `s`-th increasing `p`-subset; it maps
/// to `sum_j (-1)^j v_{S - i_j} ⊗ v_{i_j} f`.
pub struct KoszulEngine<'a, F: Field, R: SectionRing<F>> {
    ring: &'a R,
    wedges: Vec<WedgeBasis>,
    ranks: Mutex<HashMap<(usize, usize), (usize, u128)>>,
    check: bool,
    _field: PhantomData<F>,
}

impl<'a, F: Field, R: SectionRing<F>> KoszulEngine<'a, F, R> {
    pub fn new(ring: &'a R) -> Self {
        let n = ring.num_vars();
        KoszulEngine {
            ring,
            wedges: (0..=n).map(|k| WedgeBasis::new(n, k)).collect(),
            ranks: Mutex::new(HashMap::new()),
            check: true,
            _field: PhantomData,
        }
    }

    /// Turns the `d∘d = 0` check on every cell on or off (on by default).
    pub fn with_complex_check(mut self, check: bool) -> Self {
        self.check = check;
        self
    }

    fn n(&self) -> usize {
        self.ring.num_vars()
    }

    /// `dim ∧^p V ⊗ R_q`.
    pub fn chain_dim(&self, p: usize, q: usize) -> usize {
        if p > self.n() || q > self.ring.top_degree() {
            return 0;
        }
        binomial(self.n(), p) * self.ring.piece_dim(q)
    }

    fn available(&self, q: usize) -> Result<(), KoszulError> {
        let top = self.ring.top_degree();
        if q > top {
            return Err(KoszulError::PieceUnavailable { degree: q, top });
        }
        Ok(())
    }

    /// The differential `∧^p V ⊗ R_q → ∧^{p-1} V ⊗ R_{q+1}` for `p >= 1`.
    pub fn differential(&self, p: usize, q: usize) -> Result<SparseMatrix<F>, KoszulError> {
        assert!(p >= 1, "d_{{0,q}} is the zero map");
        self.available(q + 1)?;
        let f = self.ring.field();
        let n = self.n();
        if p > n {
            return Ok(SparseMatrix::zero(f, self.chain_dim(p - 1, q + 1), 0));
        }
        let (src, dst) = (&self.wedges[p], &self.wedges[p - 1]);
        let (dq, dq1) = (self.ring.piece_dim(q), self.ring.piece_dim(q + 1));
        let minus_one = f.from_i64(-1);
        let mut face = Vec::with_capacity(p);
        Ok(SparseMatrix::from_columns(f, dst.dim() * dq1, src.dim() * dq, |col| {
            let (s, fi) = (col / dq, col % dq);
            let subset = src.subset(s);
            let mut out = Vec::new();
            for j in 0..p {
                face.clear();
                face.extend(subset.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x));
                let t = dst.index_of(&face).expect("faces of a subset are subsets");
                let a = self.ring.mult(subset[j] as usize, q);
                for (r, x) in a.column(fi) {
                    let v = if j % 2 == 0 { x.clone() } else { f.mul(&minus_one, x) };
                    out.push((t * dq1 + *r as usize, v));
                }
            }
            out
        }))
    }

    /// Rank of `d_{p,q}`, zero when the map is trivially zero.
    pub fn rank(&self, p: usize, q: usize) -> Result<usize, KoszulError> {
        Ok(self.timed_rank(p, q)?.0)
    }

    fn timed_rank(&self, p: usize, q: usize) -> Result<(usize, u128), KoszulError> {
        if p == 0 || self.chain_dim(p, q) == 0 {
            return Ok((0, 0));
        }
        if let Some(r) = self.ranks.lock().unwrap().get(&(p, q)) {
            return Ok(*r);
        }
        let d = self.differential(p, q)?;
        let start = Instant::now();
        let r = (d.rank(), start.elapsed().as_millis());
        self.ranks.lock().unwrap().insert((p, q), r);
        Ok(r)
    }

    /// `κ_{p,q} = dim ∧^p V ⊗ R_q - rank d_{p,q} - rank d_{p+1,q-1}`.
    pub fn betti(&self, p: usize, q: usize) -> Result<usize, KoszulError> {
        self.available(q + 1)?;
        if self.check && p >= 1 && q >= 1 {
            check_complex(&self.differential(p + 1, q - 1)?, &self.differential(p, q)?)?;
        }
        let incoming = if q == 0 { 0 } else { self.rank(p + 1, q - 1)? };
        Ok(self.chain_dim(p, q) - self.rank(p, q)? - incoming)
    }

    /// All `κ_{p,q}` with `p <= p_max`, `q <= q_max`, together with the time
    /// in milliseconds spent on the rank of each outgoing differential.
    ///
    /// Differentials are built and ranked in parallel, one `q` level at a
    /// time so that consecutive levels can be checked against each other.
    #[allow(clippy::type_complexity)]
    pub fn table(
        &self,
        p_max: usize,
        q_max: usize,
    ) -> Result<(BTreeMap<(usize, usize), usize>, BTreeMap<(usize, usize), u128>), KoszulError> {
        self.available(q_max + 1)?;
        let ps: Vec<usize> = (1..=(p_max + 1).min(self.n())).collect();
        let mut previous: Vec<(usize, SparseMatrix<F>)> = Vec::new();
        for q in 0..=q_max {
            let level: Vec<(usize, SparseMatrix<F>, usize, u128)> = ps
                .par_iter()
                .map(|&p| {
                    let d = self.differential(p, q)?;
                    let start = Instant::now();
                    let r = d.rank();
                    Ok((p, d, r, start.elapsed().as_millis()))
                })
                .collect::<Result<_, KoszulError>>()?;
            {
                let mut cache = self.ranks.lock().unwrap();
                for (p, _, r, ms) in &level {
                    cache.insert((*p, q), (*r, *ms));
                }
            }
            if self.check {
                for (p, d, _, _) in &level {
                    if let Some((_, a)) = previous.iter().find(|(pp, _)| *pp == p + 1) {
                        check_complex(a, d)?;
                    }
                }
            }
            previous = level.into_iter().map(|(p, d, _, _)| (p, d)).collect();
        }
        let mut values = BTreeMap::new();
        let mut times = BTreeMap::new();
        for q in 0..=q_max {
            for p in 0..=p_max {
                let incoming = if q == 0 { 0 } else { self.rank(p + 1, q - 1)? };
                let (out, ms) = self.timed_rank(p, q)?;
                values.insert((p, q), self.chain_dim(p, q) - out - incoming);
                times.insert((p, q), ms);
            }
        }
        Ok((values, times))
    }
}
