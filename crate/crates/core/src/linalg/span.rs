//! Echelon bases of spans, coordinates, pivot columns and kernels.
//!
//! Vectors are inserted one at a time and reduced against the current rows
//! in insertion order, visiting only rows whose pivot is actually hit. This
//! keeps the cost proportional to fill rather than to the ambient dimension.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::matrix::SparseMatrix;
use super::LinalgError;

/// A sparse coordinate vector: `(index, value)` pairs, indices increasing.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// Echelon basis of a subspace of `F^ambient_dim`.
///
/// After [`EchelonBasis::finish`] the rows are in reduced row echelon form,
/// sorted by pivot: each row has a `1` at its pivot and zeros at every other
/// pivot. The coordinates of a span member are then its entries at the
/// pivot positions.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ambient_dim: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<u32>,
    reduced: bool,
    acc: Vec<F::Elem>,
    touched: Vec<bool>,
}

const NONE: u32 = u32::MAX;

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, ambient_dim: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![NONE; ambient_dim],
            reduced: true,
            acc: vec![field.zero(); ambient_dim],
            touched: vec![false; ambient_dim],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each row, in row order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Index of the row whose pivot is `col`, if any.
    pub fn row_with_pivot(&self, col: usize) -> Option<usize> {
        match self.row_of_pivot[col] {
            NONE => None,
            r => Some(r as usize),
        }
    }

    /// Reduces `v` against the current rows and returns the remainder.
    pub fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F> {
        let f = self.field.clone();
        let mut support: Vec<usize> = Vec::with_capacity(v.len());
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for (i, x) in v {
            assert!(*i < self.ambient_dim, "coordinate {i} out of range");
            if !self.touched[*i] {
                self.touched[*i] = true;
                support.push(*i);
            }
            self.acc[*i] = f.add(&self.acc[*i], x);
            if self.row_of_pivot[*i] != NONE {
                heap.push(Reverse(self.row_of_pivot[*i]));
            }
        }
        let mut last = None;
        while let Some(Reverse(k)) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let row = &self.rows[k as usize];
            let pc = self.pivots[k as usize];
            if f.is_zero(&self.acc[pc]) {
                continue;
            }
            let c = self.acc[pc].clone();
            for (j, y) in row {
                if !self.touched[*j] {
                    self.touched[*j] = true;
                    support.push(*j);
                }
                self.acc[*j] = f.sub_mul(&self.acc[*j], &c, y);
                let rj = self.row_of_pivot[*j];
                if rj != NONE && rj > k {
                    heap.push(Reverse(rj));
                }
            }
        }
        support.sort_unstable();
        let mut out = Vec::new();
        for i in support {
            self.touched[i] = false;
            let x = std::mem::replace(&mut self.acc[i], f.zero());
            if !f.is_zero(&x) {
                out.push((i, x));
            }
        }
        out
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let rem = self.reduce(v);
        self.push_reduced(rem)
    }

    fn push_reduced(&mut self, mut rem: SparseVec<F>) -> bool {
        if rem.is_empty() {
            return false;
        }
        let pc = rem[0].0;
        let inv = self.field.inv(&rem[0].1);
        for e in rem.iter_mut() {
            e.1 = self.field.mul(&e.1, &inv);
        }
        self.row_of_pivot[pc] = self.rows.len() as u32;
        self.rows.push(rem);
        self.pivots.push(pc);
        self.reduced = false;
        true
    }

    /// Brings the rows to reduced row echelon form sorted by pivot.
    pub fn finish(&mut self) {
        if self.reduced {
            return;
        }
        let f = self.field.clone();
        let n = self.rows.len();
        // Row k has zeros at the pivots of rows inserted before it; clearing
        // pivots from the last row backwards therefore never reintroduces a
        // cleared pivot.
        for k in (0..n).rev() {
            let pc = self.pivots[k];
            let pivot_row = self.rows[k].clone();
            for j in 0..k {
                let Ok(pos) = self.rows[j].binary_search_by_key(&pc, |e| e.0) else {
                    continue;
                };
                let c = self.rows[j][pos].1.clone();
                let merged = axpy_sparse(&f, &self.rows[j], &c, &pivot_row);
                self.rows[j] = merged;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows = std::mem::take(&mut self.rows);
        self.rows = order.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
        self.pivots = order.iter().map(|&i| self.pivots[i]).collect();
        for (i, &pc) in self.pivots.iter().enumerate() {
            self.row_of_pivot[pc] = i as u32;
        }
        self.reduced = true;
    }

    /// Coordinates of a span member in the reduced basis.
    pub fn coordinates(&mut self, v: &[(usize, F::Elem)]) -> Result<Vec<F::Elem>, LinalgError> {
        self.finish();
        let rem = self.reduce(v);
        if let Some((i, _)) = rem.first() {
            return Err(LinalgError::NotInSpan { coordinate: *i });
        }
        Ok(self.coordinates_unchecked(v))
    }

    /// Coordinates read off at the pivot positions, without the membership
    /// check. Valid only for members of the span and a finished basis.
    pub fn coordinates_unchecked(&self, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        debug_assert!(self.reduced);
        let mut out = vec![self.field.zero(); self.rows.len()];
        for (i, x) in v {
            let r = self.row_of_pivot[*i];
            if r != NONE {
                out[r as usize] = self.field.add(&out[r as usize], x);
            }
        }
        out
    }

    /// Sparse variant of [`Self::coordinates_unchecked`].
    pub fn sparse_coordinates_unchecked(&self, v: &[(usize, F::Elem)]) -> SparseVec<F> {
        debug_assert!(self.reduced);
        let mut out: SparseVec<F> = v
            .iter()
            .filter(|(i, _)| self.row_of_pivot[*i] != NONE)
            .map(|(i, x)| (self.row_of_pivot[*i] as usize, x.clone()))
            .collect();
        out.sort_by_key(|e| e.0);
        out.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = self.field.add(&a.1, &b.1);
                true
            } else {
                false
            }
        });
        out.retain(|e| !self.field.is_zero(&e.1));
        out
    }

    /// Expands coordinates back into the ambient space.
    pub fn combine(&self, coords: &[F::Elem]) -> SparseVec<F> {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (j, y) in row {
                acc[*j] = f.add(&acc[*j], &f.mul(c, y));
            }
        }
        acc.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
    }
}

fn axpy_sparse<F: Field>(f: &F, a: &SparseVec<F>, c: &F::Elem, b: &SparseVec<F>) -> SparseVec<F> {
    // a - c * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(&f.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = f.sub_mul(&a[i].1, c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelonized basis of the span of `vectors`, finished to reduced form.
pub fn span_reduce<F: Field>(field: &F, ambient_dim: usize, vectors: &[SparseVec<F>]) -> EchelonBasis<F> {
    let mut basis = EchelonBasis::new(field, ambient_dim);
    for v in vectors {
        basis.insert(v);
    }
    basis.finish();
    basis
}

/// Columns of `m` that are not combinations of earlier columns.
pub fn pivot_columns<F: Field>(m: &SparseMatrix<F>) -> Vec<usize> {
    let mut basis = EchelonBasis::new(m.field(), m.codomain_dim());
    let mut out = Vec::new();
    for c in 0..m.domain_dim() {
        let v: SparseVec<F> = m.column(c).iter().map(|(r, x)| (*r as usize, x.clone())).collect();
        if basis.insert(&v) {
            out.push(c);
        }
    }
    out
}

/// Kernel of `m`: one vector per non-pivot column `c`, with a `1` at `c` and
/// zeros at every other non-pivot column. Returns `(free_columns, vectors)`.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> (Vec<usize>, Vec<SparseVec<F>>) {
    let f = m.field();
    let rows = m.codomain_dim();
    let mut basis = EchelonBasis::new(f, rows + m.domain_dim());
    let mut free = Vec::new();
    let mut kernel = Vec::new();
    for c in 0..m.domain_dim() {
        let mut v: SparseVec<F> = m.column(c).iter().map(|(r, x)| (*r as usize, x.clone())).collect();
        v.push((rows + c, f.one()));
        let rem = basis.reduce(&v);
        if rem.first().map_or(true, |e| e.0 >= rows) {
            free.push(c);
            kernel.push(rem.into_iter().map(|(i, x)| (i - rows, x)).collect());
        } else {
            basis.push_reduced(rem);
        }
    }
    (free, kernel)
}
