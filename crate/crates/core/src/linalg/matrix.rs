//! Column-major sparse matrices over an exact field.

use std::fmt;

use super::field::Field;
use super::LinalgError;

/// A sparse matrix describing a linear map from a `domain_dim`-dimensional
/// space to a `codomain_dim`-dimensional one. Columns are images of domain
/// basis vectors; every stored entry is nonzero and rows within a column are
/// strictly increasing.
#[derive(Clone)]
pub struct SparseMatrix<F: Field> {
    field: F,
    codomain_dim: usize,
    cols: Vec<Vec<(u32, F::Elem)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(field: &F, codomain_dim: usize, domain_dim: usize) -> Self {
        assert!(codomain_dim <= u32::MAX as usize);
        SparseMatrix {
            field: field.clone(),
            codomain_dim,
            cols: vec![Vec::new(); domain_dim],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for (i, col) in m.cols.iter_mut().enumerate() {
            col.push((i as u32, field.one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed and zero results dropped.
    pub fn from_triplets<I>(field: &F, codomain_dim: usize, domain_dim: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut cols: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); domain_dim];
        for (row, col, value) in triplets {
            if row >= codomain_dim || col >= domain_dim {
                return Err(LinalgError::IndexOutOfRange {
                    row,
                    col,
                    rows: codomain_dim,
                    cols: domain_dim,
                });
            }
            cols[col].push((row, value));
        }
        let mut m = Self::zero(field, codomain_dim, domain_dim);
        for (c, entries) in cols.into_iter().enumerate() {
            m.set_column(c, entries);
        }
        Ok(m)
    }

    /// Builds a matrix column by column; `column(c)` lists the image of the
    /// `c`-th domain basis vector, in any order and with repeats allowed.
    pub fn from_columns<G>(field: &F, codomain_dim: usize, domain_dim: usize, mut column: G) -> Self
    where
        G: FnMut(usize) -> Vec<(usize, F::Elem)>,
    {
        let mut m = Self::zero(field, codomain_dim, domain_dim);
        for c in 0..domain_dim {
            let entries = column(c);
            m.set_column(c, entries);
        }
        m
    }

    /// Replaces column `c`, normalizing the entry list.
    pub fn set_column(&mut self, c: usize, mut entries: Vec<(usize, F::Elem)>) {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(u32, F::Elem)> = Vec::with_capacity(entries.len());
        for (row, value) in entries {
            assert!(row < self.codomain_dim, "row {row} out of range");
            match out.last_mut() {
                Some(last) if last.0 as usize == row => last.1 = self.field.add(&last.1, &value),
                _ => out.push((row as u32, value)),
            }
        }
        out.retain(|e| !self.field.is_zero(&e.1));
        self.cols[c] = out;
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn domain_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(u32, F::Elem)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<(u32, F::Elem)>] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> F::Elem {
        match self.cols[col].binary_search_by_key(&(row as u32), |e| e.0) {
            Ok(i) => self.cols[col][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// All nonzero entries as `(row, col, value)`, column by column.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); self.codomain_dim];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r as usize].push((c as u32, v.clone()));
            }
        }
        SparseMatrix {
            field: self.field.clone(),
            codomain_dim: self.cols.len(),
            cols,
        }
    }

    /// The composite `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if rhs.codomain_dim != self.domain_dim() {
            return Err(LinalgError::DimensionMismatch {
                context: "compose: inner dimensions",
                left: self.domain_dim(),
                right: rhs.codomain_dim,
            });
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.codomain_dim, rhs.domain_dim());
        let mut acc: Vec<F::Elem> = vec![f.zero(); self.codomain_dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; self.codomain_dim];
        for (c, col) in rhs.cols.iter().enumerate() {
            for (k, a) in col {
                for (r, b) in &self.cols[*k as usize] {
                    let r = *r as usize;
                    if !mark[r] {
                        mark[r] = true;
                        touched.push(r);
                    }
                    acc[r] = f.add(&acc[r], &f.mul(a, b));
                }
            }
            touched.sort_unstable();
            let mut entries = Vec::with_capacity(touched.len());
            for &r in &touched {
                let v = std::mem::replace(&mut acc[r], f.zero());
                mark[r] = false;
                if !f.is_zero(&v) {
                    entries.push((r as u32, v));
                }
            }
            touched.clear();
            out.cols[c] = entries;
        }
        Ok(out)
    }

    /// Applies the matrix to a dense coordinate vector.
    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.domain_dim());
        let f = &self.field;
        let mut y = vec![f.zero(); self.codomain_dim];
        for (c, col) in self.cols.iter().enumerate() {
            if f.is_zero(&x[c]) {
                continue;
            }
            for (r, v) in col {
                let r = *r as usize;
                y[r] = f.add(&y[r], &f.mul(v, &x[c]));
            }
        }
        y
    }

    /// The submatrix keeping the listed rows, renumbered in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut new_index = vec![u32::MAX; self.codomain_dim];
        for (i, &r) in rows.iter().enumerate() {
            new_index[r] = i as u32;
        }
        let cols = self
            .cols
            .iter()
            .map(|col| {
                let mut kept: Vec<(u32, F::Elem)> = col
                    .iter()
                    .filter(|(r, _)| new_index[*r as usize] != u32::MAX)
                    .map(|(r, v)| (new_index[*r as usize], v.clone()))
                    .collect();
                kept.sort_by_key(|e| e.0);
                kept
            })
            .collect();
        SparseMatrix {
            field: self.field.clone(),
            codomain_dim: rows.len(),
            cols,
        }
    }

    /// The submatrix keeping the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        SparseMatrix {
            field: self.field.clone(),
            codomain_dim: self.codomain_dim,
            cols: cols.iter().map(|&c| self.cols[c].clone()).collect(),
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.codomain_dim as u32;
        let mut cols = self.cols.clone();
        cols.extend(
            other
                .cols
                .iter()
                .map(|col| col.iter().map(|(r, v)| (r + shift, v.clone())).collect()),
        );
        SparseMatrix {
            field: self.field.clone(),
            codomain_dim: self.codomain_dim + other.codomain_dim,
            cols,
        }
    }

    /// Stacks `other` below `self` (same domain).
    pub fn stack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.domain_dim() != other.domain_dim() {
            return Err(LinalgError::DimensionMismatch {
                context: "stack: domains",
                left: self.domain_dim(),
                right: other.domain_dim(),
            });
        }
        let shift = self.codomain_dim as u32;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut col = a.clone();
                col.extend(b.iter().map(|(r, v)| (r + shift, v.clone())));
                col
            })
            .collect();
        Ok(SparseMatrix {
            field: self.field.clone(),
            codomain_dim: self.codomain_dim + other.codomain_dim,
            cols,
        })
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        self.field.rank(self)
    }

    /// Rows as dense vectors; only for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut rows = vec![vec![self.field.zero(); self.domain_dim()]; self.codomain_dim];
        for (r, c, v) in self.triplets() {
            rows[r][c] = v.clone();
        }
        rows
    }

    /// Checks the structural invariants: sorted, in range, nonzero.
    pub fn validate(&self) -> Result<(), LinalgError> {
        for (c, col) in self.cols.iter().enumerate() {
            for w in col.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(LinalgError::IndexOutOfRange {
                        row: w[1].0 as usize,
                        col: c,
                        rows: self.codomain_dim,
                        cols: self.cols.len(),
                    });
                }
            }
            for (r, v) in col {
                if *r as usize >= self.codomain_dim || self.field.is_zero(v) {
                    return Err(LinalgError::IndexOutOfRange {
                        row: *r as usize,
                        col: c,
                        rows: self.codomain_dim,
                        cols: self.cols.len(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> PartialEq for SparseMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.codomain_dim == other.codomain_dim && self.cols == other.cols
    }
}

impl<F: Field> fmt::Debug for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseMatrix({}x{}, nnz={}, char={})",
            self.codomain_dim,
            self.domain_dim(),
            self.nnz(),
            self.field.characteristic()
        )
    }
}
