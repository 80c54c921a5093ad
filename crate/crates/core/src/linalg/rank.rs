//! Rank of sparse matrices over `F_p`.
//!
//! The matrix is first split into connected blocks of its row/column
//! incidence graph; block ranks add up. Each block is eliminated with a
//! Markowitz pivot rule (shortest row, then sparsest column within it) until
//! the active part becomes dense, at which point the remainder goes to the
//! dense kernel. Blocks with more nonzeros than the configured threshold use
//! the Wiedemann black-box rank instead.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::dense::{inverse, rank_dense_mod_p};
use super::field::PrimeField;
use super::matrix::SparseMatrix;
use super::wiedemann::rank_wiedemann_rows;

/// Tuning knobs for the prime-field rank engine. None of them changes the
/// result except `wiedemann_nnz`, whose randomized rank is exact with high
/// probability only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConfig {
    /// Switch from sparse to dense elimination once the active submatrix
    /// holds more than this percentage of nonzeros.
    pub dense_percent: u32,
    /// Blocks with more nonzeros than this use the Wiedemann rank.
    pub wiedemann_nnz: usize,
    /// Number of independent Wiedemann trials (the maximum is kept).
    pub wiedemann_trials: u32,
    pub seed: u64,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            dense_percent: 8,
            wiedemann_nnz: 400_000_000,
            wiedemann_trials: 2,
            seed: 0x5eed,
        }
    }
}

/// Counters describing how a rank was obtained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankStats {
    pub blocks: usize,
    pub sparse_pivots: usize,
    pub dense_rows: usize,
    pub dense_cols: usize,
    pub wiedemann_blocks: usize,
}

type Row = Vec<(u32, u32)>;

/// Exact rank over the matrix's prime field.
pub fn rank_mod_p(m: &SparseMatrix<PrimeField>) -> usize {
    rank_mod_p_with_stats(m).0
}

pub fn rank_mod_p_with_stats(m: &SparseMatrix<PrimeField>) -> (usize, RankStats) {
    let field = m.field();
    let p = field.modulus();
    let config = field.config();
    let mut stats = RankStats::default();
    // Store the matrix by columns as "rows" of the transposed problem; rank
    // is transpose-invariant and the column lists are already sorted.
    let rows: Vec<Row> = m
        .columns()
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.iter().map(|(r, v)| (*r, *v as u32)).collect())
        .collect();
    let ncols = m.codomain_dim();
    let mut total = 0;
    for block in connected_blocks(rows, ncols) {
        stats.blocks += 1;
        total += rank_block(p, config, block, &mut stats);
    }
    (total, stats)
}

struct Block {
    rows: Vec<Row>,
    ncols: usize,
}

/// Splits rows into connected components, renumbering columns per block.
fn connected_blocks(rows: Vec<Row>, ncols: usize) -> Vec<Block> {
    let mut parent: Vec<u32> = (0..ncols as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for row in &rows {
        let first = row[0].0;
        for &(c, _) in &row[1..] {
            let a = find(&mut parent, first);
            let b = find(&mut parent, c);
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut block_of_root: Vec<u32> = vec![u32::MAX; ncols];
    let mut local_col: Vec<u32> = vec![u32::MAX; ncols];
    let mut blocks: Vec<Block> = Vec::new();
    for mut row in rows {
        let root = find(&mut parent, row[0].0) as usize;
        if block_of_root[root] == u32::MAX {
            block_of_root[root] = blocks.len() as u32;
            blocks.push(Block {
                rows: Vec::new(),
                ncols: 0,
            });
        }
        let block = &mut blocks[block_of_root[root] as usize];
        for e in row.iter_mut() {
            let c = e.0 as usize;
            if local_col[c] == u32::MAX {
                local_col[c] = block.ncols as u32;
                block.ncols += 1;
            }
            e.0 = local_col[c];
        }
        row.sort_unstable_by_key(|e| e.0);
        block.rows.push(row);
    }
    blocks
}

fn rank_block(p: u64, config: &RankConfig, block: Block, stats: &mut RankStats) -> usize {
    let nrows = block.rows.len();
    let ncols = block.ncols;
    if nrows == 1 || ncols == 1 {
        return 1;
    }
    let nnz: usize = block.rows.iter().map(Vec::len).sum();
    if nnz > config.wiedemann_nnz && p > (1 << 14) {
        stats.wiedemann_blocks += 1;
        return rank_wiedemann_rows(p, &block.rows, ncols, config.wiedemann_trials, config.seed);
    }
    Eliminator::new(p, block.rows, ncols).run(config.dense_percent, stats)
}

/// Right-looking sparse elimination with Markowitz-style pivot choice.
struct Eliminator {
    p: u64,
    rows: Vec<Row>,
    alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    col_done: Vec<bool>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
    active_rows: usize,
    active_cols: usize,
    active_nnz: usize,
}

impl Eliminator {
    fn new(p: u64, rows: Vec<Row>, ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        let mut col_count = vec![0u32; ncols];
        let mut heap = BinaryHeap::with_capacity(rows.len());
        let mut nnz = 0;
        for (i, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(i as u32);
                col_count[c as usize] += 1;
            }
            nnz += row.len();
            heap.push(Reverse((row.len() as u32, i as u32)));
        }
        let active_cols = col_count.iter().filter(|&&n| n > 0).count();
        Eliminator {
            p,
            alive: vec![true; rows.len()],
            active_rows: rows.len(),
            rows,
            col_rows,
            col_count,
            col_done: vec![false; ncols],
            heap,
            active_cols,
            active_nnz: nnz,
        }
    }

    fn is_dense(&self, dense_percent: u32) -> bool {
        let area = self.active_rows as u128 * self.active_cols as u128;
        area > 0 && (self.active_nnz as u128) * 100 > dense_percent as u128 * area
    }

    fn run(&mut self, dense_percent: u32, stats: &mut RankStats) -> usize {
        let mut rank = 0;
        loop {
            if self.active_rows == 0 || self.active_cols == 0 {
                return rank;
            }
            if self.is_dense(dense_percent) && self.active_rows > 1 {
                return rank + self.finish_dense(stats);
            }
            let Some(r) = self.pop_shortest() else {
                return rank;
            };
            let row = std::mem::take(&mut self.rows[r]);
            self.alive[r] = false;
            self.active_rows -= 1;
            self.active_nnz -= row.len();
            if row.is_empty() {
                continue;
            }
            // Sparsest column of the chosen row.
            let &(pc, pv) = row
                .iter()
                .min_by_key(|e| (self.col_count[e.0 as usize], e.0))
                .expect("nonempty row");
            for &(c, _) in &row {
                self.col_count[c as usize] -= 1;
            }
            rank += 1;
            stats.sparse_pivots += 1;
            self.col_done[pc as usize] = true;
            let inv = inverse(pv as u64, self.p);
            let targets = std::mem::take(&mut self.col_rows[pc as usize]);
            for t in targets {
                let t = t as usize;
                if !self.alive[t] {
                    continue;
                }
                let Ok(pos) = self.rows[t].binary_search_by_key(&pc, |e| e.0) else {
                    continue;
                };
                let lead = self.rows[t][pos].1 as u64;
                let factor = (self.p - lead) * inv % self.p;
                self.update_row(t, &row, factor as u32);
            }
            if self.col_count[pc as usize] == 0 {
                self.active_cols -= 1;
            }
            // Columns of the pivot row that emptied out leave the active part.
            for &(c, _) in &row {
                if c != pc && self.col_count[c as usize] == 0 && !self.col_done[c as usize] {
                    self.col_done[c as usize] = true;
                    self.active_cols -= 1;
                }
            }
        }
    }

    fn pop_shortest(&mut self) -> Option<usize> {
        while let Some(Reverse((w, r))) = self.heap.pop() {
            let r = r as usize;
            if self.alive[r] && self.rows[r].len() as u32 == w {
                return Some(r);
            }
        }
        None
    }

    /// `rows[t] += factor * pivot`, merging sorted entry lists.
    fn update_row(&mut self, t: usize, pivot: &Row, factor: u32) {
        let p = self.p;
        let old = std::mem::take(&mut self.rows[t]);
        let mut out: Row = Vec::with_capacity(old.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pivot.len() {
            let take_old = j >= pivot.len() || (i < old.len() && old[i].0 < pivot[j].0);
            let take_piv = i >= old.len() || (j < pivot.len() && pivot[j].0 < old[i].0);
            if take_old {
                out.push(old[i]);
                i += 1;
            } else if take_piv {
                let (c, v) = pivot[j];
                let nv = (v as u64 * factor as u64 % p) as u32;
                if nv != 0 {
                    out.push((c, nv));
                    self.col_count[c as usize] += 1;
                    self.col_rows[c as usize].push(t as u32);
                }
                j += 1;
            } else {
                let c = old[i].0;
                let nv = ((old[i].1 as u64 + pivot[j].1 as u64 * factor as u64) % p) as u32;
                if nv != 0 {
                    out.push((c, nv));
                } else {
                    self.col_count[c as usize] -= 1;
                }
                i += 1;
                j += 1;
            }
        }
        self.active_nnz = self.active_nnz + out.len() - old.len();
        if out.is_empty() {
            self.alive[t] = false;
            self.active_rows -= 1;
        } else {
            self.heap.push(Reverse((out.len() as u32, t as u32)));
        }
        self.rows[t] = out;
    }

    fn finish_dense(&mut self, stats: &mut RankStats) -> usize {
        let mut local = vec![u32::MAX; self.col_count.len()];
        let mut ncols = 0usize;
        let live: Vec<usize> = (0..self.rows.len()).filter(|&r| self.alive[r]).collect();
        for &r in &live {
            for &(c, _) in &self.rows[r] {
                if local[c as usize] == u32::MAX {
                    local[c as usize] = ncols as u32;
                    ncols += 1;
                }
            }
        }
        let nrows = live.len();
        stats.dense_rows += nrows;
        stats.dense_cols += ncols;
        // Put the longer side along the rows so each pivot step sweeps the
        // shorter dimension.
        let mut data = vec![0u64; nrows * ncols];
        if nrows >= ncols {
            for (i, &r) in live.iter().enumerate() {
                for &(c, v) in &self.rows[r] {
                    data[i * ncols + local[c as usize] as usize] = v as u64;
                }
            }
            rank_dense_mod_p(self.p, nrows, ncols, data)
        } else {
            for (i, &r) in live.iter().enumerate() {
                for &(c, v) in &self.rows[r] {
                    data[local[c as usize] as usize * nrows + i] = v as u64;
                }
            }
            rank_dense_mod_p(self.p, ncols, nrows, data)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &PrimeField, rows: usize, cols: usize, fill: u32, seed: u64) -> SparseMatrix<PrimeField> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut trip = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_range(0..100) < fill {
                    trip.push((r, c, f.random(&mut rng)));
                }
            }
        }
        SparseMatrix::from_triplets(f, rows, cols, trip).unwrap()
    }

    fn dense_rank(m: &SparseMatrix<PrimeField>) -> usize {
        let p = m.field().modulus();
        let d: Vec<u64> = m.to_dense().into_iter().flatten().collect();
        rank_dense_mod_p(p, m.codomain_dim(), m.domain_dim(), d)
    }

    #[test]
    fn sparse_engine_matches_dense_kernel() {
        for (i, p) in [2u64, 3, 5, 32003].into_iter().enumerate() {
            let f = PrimeField::new(p).unwrap();
            for s in 0..20 {
                let m = random_matrix(&f, 30 + s, 25, 3 + 4 * (s as u32 % 5), 100 * i as u64 + s as u64);
                assert_eq!(rank_mod_p(&m), dense_rank(&m), "p={p} seed={s}");
            }
        }
    }

    #[test]
    fn low_rank_products() {
        let f = PrimeField::new(101).unwrap();
        let a = random_matrix(&f, 60, 7, 60, 1);
        let b = random_matrix(&f, 7, 50, 60, 2);
        let ab = a.compose(&b).unwrap();
        assert!(rank_mod_p(&ab) <= 7);
        assert_eq!(rank_mod_p(&ab), dense_rank(&ab));
    }

    #[test]
    fn blocks_are_counted() {
        let f = PrimeField::new(5).unwrap();
        let m = SparseMatrix::from_triplets(
            &f,
            4,
            4,
            vec![(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 2, 2), (2, 3, 2), (3, 3, 4)],
        )
        .unwrap();
        let (r, stats) = rank_mod_p_with_stats(&m);
        assert_eq!(r, 3);
        assert_eq!(stats.blocks, 3);
    }
}
