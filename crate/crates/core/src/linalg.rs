//! Exact ranks over prime fields.
//!
//! Matrices arising from graded pieces are very sparse and, for monomial
//! modules, block diagonal by multidegree. [`RankEngine`] splits a matrix into
//! the connected components of its row/column incidence graph, eliminates each
//! block densely, and memoizes block ranks by content.

use std::collections::HashMap;

use crate::field::PrimeField;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)`; duplicates are summed.
    pub entries: Vec<(usize, usize, u32)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, value: u32) {
        debug_assert!(row < self.rows && col < self.cols);
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }
}

/// Rank of a dense row-major matrix; destroys `data`.
pub fn dense_rank(field: PrimeField, rows: usize, cols: usize, data: &mut [u32]) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                data.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field.inv(data[rank * cols + col]);
        for c in col..cols {
            data[rank * cols + c] = field.mul(data[rank * cols + c], inv);
        }
        for r in rank + 1..rows {
            let factor = data[r * cols + col];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for c in col..cols {
                let v = data[rank * cols + c];
                if v != 0 {
                    data[r * cols + c] = field.add(data[r * cols + c], field.mul(neg, v));
                }
            }
        }
        rank += 1;
    }
    rank
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub struct RankEngine {
    field: PrimeField,
    cache: HashMap<Vec<u32>, usize>,
}

impl RankEngine {
    pub fn new(field: PrimeField) -> Self {
        RankEngine { field, cache: HashMap::new() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rank(&mut self, m: &SparseMatrix) -> usize {
        let f = self.field;
        let mut entries = m.entries.clone();
        entries.sort_unstable_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, u32)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = f.add(last.2, v),
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        if merged.is_empty() {
            return 0;
        }

        let mut uf = UnionFind::new(m.rows + m.cols);
        for &(r, c, _) in &merged {
            uf.union(r, m.rows + c);
        }
        let mut blocks: HashMap<usize, Vec<(usize, usize, u32)>> = HashMap::new();
        for &e in &merged {
            let root = uf.find(e.0);
            blocks.entry(root).or_default().push(e);
        }
        let mut roots: Vec<usize> = blocks.keys().copied().collect();
        roots.sort_unstable();

        let mut total = 0;
        for root in roots {
            let block = &blocks[&root];
            if block.len() == 1 {
                total += 1;
                continue;
            }
            total += self.block_rank(block);
        }
        total
    }

    fn block_rank(&mut self, block: &[(usize, usize, u32)]) -> usize {
        let mut rows: Vec<usize> = block.iter().map(|e| e.0).collect();
        let mut cols: Vec<usize> = block.iter().map(|e| e.1).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        let (nr, nc) = (rows.len(), cols.len());
        if nr == 1 || nc == 1 {
            return 1;
        }
        let mut key = Vec::with_capacity(2 + 3 * block.len());
        key.push(nr as u32);
        key.push(nc as u32);
        let local: Vec<(usize, usize, u32)> = block
            .iter()
            .map(|&(r, c, v)| (rows.binary_search(&r).unwrap(), cols.binary_search(&c).unwrap(), v))
            .collect();
        for &(r, c, v) in &local {
            key.extend_from_slice(&[r as u32, c as u32, v]);
        }
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        // eliminate along the shorter dimension
        let (dr, dc, transpose) = if nr <= nc { (nr, nc, false) } else { (nc, nr, true) };
        let mut data = vec![0u32; dr * dc];
        for &(r, c, v) in &local {
            let (i, j) = if transpose { (c, r) } else { (r, c) };
            data[i * dc + j] = v;
        }
        let r = dense_rank(self.field, dr, dc, &mut data);
        self.cache.insert(key, r);
        r
    }
}
