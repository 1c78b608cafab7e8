//! Graded modules given by explicit bases and variable actions, and graded
//! Betti numbers computed from Koszul homology.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::complex::subsets;
use crate::error::{Error, Result};
use crate::linalg::{RankEngine, SparseMatrix};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub component: usize,
    pub monomial: Monomial,
}

/// Sparse vector in one graded piece: `(basis index, coefficient)`.
pub type SparseVector = Vec<(usize, u32)>;

/// A graded module known in degrees `min_degree..=max_degree`.
///
/// `actions[t][d - min_degree]` holds the images of the degree-`d` basis under
/// variable `t`, or `None` when the target degree lies past `max_degree`.
#[derive(Clone, Debug)]
pub struct ExplicitGradedModule {
    ring: RingSpec,
    min_degree: i64,
    max_degree: i64,
    pieces: Vec<Vec<BasisLabel>>,
    actions: Vec<Vec<Option<Vec<SparseVector>>>>,
}

impl ExplicitGradedModule {
    /// Builds a module whose variables send basis labels to basis labels or to
    /// zero, as happens for monomial modules and their associated graded.
    pub fn from_monomial_action(
        ring: RingSpec,
        min_degree: i64,
        pieces: Vec<Vec<BasisLabel>>,
        act: impl Fn(usize, &BasisLabel) -> Option<BasisLabel>,
    ) -> Result<Self> {
        let max_degree = min_degree + pieces.len() as i64 - 1;
        let index: Vec<HashMap<&BasisLabel, usize>> =
            pieces.iter().map(|p| p.iter().enumerate().map(|(k, l)| (l, k)).collect()).collect();
        let mut actions = Vec::with_capacity(ring.num_vars());
        for t in 0..ring.num_vars() {
            let w = ring.weights()[t] as i64;
            let mut per_degree = Vec::with_capacity(pieces.len());
            for (k, piece) in pieces.iter().enumerate() {
                let target = k as i64 + w;
                if min_degree + target > max_degree {
                    per_degree.push(None);
                    continue;
                }
                let mut images = Vec::with_capacity(piece.len());
                for label in piece {
                    let image = match act(t, label) {
                        None => Vec::new(),
                        Some(l) => {
                            let pos = index[target as usize].get(&l).ok_or_else(|| {
                                Error::Internal(format!("action image {:?} missing from degree {}", l, min_degree + target))
                            })?;
                            vec![(*pos, 1)]
                        }
                    };
                    images.push(image);
                }
                per_degree.push(Some(images));
            }
            actions.push(per_degree);
        }
        Ok(ExplicitGradedModule { ring, min_degree, max_degree, pieces, actions })
    }

    /// The zero module, known in every degree up to `max_degree`.
    pub fn zero(ring: RingSpec, max_degree: i64) -> Self {
        let actions = vec![Vec::new(); ring.num_vars()];
        ExplicitGradedModule { ring, min_degree: max_degree + 1, max_degree, pieces: Vec::new(), actions }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// Basis of the degree-`d` piece; empty outside the stored range.
    pub fn piece(&self, d: i64) -> &[BasisLabel] {
        if d < self.min_degree || d > self.max_degree {
            return &[];
        }
        &self.pieces[(d - self.min_degree) as usize]
    }

    pub fn dim(&self, d: i64) -> usize {
        self.piece(d).len()
    }

    /// Images of the degree-`d` basis under variable `t`.
    pub fn action(&self, t: usize, d: i64) -> Option<&[SparseVector]> {
        if d < self.min_degree || d > self.max_degree {
            return None;
        }
        self.actions[t][(d - self.min_degree) as usize].as_deref()
    }

    /// Applies variable `t` to a vector in degree `d`.
    pub fn apply(&self, t: usize, d: i64, v: &[(usize, u32)]) -> Option<SparseVector> {
        let field = self.ring.field();
        if d + (self.ring.weights()[t] as i64) < self.min_degree {
            return Some(Vec::new());
        }
        let images = self.action(t, d)?;
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for &(k, c) in v {
            for &(r, a) in &images[k] {
                let e = acc.entry(r).or_insert(0);
                *e = field.add(*e, field.mul(a, c));
            }
        }
        let mut out: SparseVector = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        Some(out)
    }

    /// Checks `x_s x_t = x_t x_s` on every basis vector where both sides are stored.
    pub fn actions_commute(&self) -> bool {
        let n = self.ring.num_vars();
        let w = self.ring.weights();
        for d in self.min_degree..=self.max_degree {
            for k in 0..self.dim(d) {
                let v = vec![(k, 1)];
                for s in 0..n {
                    for t in s + 1..n {
                        let st = self.apply(s, d, &v).and_then(|u| self.apply(t, d + w[s] as i64, &u));
                        let ts = self.apply(t, d, &v).and_then(|u| self.apply(s, d + w[t] as i64, &u));
                        if let (Some(a), Some(b)) = (st, ts) {
                            if a != b {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The same pieces viewed over `ring`, which must share weights with this
    /// module's ring on its first variables; further variables act by zero.
    pub fn extended(&self, ring: &RingSpec) -> Result<Self> {
        let k = self.ring.num_vars();
        let is_prefix = ring.num_vars() >= k
            && ring.characteristic() == self.ring.characteristic()
            && ring.weights()[..k] == *self.ring.weights()
            && ring.names()[..k] == *self.ring.names();
        if !is_prefix {
            return Err(Error::NotPrefixSubring { sub: self.ring.weights().to_vec(), full: ring.weights().to_vec() });
        }
        let mut actions = self.actions.clone();
        for t in k..ring.num_vars() {
            let w = ring.weights()[t] as i64;
            actions.push(
                self.pieces
                    .iter()
                    .enumerate()
                    .map(|(d, p)| (self.min_degree + d as i64 + w <= self.max_degree).then(|| vec![Vec::new(); p.len()]))
                    .collect(),
            );
        }
        Ok(ExplicitGradedModule {
            ring: ring.clone(),
            min_degree: self.min_degree,
            max_degree: self.max_degree,
            pieces: self.pieces.clone(),
            actions,
        })
    }

    /// The submodule of `sum_c S(-comp_degrees[c])` generated by monomials
    /// `(c, m)`, known up to degree `max_degree`.
    pub fn from_monomial_submodule(
        ring: &RingSpec,
        comp_degrees: &[i64],
        gens: &[(usize, Monomial)],
        max_degree: i64,
    ) -> Result<Self> {
        for (c, m) in gens {
            if *c >= comp_degrees.len() {
                return Err(Error::Range { what: "component index", value: *c as i64 });
            }
            ring.check(m)?;
        }
        let Some(lo) = gens.iter().map(|(c, m)| comp_degrees[*c] + m.weighted_degree(ring.weights())).min() else {
            return Ok(Self::zero(ring.clone(), max_degree));
        };
        let mut pieces = Vec::new();
        for d in lo..=max_degree {
            let mut piece = Vec::new();
            for (c, &g) in comp_degrees.iter().enumerate() {
                for m in monomials_of_degree(ring.weights(), d - g) {
                    if gens.iter().any(|(gc, u)| *gc == c && u.divides(&m)) {
                        piece.push(BasisLabel { component: c, monomial: m });
                    }
                }
            }
            pieces.push(piece);
        }
        Self::from_monomial_action(ring.clone(), lo, pieces, |t, l| {
            Some(BasisLabel { component: l.component, monomial: l.monomial.mul_var(t, 1) })
        })
    }
}

/// Graded Betti numbers `beta_{i,j} = dim H_i(K (x) M)_j` for `j <= bound`,
/// from the Koszul strands `C_i(j) = sum_{|I| = i} M_{j - w_I}`.
pub fn betti_via_koszul(m: &ExplicitGradedModule, ring: &RingSpec, bound: i64) -> Result<BettiTable> {
    if ring.weights() != m.ring.weights() || ring.characteristic() != m.ring.characteristic() {
        return Err(Error::AmbientMismatch);
    }
    if bound > m.max_degree {
        return Err(Error::Range { what: "degree bound beyond stored range", value: bound });
    }
    let n = ring.num_vars();
    let w = ring.weights();
    let levels: Vec<Vec<(Vec<usize>, i64)>> = (0..=n)
        .map(|i| subsets(n, i).into_iter().map(|s| { let d = s.iter().map(|&t| w[t] as i64).sum(); (s, d) }).collect())
        .collect();
    let index: Vec<HashMap<Vec<usize>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(k, (s, _))| (s.clone(), k)).collect()).collect();
    let field = ring.field();

    let per_degree: Vec<Vec<(usize, i64, usize)>> = (m.min_degree..=bound)
        .into_par_iter()
        .map(|j| {
            let mut engine = RankEngine::new(field);
            let offsets: Vec<(Vec<usize>, usize)> = levels
                .iter()
                .map(|l| {
                    let mut off = Vec::with_capacity(l.len());
                    let mut total = 0;
                    for (_, d) in l {
                        off.push(total);
                        total += m.dim(j - d);
                    }
                    (off, total)
                })
                .collect();
            let mut ranks = vec![0usize; n + 2];
            for i in 1..=n {
                if offsets[i].1 == 0 || offsets[i - 1].1 == 0 {
                    continue;
                }
                let mut mat = SparseMatrix::new(offsets[i - 1].1, offsets[i].1);
                for (col_block, (set, d)) in levels[i].iter().enumerate() {
                    let src = j - d;
                    let dim = m.dim(src);
                    if dim == 0 {
                        continue;
                    }
                    for pos in 0..set.len() {
                        let mut rest = set.clone();
                        let t = rest.remove(pos);
                        let row_block = index[i - 1][&rest];
                        let images = m.action(t, src).expect("targets lie within the bound");
                        let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
                        for (k, img) in images.iter().enumerate() {
                            for &(r, c) in img {
                                mat.push(offsets[i - 1].0[row_block] + r, offsets[i].0[col_block] + k, field.mul(sign, c));
                            }
                        }
                    }
                }
                ranks[i] = engine.rank(&mat);
            }
            (0..=n)
                .map(|i| (i, j, offsets[i].1 - ranks[i] - ranks[i + 1]))
                .filter(|e| e.2 > 0)
                .collect()
        })
        .collect();
    Ok(BettiTable::from_entries(per_degree.into_iter().flatten()))
}
