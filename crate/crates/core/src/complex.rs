//! Graded free complexes over a weighted polynomial ring.

use std::collections::{BTreeMap, HashMap};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::linalg::{RankEngine, SparseMatrix};
use crate::module::FreeModuleSpec;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (c, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension { expected: rows, found: col.len() });
            }
            for (r, p) in col.into_iter().enumerate() {
                m.entries[r * cols + c] = p;
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nr * nc);
        for row in rows {
            if row.len() != nc {
                return Err(Error::Dimension { expected: nc, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(PolyMatrix { rows: nr, cols: nc, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &PolyMatrix, ring: &RingSpec) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b, ring), ring);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[i * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn render(&self, ring: &RingSpec) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).render(ring)).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let inner: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
                format!("| {} |", inner.join("  "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `F_0 <- F_1 <- ... <- F_l` with homogeneous differentials `d_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeComplex {
    ring: RingSpec,
    modules: Vec<FreeModuleSpec>,
    /// `differentials[i - 1]` is `d_i`.
    differentials: Vec<PolyMatrix>,
}

/// First failure found by [`check_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexViolation {
    /// Entry `(row, col)` of `d_i` has the wrong degree.
    Inhomogeneous { i: usize, row: usize, col: usize },
    /// Entry `(row, col)` of `d_{i-1} d_i` is nonzero.
    NotAComplex { i: usize, row: usize, col: usize },
}

impl GradedFreeComplex {
    pub fn new(ring: RingSpec, modules: Vec<FreeModuleSpec>, differentials: Vec<PolyMatrix>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Range { what: "number of modules", value: 0 });
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::Dimension { expected: modules.len() - 1, found: differentials.len() });
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows != modules[k].rank() {
                return Err(Error::Dimension { expected: modules[k].rank(), found: d.rows });
            }
            if d.cols != modules[k + 1].rank() {
                return Err(Error::Dimension { expected: modules[k + 1].rank(), found: d.cols });
            }
        }
        Ok(GradedFreeComplex { ring, modules, differentials })
    }

    /// A single free module in homological degree 0.
    pub fn free(ring: RingSpec, spec: FreeModuleSpec) -> Self {
        GradedFreeComplex { ring, modules: vec![spec], differentials: Vec::new() }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn modules(&self) -> &[FreeModuleSpec] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &FreeModuleSpec {
        &self.modules[i]
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &PolyMatrix {
        &self.differentials[i - 1]
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// `(i, generator degree, multiplicity)` read off the twists.
    pub fn betti_table(&self) -> BettiTable {
        BettiTable::from_entries(
            self.modules
                .iter()
                .enumerate()
                .flat_map(|(i, m)| m.degrees.iter().map(move |&d| (i, d, 1))),
        )
    }

    /// Twists every module by `k`, so generator degrees move up by `-k`.
    pub fn shifted(&self, k: i64) -> Self {
        let modules = self
            .modules
            .iter()
            .map(|m| FreeModuleSpec::new(m.degrees.iter().map(|d| d - k).collect()))
            .collect();
        GradedFreeComplex { ring: self.ring.clone(), modules, differentials: self.differentials.clone() }
    }

    /// Drops trailing zero modules.
    fn trimmed(mut self) -> Self {
        while self.modules.len() > 1 && self.modules.last().unwrap().rank() == 0 {
            self.modules.pop();
            self.differentials.pop();
        }
        self
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, m) in self.modules.iter().enumerate() {
            s.push_str(&format!("F{i}: rank {} degrees {:?}\n", m.rank(), m.degrees));
        }
        for (k, d) in self.differentials.iter().enumerate() {
            s.push_str(&format!("d{}:\n{}\n", k + 1, d.render(&self.ring)));
        }
        s
    }
}

pub fn check_complex(c: &GradedFreeComplex) -> Result<(), ComplexViolation> {
    let ring = &c.ring;
    for i in 1..=c.length() {
        let d = c.differential(i);
        let (src, tgt) = (&c.modules[i], &c.modules[i - 1]);
        for row in 0..d.rows {
            for col in 0..d.cols {
                let p = d.get(row, col);
                let want = src.degrees[col] - tgt.degrees[row];
                if !p.is_zero() && (!p.is_homogeneous(ring) || p.weighted_degree(ring) != Some(want)) {
                    return Err(ComplexViolation::Inhomogeneous { i, row, col });
                }
            }
        }
    }
    for i in 2..=c.length() {
        let prod = c.differential(i - 1).mul(c.differential(i), ring).expect("shapes validated");
        for row in 0..prod.rows {
            for col in 0..prod.cols {
                if !prod.get(row, col).is_zero() {
                    return Err(ComplexViolation::NotAComplex { i, row, col });
                }
            }
        }
    }
    Ok(())
}

/// Cancels unit entries until none remain, always choosing the unit with the
/// lexicographically smallest `(i, row, col)`. The result is homotopy
/// equivalent to the input.
pub fn minimize_complex(c: &GradedFreeComplex) -> GradedFreeComplex {
    let ring = c.ring.clone();
    let field = ring.field();
    let mut diffs = c.differentials.clone();
    let mut alive: Vec<Vec<bool>> = c.modules.iter().map(|m| vec![true; m.rank()]).collect();

    loop {
        let mut found = None;
        'search: for k in 0..diffs.len() {
            let d = &diffs[k];
            for r in 0..d.rows {
                if !alive[k][r] {
                    continue;
                }
                for col in 0..d.cols {
                    if alive[k + 1][col] && d.get(r, col).is_unit() {
                        found = Some((k, r, col));
                        break 'search;
                    }
                }
            }
        }
        let Some((k, r, col)) = found else { break };
        // d_{k+1} has a unit u at (r, col): D' = D - B u^{-1} C
        let d = &mut diffs[k];
        let u_inv = field.inv(d.get(r, col).constant_term());
        let pivot_col: Vec<(usize, Polynomial)> = (0..d.rows)
            .filter(|&rr| rr != r && alive[k][rr] && !d.get(rr, col).is_zero())
            .map(|rr| (rr, d.get(rr, col).clone()))
            .collect();
        let pivot_row: Vec<(usize, Polynomial)> = (0..d.cols)
            .filter(|&cc| cc != col && alive[k + 1][cc] && !d.get(r, cc).is_zero())
            .map(|cc| (cc, d.get(r, cc).clone()))
            .collect();
        for (rr, b) in &pivot_col {
            let b = b.scale(u_inv, &ring);
            for (cc, cv) in &pivot_row {
                let v = d.get(*rr, *cc).sub(&b.mul(cv, &ring), &ring);
                d.set(*rr, *cc, v);
            }
        }
        alive[k][r] = false;
        alive[k + 1][col] = false;
    }

    let keep: Vec<Vec<usize>> = alive
        .iter()
        .map(|a| a.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect())
        .collect();
    let modules: Vec<FreeModuleSpec> = c
        .modules
        .iter()
        .zip(&keep)
        .map(|(m, k)| FreeModuleSpec::new(k.iter().map(|&i| m.degrees[i]).collect()))
        .collect();
    let differentials: Vec<PolyMatrix> = diffs
        .iter()
        .enumerate()
        .map(|(k, d)| d.select(&keep[k], &keep[k + 1]))
        .collect();
    GradedFreeComplex { ring, modules, differentials }.trimmed()
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex on the variables `vars`: `F_i` has one generator per
/// `i`-subset `I`, in degree `sum_{t in I} w_t`, and
/// `d(e_I) = sum_k (-1)^k x_{I_k} e_{I - I_k}`.
pub fn koszul_complex(ring: &RingSpec, vars: &[usize]) -> Result<GradedFreeComplex> {
    if vars.is_empty() {
        return Err(Error::Range { what: "number of Koszul variables", value: 0 });
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vars.len() {
        return Err(Error::InvalidRing("repeated Koszul variable".into()));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= ring.num_vars()) {
        return Err(Error::Range { what: "variable index", value: v as i64 });
    }
    let k = sorted.len();
    let field = ring.field();
    let levels: Vec<Vec<Vec<usize>>> = (0..=k).map(|i| subsets(k, i)).collect();
    let modules: Vec<FreeModuleSpec> = levels
        .iter()
        .map(|ls| FreeModuleSpec::new(ls.iter().map(|s| s.iter().map(|&t| ring.weights()[sorted[t]] as i64).sum()).collect()))
        .collect();
    let mut differentials = Vec::new();
    for i in 1..=k {
        let index: HashMap<&Vec<usize>, usize> = levels[i - 1].iter().enumerate().map(|(n, s)| (s, n)).collect();
        let mut d = PolyMatrix::zeros(levels[i - 1].len(), levels[i].len());
        for (c, s) in levels[i].iter().enumerate() {
            for pos in 0..s.len() {
                let mut rest = s.clone();
                let t = rest.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
                d.set(index[&rest], c, Polynomial::term(sign, Monomial::var(ring.num_vars(), sorted[t], 1), ring));
            }
        }
        differentials.push(d);
    }
    GradedFreeComplex::new(ring.clone(), modules, differentials)
}

/// Total complex of `F (x) G`: `Tot_k = sum_{i+j=k} F_i (x) G_j`, basis ordered
/// by `i`, then `F`-index, then `G`-index; `d(f (x) g) = dF(f) (x) g + (-1)^i f (x) dG(g)`.
pub fn totalize_tensor(f: &GradedFreeComplex, g: &GradedFreeComplex) -> Result<GradedFreeComplex> {
    if f.ring != g.ring {
        return Err(Error::InvalidRing("tensor factors live over different rings".into()));
    }
    let ring = &f.ring;
    let field = ring.field();
    let top = f.length() + g.length();
    // blocks[k] = list of (i, j, offset)
    let mut blocks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
    let mut modules = vec![FreeModuleSpec::default(); top + 1];
    for (k, block) in blocks.iter_mut().enumerate() {
        for i in 0..=f.length() {
            if k < i || k - i > g.length() {
                continue;
            }
            let j = k - i;
            block.push((i, j, modules[k].rank()));
            for &a in &f.modules[i].degrees {
                for &b in &g.modules[j].degrees {
                    modules[k].degrees.push(a + b);
                }
            }
        }
    }
    let mut differentials = Vec::new();
    for k in 1..=top {
        let mut d = PolyMatrix::zeros(modules[k - 1].rank(), modules[k].rank());
        let offset_of = |i: usize, j: usize| blocks[k - 1].iter().find(|b| b.0 == i && b.1 == j).map(|b| b.2);
        for &(i, j, off) in &blocks[k] {
            let (rf, rg) = (f.modules[i].rank(), g.modules[j].rank());
            for a in 0..rf {
                for b in 0..rg {
                    let col = off + a * rg + b;
                    if i > 0 {
                        let target = offset_of(i - 1, j).expect("block exists");
                        let df = f.differential(i);
                        for a2 in 0..df.rows {
                            let p = df.get(a2, a);
                            if !p.is_zero() {
                                d.set(target + a2 * rg + b, col, p.clone());
                            }
                        }
                    }
                    if j > 0 {
                        let target = offset_of(i, j - 1).expect("block exists");
                        let dg = g.differential(j);
                        let rg2 = g.modules[j - 1].rank();
                        let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
                        for b2 in 0..dg.rows {
                            let p = dg.get(b2, b);
                            if !p.is_zero() {
                                d.set(target + a * rg2 + b2, col, p.scale(sign, ring));
                            }
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(GradedFreeComplex { ring: ring.clone(), modules, differentials }.trimmed())
}

/// Taylor resolution of the ideal generated by `monomials` (at most 12):
/// `F_i` has a generator `e_I` for every `(i+1)`-subset, in degree `deg lcm(I)`.
pub fn taylor_complex(ring: &RingSpec, monomials: &[Monomial]) -> Result<GradedFreeComplex> {
    let r = monomials.len();
    if r == 0 || r > 12 {
        return Err(Error::Range { what: "number of Taylor generators", value: r as i64 });
    }
    for m in monomials {
        ring.check(m)?;
    }
    let field = ring.field();
    let levels: Vec<Vec<Vec<usize>>> = (1..=r).map(|s| subsets(r, s)).collect();
    let lcm_of = |s: &[usize]| s.iter().skip(1).fold(monomials[s[0]].clone(), |acc, &t| acc.lcm(&monomials[t]));
    let modules: Vec<FreeModuleSpec> = levels
        .iter()
        .map(|ls| FreeModuleSpec::new(ls.iter().map(|s| lcm_of(s).weighted_degree(ring.weights())).collect()))
        .collect();
    let mut differentials = Vec::new();
    for i in 1..levels.len() {
        let index: HashMap<&Vec<usize>, usize> = levels[i - 1].iter().enumerate().map(|(n, s)| (s, n)).collect();
        let mut d = PolyMatrix::zeros(levels[i - 1].len(), levels[i].len());
        for (c, s) in levels[i].iter().enumerate() {
            let l = lcm_of(s);
            for pos in 0..s.len() {
                let mut rest = s.clone();
                rest.remove(pos);
                let q = l.div(&lcm_of(&rest)).expect("lcm of a subset divides");
                let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
                d.set(index[&rest], c, Polynomial::term(sign, q, ring));
            }
        }
        differentials.push(d);
    }
    GradedFreeComplex::new(ring.clone(), modules, differentials)
}

/// Basis of the degree-`j` piece of a free module: `(generator, monomial)` pairs.
pub(crate) struct GradedPieces {
    weights: Vec<u32>,
    cache: HashMap<i64, (Vec<Monomial>, HashMap<Monomial, usize>)>,
}

impl GradedPieces {
    pub(crate) fn new(weights: &[u32]) -> Self {
        GradedPieces { weights: weights.to_vec(), cache: HashMap::new() }
    }

    pub(crate) fn monomials(&mut self, d: i64) -> &(Vec<Monomial>, HashMap<Monomial, usize>) {
        let weights = &self.weights;
        self.cache.entry(d).or_insert_with(|| {
            let ms = monomials_of_degree(weights, d);
            let idx = ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            (ms, idx)
        })
    }

    /// Offsets of each generator's block in the degree-`j` piece, and the total dimension.
    pub(crate) fn layout(&mut self, spec: &FreeModuleSpec, j: i64) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(spec.rank());
        let mut total = 0;
        for &g in &spec.degrees {
            offsets.push(total);
            total += self.monomials(j - g).0.len();
        }
        (offsets, total)
    }
}

/// Matrix of `d : src -> tgt` restricted to the degree-`j` pieces.
pub(crate) fn graded_piece_matrix(
    d: &PolyMatrix,
    src: &FreeModuleSpec,
    tgt: &FreeModuleSpec,
    j: i64,
    pieces: &mut GradedPieces,
) -> SparseMatrix {
    let (src_off, src_dim) = pieces.layout(src, j);
    let (tgt_off, tgt_dim) = pieces.layout(tgt, j);
    let mut m = SparseMatrix::new(tgt_dim, src_dim);
    for c in 0..d.cols() {
        let src_monos = pieces.monomials(j - src.degrees[c]).0.clone();
        for r in 0..d.rows() {
            let p = d.get(r, c);
            if p.is_zero() {
                continue;
            }
            for (k, mono) in src_monos.iter().enumerate() {
                for (coef, t) in p.terms() {
                    let prod = t.mul(mono);
                    let row = *pieces.monomials(j - tgt.degrees[r]).1.get(&prod).expect("homogeneous entry");
                    m.push(tgt_off[r] + row, src_off[c] + k, *coef);
                }
            }
        }
    }
    m
}

/// `dim H_i(C)_j` for every homological degree `i` and every internal degree
/// `j` from the smallest generator degree up to `bound`.
pub fn homology_dims(c: &GradedFreeComplex, bound: i64) -> BTreeMap<(usize, i64), usize> {
    let mut out = BTreeMap::new();
    let Some(lo) = c.modules.iter().flat_map(|m| m.degrees.iter().copied()).min() else {
        return out;
    };
    let mut pieces = GradedPieces::new(c.ring.weights());
    let mut engine = RankEngine::new(c.ring.field());
    for j in lo..=bound {
        let dims: Vec<usize> = c.modules.iter().map(|m| pieces.layout(m, j).1).collect();
        let mut ranks = vec![0usize; c.modules.len() + 1];
        for i in 1..=c.length() {
            if dims[i] == 0 || dims[i - 1] == 0 {
                continue;
            }
            let m = graded_piece_matrix(c.differential(i), &c.modules[i], &c.modules[i - 1], j, &mut pieces);
            ranks[i] = engine.rank(&m);
        }
        for i in 0..=c.length() {
            out.insert((i, j), dims[i] - ranks[i] - ranks[i + 1]);
        }
    }
    out
}

/// `dim (F)_j` for a free module.
pub fn free_hilbert_function(ring: &RingSpec, spec: &FreeModuleSpec, j: i64) -> usize {
    spec.degrees.iter().map(|&g| monomials_of_degree(ring.weights(), j - g).len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(w: &[u32]) -> RingSpec {
        RingSpec::with_weights(w).unwrap()
    }

    fn p(ring: &RingSpec, terms: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|(c, e)| (*c, Monomial::new(e))), ring)
    }

    /// `0 -> S(-8)^2 -> S(-5)^2 + S(-6)`, rows x^5, x^2 y, y^2.
    pub(crate) fn phi_complex() -> GradedFreeComplex {
        let ring = r(&[1, 3]);
        let z = Polynomial::zero();
        let phi = PolyMatrix::from_rows(vec![
            vec![p(&ring, &[(1, &[0, 1])]), z.clone()],
            vec![p(&ring, &[(-1, &[3, 0])]), p(&ring, &[(1, &[0, 1])])],
            vec![z, p(&ring, &[(-1, &[2, 0])])],
        ])
        .unwrap();
        GradedFreeComplex::new(
            ring,
            vec![FreeModuleSpec::new(vec![5, 5, 6]), FreeModuleSpec::new(vec![8, 8])],
            vec![phi],
        )
        .unwrap()
    }

    #[test]
    fn phi_checks() {
        assert_eq!(check_complex(&phi_complex()), Ok(()));
        let zero = GradedFreeComplex::free(r(&[1]), FreeModuleSpec::default());
        assert_eq!(check_complex(&zero), Ok(()));
    }

    #[test]
    fn sign_flip_breaks_d_squared() {
        // augment phi with the row of generators as d_1 : F -> S
        let ring = r(&[1, 3]);
        let gens = PolyMatrix::from_rows(vec![vec![
            p(&ring, &[(1, &[5, 0])]),
            p(&ring, &[(1, &[2, 1])]),
            p(&ring, &[(1, &[0, 2])]),
        ]])
        .unwrap();
        let phi = phi_complex().differential(1).clone();
        let make = |phi: PolyMatrix| {
            GradedFreeComplex::new(
                ring.clone(),
                vec![FreeModuleSpec::new(vec![0]), FreeModuleSpec::new(vec![5, 5, 6]), FreeModuleSpec::new(vec![8, 8])],
                vec![gens.clone(), phi],
            )
            .unwrap()
        };
        assert_eq!(check_complex(&make(phi.clone())), Ok(()));
        let mut bad = phi;
        bad.set(1, 0, p(&ring, &[(1, &[3, 0])]));
        assert_eq!(check_complex(&make(bad)), Err(ComplexViolation::NotAComplex { i: 2, row: 0, col: 0 }));
    }

    #[test]
    fn taylor_minimizes_to_example() {
        let ring = r(&[1, 3]);
        let t = taylor_complex(&ring, &[Monomial::new(&[5, 0]), Monomial::new(&[2, 1]), Monomial::new(&[0, 2])]).unwrap();
        assert_eq!(t.ranks(), vec![3, 3, 1]);
        assert_eq!(check_complex(&t), Ok(()));
        let m = minimize_complex(&t);
        assert_eq!(m.ranks(), vec![3, 2]);
        assert_eq!(m.module(0).degrees, vec![5, 5, 6]);
        assert_eq!(m.module(1).degrees, vec![8, 8]);
        assert_eq!(check_complex(&m), Ok(()));
        assert_eq!(minimize_complex(&m), m);
    }

    #[test]
    fn taylor_two_generators() {
        let ring = r(&[1, 1]);
        let t = taylor_complex(&ring, &[Monomial::new(&[2, 0]), Monomial::new(&[1, 1])]).unwrap();
        let m = minimize_complex(&t);
        assert_eq!(m.ranks(), vec![2, 1]);
        assert_eq!(m.module(1).degrees, vec![3]);
    }

    #[test]
    fn koszul_examples() {
        let k = koszul_complex(&r(&[2]), &[0]).unwrap();
        assert_eq!(k.ranks(), vec![1, 1]);
        assert_eq!(k.module(1).degrees, vec![2]);
        let k = koszul_complex(&r(&[1, 1]), &[0, 1]).unwrap();
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        assert_eq!(k.module(1).degrees, vec![1, 1]);
        assert_eq!(k.module(2).degrees, vec![2]);
        assert_eq!(check_complex(&k), Ok(()));
        let h = homology_dims(&k, 6);
        assert!(h.iter().filter(|((i, _), _)| *i > 0).all(|(_, &d)| d == 0));
        assert!(koszul_complex(&r(&[1, 1]), &[]).is_err());
    }

    #[test]
    fn tensor_examples() {
        let ring = r(&[1, 1, 1]);
        // F = (R(-1) -> R^2) via (-y, x)^T, the Koszul complex on x1, x2 shifted away from F_0
        let kx = koszul_complex(&ring, &[0, 1]).unwrap();
        let f = GradedFreeComplex::new(
            ring.clone(),
            vec![kx.module(1).clone(), kx.module(2).clone()],
            vec![kx.differential(2).clone()],
        )
        .unwrap()
        .shifted(1);
        let g = koszul_complex(&ring, &[2]).unwrap();
        let t = totalize_tensor(&f, &g).unwrap();
        assert_eq!(t.ranks(), vec![2, 3, 1]);
        assert_eq!(t.module(0).degrees, vec![0, 0]);
        assert_eq!(t.module(1).degrees, vec![1, 1, 1]);
        assert_eq!(t.module(2).degrees, vec![2]);
        assert_eq!(check_complex(&t), Ok(()));

        let unit = GradedFreeComplex::free(ring.clone(), FreeModuleSpec::new(vec![0]));
        assert_eq!(totalize_tensor(&f, &unit).unwrap(), f);

        let a = koszul_complex(&ring, &[0]).unwrap();
        let b = koszul_complex(&ring, &[1]).unwrap();
        let t = totalize_tensor(&a, &b).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn homology_of_phi_linear_part() {
        let ring = r(&[1, 1]);
        let y = Polynomial::var(1, &ring);
        let z = Polynomial::zero();
        let lin = PolyMatrix::from_rows(vec![vec![y.clone(), z.clone()], vec![z.clone(), y], vec![z.clone(), z]]).unwrap();
        let c = GradedFreeComplex::new(ring, vec![FreeModuleSpec::new(vec![0, 0, 0]), FreeModuleSpec::new(vec![1, 1])], vec![lin])
            .unwrap();
        let h = homology_dims(&c, 10);
        assert!((1..=10).all(|j| h[&(1, j)] == 0));
        // H_0 = R/(y) + R/(y) + R: 2 + (j+1) in degree j
        assert!((0..=10).all(|j| h[&(0, j)] == 2 + (j as usize + 1)));
    }

    #[test]
    fn zeroed_differential_keeps_everything() {
        let ring = r(&[1, 2]);
        let c = GradedFreeComplex::new(
            ring.clone(),
            vec![FreeModuleSpec::new(vec![0]), FreeModuleSpec::new(vec![1, 2])],
            vec![PolyMatrix::zeros(1, 2)],
        )
        .unwrap();
        let h = homology_dims(&c, 8);
        for j in 0..=8 {
            assert_eq!(h[&(1, j)], free_hilbert_function(&ring, c.module(1), j));
        }
    }
}
