//! Graded free modules and their elements.
//!
//! Every [`FreeModule`] carries a term order. Plain modules use
//! position-over-term; modules created for syzygies carry the Schreyer order
//! induced by the lead terms of the elements they map onto. Both are encoded
//! as one [`OrderKey`] per basis vector, so comparisons never recurse.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Generator degrees of a graded free module: `S(-a_1) + ... + S(-a_r)`
/// is stored as `[a_1, ..., a_r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModuleSpec {
    pub degrees: Vec<i64>,
}

impl FreeModuleSpec {
    pub fn new(degrees: Vec<i64>) -> Self {
        FreeModuleSpec { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// Order data for one basis vector `e_i`.
///
/// `e_i` at Schreyer level `k` maps with lead term `total * E_root` down to
/// level 0; `chain` lists the basis indices passed through on the way, ending
/// with `i` itself. Terms compare by root, then by `m * total`, then by chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderKey {
    pub root: usize,
    pub total: Monomial,
    pub chain: Vec<usize>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: RingSpec,
    spec: FreeModuleSpec,
    keys: Vec<OrderKey>,
    schreyer: bool,
}

impl FreeModule {
    /// Position-over-term ordered free module.
    pub fn new(ring: RingSpec, spec: FreeModuleSpec) -> Arc<Self> {
        let n = ring.num_vars();
        let keys = (0..spec.rank())
            .map(|i| OrderKey { root: i, total: Monomial::one(n), chain: Vec::new() })
            .collect();
        Arc::new(FreeModule { ring, spec, keys, schreyer: false })
    }

    /// Free module with basis `e_k -> g_k`, ordered by the Schreyer order induced by
    /// the lead terms of `images` in their (shared) ambient module.
    pub fn schreyer(images: &[FreeElement]) -> Result<Arc<Self>> {
        let ambient = match images.first() {
            Some(g) => g.module.clone(),
            None => return Err(Error::Internal("Schreyer module over an empty list".into())),
        };
        let mut keys = Vec::with_capacity(images.len());
        let mut degrees = Vec::with_capacity(images.len());
        for (k, g) in images.iter().enumerate() {
            if !Arc::ptr_eq(&g.module, &ambient) && *g.module != *ambient {
                return Err(Error::AmbientMismatch);
            }
            let lead = g.lead().ok_or_else(|| Error::Internal("zero element in Schreyer basis".into()))?;
            let parent = &ambient.keys[lead.comp];
            let mut chain = parent.chain.clone();
            chain.push(k);
            keys.push(OrderKey { root: parent.root, total: lead.mono.mul(&parent.total), chain });
            degrees.push(ambient.term_degree(lead.comp, &lead.mono));
        }
        Ok(Arc::new(FreeModule {
            ring: ambient.ring.clone(),
            spec: FreeModuleSpec { degrees },
            keys,
            schreyer: true,
        }))
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn spec(&self) -> &FreeModuleSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn degree(&self, comp: usize) -> i64 {
        self.spec.degrees[comp]
    }

    pub fn is_schreyer(&self) -> bool {
        self.schreyer
    }

    #[inline]
    pub fn term_degree(&self, comp: usize, m: &Monomial) -> i64 {
        self.spec.degrees[comp] + m.weighted_degree(self.ring.weights())
    }

    pub fn compare_terms(&self, ca: usize, ma: &Monomial, cb: usize, mb: &Monomial) -> Ordering {
        let (ka, kb) = (&self.keys[ca], &self.keys[cb]);
        ka.root
            .cmp(&kb.root)
            .then_with(|| self.ring.compare_products(ma, &ka.total, mb, &kb.total))
            .then_with(|| ka.chain.cmp(&kb.chain))
            .then_with(|| ca.cmp(&cb))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub coeff: u32,
    pub mono: Monomial,
}

/// Element of a graded free module; terms strictly descending in the module order.
#[derive(Clone, Debug)]
pub struct FreeElement {
    module: Arc<FreeModule>,
    terms: Vec<Term>,
}

impl PartialEq for FreeElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.module == *other.module
    }
}

impl Eq for FreeElement {}

impl FreeElement {
    pub fn zero(module: &Arc<FreeModule>) -> Self {
        FreeElement { module: module.clone(), terms: Vec::new() }
    }

    pub fn from_terms(module: &Arc<FreeModule>, terms: impl IntoIterator<Item = (usize, i64, Monomial)>) -> Result<Self> {
        let f = module.ring.field();
        let mut ts = Vec::new();
        for (comp, c, mono) in terms {
            if comp >= module.rank() {
                return Err(Error::Range { what: "component index", value: comp as i64 });
            }
            module.ring.check(&mono)?;
            ts.push(Term { comp, coeff: f.from_i64(c), mono });
        }
        ts.sort_by(|a, b| module.compare_terms(b.comp, &b.mono, a.comp, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(ts.len());
        for t in ts {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => last.coeff = f.add(last.coeff, t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Ok(FreeElement { module: module.clone(), terms: out })
    }

    pub fn monomial(module: &Arc<FreeModule>, comp: usize, mono: Monomial) -> Result<Self> {
        Self::from_terms(module, [(comp, 1, mono)])
    }

    /// Builds `sum_j entries[j] * e_j` from a column of polynomials.
    pub fn from_column(module: &Arc<FreeModule>, column: &[Polynomial]) -> Result<Self> {
        if column.len() != module.rank() {
            return Err(Error::Dimension { expected: module.rank(), found: column.len() });
        }
        let terms = column
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().iter().map(move |(c, m)| (j, *c as i64, m.clone())));
        Self::from_terms(module, terms)
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the element, checking that all terms agree.
    pub fn homogeneous_degree(&self) -> std::result::Result<Option<i64>, Vec<i64>> {
        let degs: Vec<i64> = self.terms.iter().map(|t| self.module.term_degree(t.comp, &t.mono)).collect();
        match degs.first() {
            None => Ok(None),
            Some(&d) if degs.iter().all(|&x| x == d) => Ok(Some(d)),
            Some(_) => Err(degs),
        }
    }

    /// The coordinate polynomials, one per basis vector.
    pub fn to_column(&self) -> Vec<Polynomial> {
        let ring = &self.module.ring;
        let mut buckets: Vec<Vec<(i64, Monomial)>> = vec![Vec::new(); self.module.rank()];
        for t in &self.terms {
            buckets[t.comp].push((t.coeff as i64, t.mono.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(b, ring)).collect()
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &FreeElement, c: u32, m: &Monomial) -> FreeElement {
        let module = &self.module;
        let f = module.ring.field();
        let c = c % f.characteristic();
        if c == 0 || other.terms.is_empty() {
            return self.clone();
        }
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        for t in &other.terms {
            let bm = t.mono.mul(m);
            let bc = f.mul(t.coeff, c);
            while i < a.len() && module.compare_terms(a[i].comp, &a[i].mono, t.comp, &bm) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].comp == t.comp && a[i].mono == bm {
                let s = f.add(a[i].coeff, bc);
                if s != 0 {
                    out.push(Term { comp: t.comp, coeff: s, mono: bm });
                }
                i += 1;
            } else {
                out.push(Term { comp: t.comp, coeff: bc, mono: bm });
            }
        }
        out.extend_from_slice(&a[i..]);
        FreeElement { module: module.clone(), terms: out }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        self.add_scaled(other, 1, &Monomial::one(self.module.ring.num_vars()))
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let f = self.module.ring.field();
        self.add_scaled(other, f.neg(1), &Monomial::one(self.module.ring.num_vars()))
    }

    pub fn scale(&self, c: u32) -> FreeElement {
        FreeElement::zero(&self.module).add_scaled(self, c, &Monomial::one(self.module.ring.num_vars()))
    }

    /// Divides by the lead coefficient.
    pub fn monic(&self) -> FreeElement {
        match self.lead() {
            None => self.clone(),
            Some(t) => self.scale(self.module.ring.field().inv(t.coeff)),
        }
    }

    /// Moves the element to another module with the same rank and degrees (re-sorting terms).
    pub fn with_module(&self, module: &Arc<FreeModule>) -> Result<FreeElement> {
        FreeElement::from_terms(module, self.terms.iter().map(|t| (t.comp, t.coeff as i64, t.mono.clone())))
    }

    pub fn render(&self) -> String {
        let ring = &self.module.ring;
        let col = self.to_column();
        let parts: Vec<String> = col
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| format!("({})*e{j}", p.render(ring)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
