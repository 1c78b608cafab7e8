//! The associated graded module `gr_m(M)` of a monomial submodule `M` of a
//! free module, over the standard-graded companion ring.
//!
//! For monomial `M` the `m`-adic order of a monomial `v` in component `c` is
//! `|v| - min |u|` over generators `u` of component `c` dividing `v`, where
//! `|.|` is the standard degree. Everything here is built on that formula.

use std::collections::BTreeMap;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::graded_module::{betti_via_koszul, BasisLabel, ExplicitGradedModule};
use crate::monomial::{minimalize, monomials_of_degree, Monomial};
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdContext {
    ring: RingSpec,
    /// Minimal generators per component, keyed by component index.
    generators: BTreeMap<usize, Vec<Monomial>>,
}

impl OrdContext {
    pub fn new(ring: &RingSpec, gens: impl IntoIterator<Item = (usize, Monomial)>) -> Result<Self> {
        let mut by_comp: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
        for (c, m) in gens {
            ring.check(&m)?;
            by_comp.entry(c).or_default().push(m);
        }
        let generators = by_comp.into_iter().map(|(c, g)| (c, minimalize(g))).collect();
        Ok(OrdContext { ring: ring.clone(), generators })
    }

    /// Context for an ideal.
    pub fn ideal(ring: &RingSpec, gens: &[Monomial]) -> Result<Self> {
        Self::new(ring, gens.iter().map(|m| (0, m.clone())))
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self, component: usize) -> &[Monomial] {
        self.generators.get(&component).map_or(&[], |g| g.as_slice())
    }

    pub fn components(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.keys().copied()
    }

    fn try_ord(&self, component: usize, v: &Monomial) -> Option<i64> {
        self.generators(component)
            .iter()
            .filter(|u| u.divides(v))
            .map(|u| u.standard_degree())
            .min()
            .map(|m| v.standard_degree() - m)
    }

    /// Largest `i` with `v` in `m^i M`.
    pub fn ord(&self, component: usize, v: &Monomial) -> Result<i64> {
        self.try_ord(component, v)
            .ok_or_else(|| Error::NotMember(format!("{} in component {component}", self.ring.render_monomial(v))))
    }

    /// Every `(component, monomial, ord)` with `ord <= bound`.
    fn enumerate(&self, bound: i64) -> Vec<(usize, Monomial, i64)> {
        let ones = vec![1; self.ring.num_vars()];
        let mut out = Vec::new();
        for (&c, gens) in &self.generators {
            let lo = gens.iter().map(|g| g.standard_degree()).min().unwrap_or(0);
            let hi = gens.iter().map(|g| g.standard_degree()).max().unwrap_or(0) + bound;
            for s in lo..=hi {
                for v in monomials_of_degree(&ones, s) {
                    if let Some(o) = self.try_ord(c, &v) {
                        if o <= bound {
                            out.push((c, v, o));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `gr_m(M)` in degrees `0..=bound`. The basis in degree `i` is the monomials
/// of order `i`, sorted by component and then descending in the weighted
/// order; `x_t [v]` is `[x_t v]` when the order goes up by exactly one and zero
/// otherwise.
pub fn gr_module(ctx: &OrdContext, bound: i64) -> Result<ExplicitGradedModule> {
    if bound < 0 {
        return Err(Error::Range { what: "degree bound", value: bound });
    }
    let companion = ctx.ring.companion();
    if ctx.generators.values().all(|g| g.is_empty()) {
        return Ok(ExplicitGradedModule::zero(companion, bound));
    }
    let mut pieces: Vec<Vec<BasisLabel>> = vec![Vec::new(); bound as usize + 1];
    for (c, v, o) in ctx.enumerate(bound) {
        pieces[o as usize].push(BasisLabel { component: c, monomial: v });
    }
    for p in &mut pieces {
        p.sort_by(|a, b| a.component.cmp(&b.component).then_with(|| ctx.ring.compare(&b.monomial, &a.monomial)));
    }
    ExplicitGradedModule::from_monomial_action(companion, 0, pieces, |t, l| {
        let up = l.monomial.mul_var(t, 1);
        let before = ctx.try_ord(l.component, &l.monomial)?;
        (ctx.try_ord(l.component, &up)? == before + 1).then_some(BasisLabel { component: l.component, monomial: up })
    })
}

/// `dim gr_m(M)_d` for `d = 0..=bound`.
pub fn gr_hilbert(ctx: &OrdContext, bound: i64) -> Vec<usize> {
    let mut dims = vec![0; bound.max(-1) as usize + 1];
    for (_, _, o) in ctx.enumerate(bound) {
        dims[o as usize] += 1;
    }
    dims
}

/// Graded Betti numbers of `gr_m(M)` over the companion ring, for internal
/// degrees up to `bound`.
pub fn gr_betti(ctx: &OrdContext, bound: i64) -> Result<BettiTable> {
    let m = gr_module(ctx, bound)?;
    betti_via_koszul(&m, &ctx.ring.companion(), bound)
}

/// `M` viewed over `full`, with the new variables acting by zero.
pub fn extend_gr(m: &ExplicitGradedModule, full: &RingSpec) -> Result<ExplicitGradedModule> {
    m.extended(full)
}
