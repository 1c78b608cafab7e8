//! The linear part of a minimal resolution, its acyclicity, and the combined
//! Koszulness report for a truncation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assoc_graded::{gr_betti, OrdContext};
use crate::betti::BettiTable;
use crate::complex::{check_complex, homology_dims, GradedFreeComplex};
use crate::construction::{construct_gr_betti, ConstructionTrace};
use crate::error::{Error, Result};
use crate::module::{FreeElement, FreeModule, FreeModuleSpec};
use crate::monomial::Monomial;
use crate::resolution::resolve_module;
use crate::ring::RingSpec;
use crate::truncation::trunc_gens;

/// Outcome of a test that can only look at finitely many degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    /// Nothing failed, but the bound is too small to vouch for the result.
    Inconclusive,
}

impl Verdict {
    /// `(value, inconclusive)`: an inconclusive verdict reads as `false`.
    pub fn as_bool(self) -> (bool, bool) {
        match self {
            Verdict::True => (true, false),
            Verdict::False => (false, false),
            Verdict::Inconclusive => (false, true),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// `False` beats `Inconclusive` beats `True`.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => True,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub lin_acyclic: Verdict,
    pub gr_linear: Verdict,
    pub construction_match: Verdict,
}

impl Verdicts {
    pub fn overall(&self) -> Verdict {
        self.lin_acyclic.and(self.gr_linear).and(self.construction_match)
    }

    pub fn named(&self) -> [(&'static str, Verdict); 3] {
        [
            ("lin_acyclic", self.lin_acyclic),
            ("gr_linear", self.gr_linear),
            ("construction_match", self.construction_match),
        ]
    }
}

/// Replaces every entry by its standard-degree-one part and puts the
/// generators of `F_i` in degree `i`, over the standard-graded companion ring.
pub fn linear_part(f: &GradedFreeComplex, ring: &RingSpec) -> Result<GradedFreeComplex> {
    if f.ring() != ring {
        return Err(Error::AmbientMismatch);
    }
    for i in 1..=f.length() {
        let d = f.differential(i);
        for row in 0..d.rows() {
            for col in 0..d.cols() {
                if d.get(row, col).is_unit() {
                    return Err(Error::NotMinimal { index: i, row, col });
                }
            }
        }
    }
    let modules = f
        .modules()
        .iter()
        .enumerate()
        .map(|(i, m)| FreeModuleSpec::new(vec![i as i64; m.rank()]))
        .collect();
    let differentials = (1..=f.length()).map(|i| f.differential(i).map_entries(|p| p.standard_component(1))).collect();
    GradedFreeComplex::new(ring.companion(), modules, differentials)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinAcyclicity {
    pub verdict: Verdict,
    pub bound: i64,
    /// `dim H_i(L)_j` for every `i` and `j <= bound`.
    pub homology: BTreeMap<(usize, i64), usize>,
}

impl LinAcyclicity {
    /// Nonzero homology in positive homological degree.
    pub fn obstructions(&self) -> Vec<(usize, i64, usize)> {
        self.homology.iter().filter(|(k, &v)| k.0 > 0 && v > 0).map(|(k, &v)| (k.0, k.1, v)).collect()
    }
}

/// `H_i(L)_j = 0` for all `i >= 1`, `j <= bound`. Inconclusive when the bound
/// does not reach the last module's generators.
pub fn lin_acyclicity(l: &GradedFreeComplex, bound: i64) -> LinAcyclicity {
    let homology = homology_dims(l, bound);
    let failed = homology.iter().any(|(k, &v)| k.0 > 0 && v > 0);
    let verdict = if failed {
        Verdict::False
    } else if bound < l.length() as i64 {
        Verdict::Inconclusive
    } else {
        Verdict::True
    };
    LinAcyclicity { verdict, bound, homology }
}

/// `max(e, 0) + n * max weight + n`.
pub fn default_bound(ring: &RingSpec, e: i64) -> i64 {
    let n = ring.num_vars() as i64;
    e.max(0) + n * ring.max_weight() as i64 + n
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub ring: RingSpec,
    pub e: i64,
    pub bound: i64,
    pub generators: Vec<Monomial>,
    /// Minimal resolution of `S>=e` over the weighted ring.
    pub resolution: GradedFreeComplex,
    pub linear_part: GradedFreeComplex,
    pub lin: LinAcyclicity,
    pub gr_betti: BettiTable,
    pub construct_betti: BettiTable,
    pub trace: ConstructionTrace,
    pub verdicts: Verdicts,
}

impl KoszulReport {
    pub fn resolution_betti(&self) -> BettiTable {
        self.resolution.betti_table()
    }

    pub fn lin_betti(&self) -> BettiTable {
        self.linear_part.betti_table()
    }
}

/// The truncation `S>=e` as a list of ideal generators.
pub fn truncation_ideal(ring: &RingSpec, e: i64) -> Result<Vec<FreeElement>> {
    let ambient = FreeModule::new(ring.clone(), FreeModuleSpec::new(vec![0]));
    trunc_gens(ring, e).into_iter().map(|m| FreeElement::monomial(&ambient, 0, m)).collect()
}

/// Runs the three independent tests on `S>=e` up to internal degree `bound`.
pub fn koszul_verdict(ring: &RingSpec, e: i64, bound: i64) -> Result<KoszulReport> {
    if bound < 0 {
        return Err(Error::Range { what: "degree bound", value: bound });
    }
    let generators = trunc_gens(ring, e);
    let n = ring.num_vars() as i64;

    let lin_pipeline = || -> Result<_> {
        let resolution = resolve_module(&truncation_ideal(ring, e)?, true)?;
        let lin = linear_part(&resolution, ring)?;
        let mut acyclic = lin_acyclicity(&lin, bound);
        if check_complex(&lin).is_err() {
            acyclic.verdict = Verdict::False;
        }
        Ok((resolution, lin, acyclic))
    };
    let gr_pipeline = || -> Result<_> {
        let ctx = OrdContext::ideal(ring, &generators)?;
        let table = gr_betti(&ctx, bound)?;
        let (construct_betti, trace) = construct_gr_betti(ring.weights(), e)?;
        Ok((table, construct_betti, trace))
    };
    let (lin_result, gr_result) = rayon::join(lin_pipeline, gr_pipeline);
    let (resolution, linear_part, lin) = lin_result?;
    let (gr, construct_betti, trace) = gr_result?;

    let gr_linear = if !gr.is_diagonal() {
        Verdict::False
    } else if bound < n {
        Verdict::Inconclusive
    } else {
        Verdict::True
    };
    let construction_match = if construct_betti.restrict(bound) != gr {
        Verdict::False
    } else if construct_betti.max_internal_degree().is_some_and(|j| j > bound) {
        Verdict::Inconclusive
    } else {
        Verdict::True
    };
    let verdicts = Verdicts { lin_acyclic: lin.verdict, gr_linear, construction_match };
    Ok(KoszulReport {
        ring: ring.clone(),
        e,
        bound,
        generators,
        resolution,
        linear_part,
        lin,
        gr_betti: gr,
        construct_betti,
        trace,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PolyMatrix;
    use crate::poly::Polynomial;

    fn r(w: &[u32]) -> RingSpec {
        RingSpec::with_weights(w).unwrap()
    }

    fn p(ring: &RingSpec, terms: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|(c, e)| (*c, Monomial::new(e))), ring)
    }

    fn presentation(w: &[u32], a: u16, b: u16, degs0: Vec<i64>, degs1: Vec<i64>) -> GradedFreeComplex {
        // rows x^5, x^a y, y^2; columns the two syzygies
        let ring = r(w);
        let z = Polynomial::zero();
        let phi = PolyMatrix::from_rows(vec![
            vec![p(&ring, &[(1, &[0, 1])]), z.clone()],
            vec![p(&ring, &[(-1, &[5 - a, 0])]), p(&ring, &[(1, &[0, 1])])],
            vec![z, p(&ring, &[(-1, &[b, 0])])],
        ])
        .unwrap();
        GradedFreeComplex::new(ring, vec![FreeModuleSpec::new(degs0), FreeModuleSpec::new(degs1)], vec![phi]).unwrap()
    }

    #[test]
    fn linear_part_examples() {
        let f = presentation(&[1, 3], 2, 2, vec![5, 5, 6], vec![8, 8]);
        let lin = linear_part(&f, f.ring()).unwrap();
        let ring = f.ring().companion();
        let y = Polynomial::var(1, &ring);
        let z = Polynomial::zero();
        let want = PolyMatrix::from_rows(vec![vec![y.clone(), z.clone()], vec![z.clone(), y], vec![z.clone(), z.clone()]]).unwrap();
        assert_eq!(lin.differential(1), &want);
        assert_eq!(lin.module(1).degrees, vec![1, 1]);
        assert_eq!(check_complex(&lin), Ok(()));
        assert_eq!(lin_acyclicity(&lin, 10).verdict, Verdict::True);

        let f = presentation(&[1, 4], 1, 1, vec![5, 5, 8], vec![9, 9]);
        let lin = linear_part(&f, f.ring()).unwrap();
        let ring = f.ring().companion();
        let (x, y) = (Polynomial::var(0, &ring), Polynomial::var(1, &ring));
        let want = PolyMatrix::from_rows(vec![
            vec![y.clone(), z.clone()],
            vec![z.clone(), y],
            vec![z, x.neg(&ring)],
        ])
        .unwrap();
        assert_eq!(lin.differential(1), &want);
        assert_eq!(lin_acyclicity(&lin, 10).verdict, Verdict::True);
    }

    #[test]
    fn linear_part_keeps_linear_complexes() {
        let ring = r(&[1, 1]);
        let k = crate::complex::koszul_complex(&ring, &[0, 1]).unwrap();
        let lin = linear_part(&k, &ring).unwrap();
        assert_eq!(lin, k);
    }

    #[test]
    fn linear_part_rejects_units() {
        let ring = r(&[1, 1]);
        let c = GradedFreeComplex::new(
            ring.clone(),
            vec![FreeModuleSpec::new(vec![0]), FreeModuleSpec::new(vec![0])],
            vec![PolyMatrix::from_rows(vec![vec![Polynomial::constant(1, &ring)]]).unwrap()],
        )
        .unwrap();
        assert!(matches!(linear_part(&c, &ring), Err(Error::NotMinimal { index: 1, row: 0, col: 0 })));
    }

    #[test]
    fn zero_differential_is_not_acyclic() {
        let ring = r(&[1, 1]);
        let c = GradedFreeComplex::new(
            ring,
            vec![FreeModuleSpec::new(vec![0]), FreeModuleSpec::new(vec![1])],
            vec![PolyMatrix::zeros(1, 1)],
        )
        .unwrap();
        let a = lin_acyclicity(&c, 4);
        assert_eq!(a.verdict, Verdict::False);
        assert!(!a.obstructions().is_empty());
    }

    #[test]
    fn verdict_examples() {
        let rep = koszul_verdict(&r(&[1, 3]), 5, 10).unwrap();
        assert_eq!(rep.verdicts.overall(), Verdict::True);
        assert_eq!(rep.gr_betti.totals(), vec![3, 2]);
        for e in 0..6 {
            let ring = r(&[1, 1]);
            let rep = koszul_verdict(&ring, e, default_bound(&ring, e)).unwrap();
            assert_eq!(rep.verdicts.overall(), Verdict::True, "e = {e}");
        }
        let rep = koszul_verdict(&r(&[2, 3]), 7, 13).unwrap();
        assert_eq!(rep.verdicts.overall(), Verdict::True);
        assert_eq!(rep.gr_betti, rep.construct_betti);
        assert_eq!(rep.lin_betti(), rep.gr_betti);
    }

    #[test]
    fn small_bounds_are_inconclusive() {
        let rep = koszul_verdict(&r(&[1, 2, 2]), 7, 1).unwrap();
        assert_eq!(rep.verdicts.gr_linear, Verdict::Inconclusive);
        assert_eq!(rep.verdicts.construction_match, Verdict::Inconclusive);
        assert_eq!(rep.verdicts.overall(), Verdict::Inconclusive);
        assert!(koszul_verdict(&r(&[1, 2]), 3, -1).is_err());
    }

    #[test]
    fn verdict_algebra() {
        assert_eq!(Verdict::True.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.and(Verdict::False), Verdict::False);
        assert_eq!(Verdict::Inconclusive.as_bool(), (false, true));
        assert_eq!(serde_json::to_string(&Verdict::Inconclusive).unwrap(), "\"inconclusive\"");
    }
}
