//! Buchberger's algorithm and Schreyer syzygies for graded submodules of free modules.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::{FreeElement, FreeModule, FreeModuleSpec, Term};
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<FreeElement>,
    pub module: Arc<FreeModule>,
}

/// A reduction step record: `coeff * mono * g[index]` was subtracted.
type Quotient = (usize, u32, Monomial);

fn find_reducer(t: &Term, leads: &[Option<Term>]) -> Option<usize> {
    leads.iter().position(|l| match l {
        Some(l) => l.comp == t.comp && l.mono.divides(&t.mono),
        None => false,
    })
}

/// Full reduction of `v` by `basis`, optionally recording quotients.
fn reduce(v: &FreeElement, basis: &[FreeElement], mut quotients: Option<&mut Vec<Quotient>>) -> FreeElement {
    let module = v.module().clone();
    let field = module.ring().field();
    let leads: Vec<Option<Term>> = basis.iter().map(|g| g.lead().cloned()).collect();
    let mut rest = v.clone();
    let mut remainder: Vec<(usize, i64, Monomial)> = Vec::new();
    while let Some(t) = rest.lead().cloned() {
        match find_reducer(&t, &leads) {
            Some(k) => {
                let l = leads[k].as_ref().expect("reducer has a lead term");
                let c = field.div(t.coeff, l.coeff);
                let m = t.mono.div(&l.mono).expect("lead divides");
                rest = rest.add_scaled(&basis[k], field.neg(c), &m);
                if let Some(q) = quotients.as_deref_mut() {
                    q.push((k, c, m));
                }
            }
            None => {
                remainder.push((t.comp, t.coeff as i64, t.mono.clone()));
                let single = FreeElement::from_terms(&module, [(t.comp, t.coeff as i64, t.mono)]).expect("valid term");
                rest = rest.sub(&single);
            }
        }
    }
    FreeElement::from_terms(&module, remainder).expect("terms from a valid element")
}

/// Remainder of `v` modulo `basis`: no term of the result is divisible by a lead
/// term of `basis`. The largest reducible term is always reduced first, by the
/// lowest-index reducer.
pub fn normal_form(v: &FreeElement, basis: &[FreeElement]) -> FreeElement {
    reduce(v, basis, None)
}

fn check_homogeneous(gens: &[FreeElement]) -> Result<()> {
    for (index, g) in gens.iter().enumerate() {
        if let Err(degrees) = g.homogeneous_degree() {
            return Err(Error::Inhomogeneous { index, degrees });
        }
    }
    Ok(())
}

fn common_module(gens: &[FreeElement]) -> Result<Arc<FreeModule>> {
    let m = gens
        .first()
        .ok_or(Error::Range { what: "number of generators", value: 0 })?
        .module()
        .clone();
    if gens.iter().any(|g| !Arc::ptr_eq(g.module(), &m) && **g.module() != *m) {
        return Err(Error::AmbientMismatch);
    }
    Ok(m)
}

fn s_polynomial(a: &FreeElement, b: &FreeElement) -> FreeElement {
    let field = a.module().ring().field();
    let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
    let lcm = la.mono.lcm(&lb.mono);
    let ua = lcm.div(&la.mono).expect("divides lcm");
    let ub = lcm.div(&lb.mono).expect("divides lcm");
    FreeElement::zero(a.module())
        .add_scaled(a, field.inv(la.coeff), &ua)
        .add_scaled(b, field.neg(field.inv(lb.coeff)), &ub)
}

/// Reduced Groebner basis of the submodule generated by `gens`.
///
/// Pairs are processed smallest lcm degree first (ties by pair index); the
/// product criterion (for ideals) and Buchberger's chain criterion skip pairs.
/// The output keeps the surviving input generators in input order, followed by
/// new elements in the order they were found.
pub fn buchberger(gens: &[FreeElement]) -> Result<GroebnerBasis> {
    let module = common_module(gens)?;
    check_homogeneous(gens)?;
    let is_ideal = module.rank() == 1;

    let mut basis: Vec<FreeElement> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }

    let pair_degree = |basis: &[FreeElement], i: usize, j: usize| -> i64 {
        let (a, b) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
        module.term_degree(a.comp, &a.mono.lcm(&b.mono))
    };

    let mut queue: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[FreeElement], k: usize, queue: &mut BTreeSet<(i64, usize, usize)>, pending: &mut HashSet<(usize, usize)>| {
        for i in 0..k {
            let (a, b) = (basis[i].lead().unwrap(), basis[k].lead().unwrap());
            if a.comp != b.comp {
                continue;
            }
            if is_ideal && a.mono.is_coprime(&b.mono) {
                continue;
            }
            queue.insert((pair_degree(basis, i, k), i, k));
            pending.insert((i, k));
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    while let Some((deg, i, j)) = queue.iter().next().cloned() {
        queue.remove(&(deg, i, j));
        pending.remove(&(i, j));
        let (a, b) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
        let lcm = a.mono.lcm(&b.mono);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let l = basis[k].lead().unwrap();
            l.comp == a.comp
                && l.mono.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            push_pairs(&basis, basis.len() - 1, &mut queue, &mut pending);
        }
    }

    // drop elements whose lead term is divisible by another lead term
    let mut keep = vec![true; basis.len()];
    for k in 0..basis.len() {
        let lk = basis[k].lead().unwrap();
        for m in 0..basis.len() {
            if m == k || !keep[m] {
                continue;
            }
            let lm = basis[m].lead().unwrap();
            if lm.comp == lk.comp && lm.mono.divides(&lk.mono) && (lm.mono != lk.mono || m < k) {
                keep[k] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<FreeElement> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();

    // tail-reduce
    for k in 0..minimal.len() {
        let others: Vec<FreeElement> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, g)| g.clone())
            .collect();
        minimal[k] = normal_form(&minimal[k], &others).monic();
    }
    Ok(GroebnerBasis { generators: minimal, module })
}

/// Generators of the syzygy module of a Groebner basis.
///
/// The returned elements live in the free module on `basis.generators`,
/// ordered by the induced Schreyer order (ties go to the larger index). For
/// each generator `j` only the pairs `(i, j)`, `i < j`, whose quotients
/// `lcm/lead_j` minimally generate the colon of earlier lead terms are used;
/// the resulting syzygies form a Groebner basis of the syzygy module. The
/// returned spec holds each syzygy's degree, the degree of its S-pair lcm.
pub fn schreyer_syzygies(basis: &GroebnerBasis) -> Result<(Vec<FreeElement>, FreeModuleSpec)> {
    let gens = &basis.generators;
    if gens.is_empty() {
        return Ok((Vec::new(), FreeModuleSpec::default()));
    }
    let field = basis.module.ring().field();
    let frame = FreeModule::schreyer(gens)?;
    let leads: Vec<Term> = gens.iter().map(|g| g.lead().cloned().expect("nonzero")).collect();

    let mut syzygies = Vec::new();
    let mut degrees = Vec::new();
    for j in 1..gens.len() {
        let lj = &leads[j];
        let mut candidates: Vec<(Monomial, usize)> = (0..j)
            .filter(|&i| leads[i].comp == lj.comp)
            .map(|i| (leads[i].mono.lcm(&lj.mono).div(&lj.mono).expect("divides lcm"), i))
            .collect();
        candidates.sort_by(|a, b| a.0.standard_degree().cmp(&b.0.standard_degree()).then(a.1.cmp(&b.1)));
        let mut chosen: Vec<(Monomial, usize)> = Vec::new();
        for (q, i) in candidates {
            if !chosen.iter().any(|(p, _)| p.divides(&q)) {
                chosen.push((q, i));
            }
        }
        chosen.sort_by_key(|c| c.1);
        for (uj, i) in chosen {
            let li = &leads[i];
            let lcm = li.mono.lcm(&lj.mono);
            let ui = lcm.div(&li.mono).expect("divides lcm");
            let s = FreeElement::zero(&basis.module)
                .add_scaled(&gens[j], field.inv(lj.coeff), &uj)
                .add_scaled(&gens[i], field.neg(field.inv(li.coeff)), &ui);
            let mut quotients = Vec::new();
            let rem = reduce(&s, gens, Some(&mut quotients));
            if !rem.is_zero() {
                return Err(Error::Internal("S-pair did not reduce to zero; input is not a Groebner basis".into()));
            }
            // lc_j * (u_j/lc_j e_j - u_i/lc_i e_i - sum q_k e_k)
            let lc = lj.coeff;
            let mut terms: Vec<(usize, i64, Monomial)> = vec![
                (j, 1, uj.clone()),
                (i, field.neg(field.div(lc, li.coeff)) as i64, ui),
            ];
            for (k, c, m) in quotients {
                terms.push((k, field.neg(field.mul(lc, c)) as i64, m));
            }
            let syz = FreeElement::from_terms(&frame, terms)?;
            degrees.push(basis.module.term_degree(lj.comp, &lcm));
            syzygies.push(syz);
        }
    }
    Ok((syzygies, FreeModuleSpec::new(degrees)))
}

/// Treats `elements` (all nonzero, in one module, with pairwise non-dividing
/// lead terms) as a Groebner basis without recomputation.
pub(crate) fn assume_basis(elements: Vec<FreeElement>) -> Result<GroebnerBasis> {
    let module = common_module(&elements)?;
    Ok(GroebnerBasis { generators: elements, module })
}
