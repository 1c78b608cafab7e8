//! Predicted Betti tables of `gr_m(S>=e)` by peeling off `y`-adic layers.
//!
//! With `y` a variable of maximal weight `d` and `N = ceil(e/d)`, the layers
//! `M^(i) = S>=e ∩ <y^i>` have quotients `A>=(e-di)` extended to `S`, where `A`
//! is the ring on the other variables. Starting from the free top layer, each
//! quotient's table is tensored with the Koszul complex on `y` and added on.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::assoc_graded::{gr_hilbert, OrdContext};
use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::ring::RingSpec;
use crate::truncation::{complement_ring, elimination_variable, filtration_layer, layer_count, trunc_gens};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionStep {
    pub layer: i64,
    pub sub_weights: Vec<u32>,
    pub sub_threshold: i64,
    pub sub_betti: BettiTable,
    pub after_tensor: BettiTable,
    pub before_horseshoe: BettiTable,
    pub after_horseshoe: BettiTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub weights: Vec<u32>,
    pub e: i64,
    /// Index of the eliminated variable, absent for base cases.
    pub variable: Option<usize>,
    pub variable_weight: Option<u32>,
    pub layers: Option<i64>,
    pub steps: Vec<ConstructionStep>,
}

type Memo = Mutex<HashMap<(Vec<u32>, i64), BettiTable>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_weights(weights: &[u32]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidRing("no variables".into()));
    }
    if weights.contains(&0) {
        return Err(Error::InvalidRing("weights must be positive".into()));
    }
    Ok(())
}

fn build(weights: &[u32], e: i64, trace: Option<&mut ConstructionTrace>) -> BettiTable {
    if e <= 0 || weights.len() == 1 {
        return BettiTable::free();
    }
    let y = elimination_variable(weights).expect("nonempty");
    let d = weights[y];
    let big_n = layer_count(e, d);
    let sub_weights: Vec<u32> = weights.iter().enumerate().filter(|&(t, _)| t != y).map(|(_, &w)| w).collect();
    let mut steps = Vec::new();
    let mut running = BettiTable::free();
    for i in (0..big_n).rev() {
        let sub_threshold = e - d as i64 * i;
        let sub = cached(&sub_weights, sub_threshold);
        let ext = tensor_koszul_betti(&sub, 1);
        let next = horseshoe_sum(&running, &ext).expect("constructed tables are diagonal");
        steps.push(ConstructionStep {
            layer: i,
            sub_weights: sub_weights.clone(),
            sub_threshold,
            sub_betti: sub,
            after_tensor: ext,
            before_horseshoe: running,
            after_horseshoe: next.clone(),
        });
        running = next;
    }
    if let Some(t) = trace {
        t.variable = Some(y);
        t.variable_weight = Some(d);
        t.layers = Some(big_n);
        t.steps = steps;
    }
    running
}

fn cached(weights: &[u32], e: i64) -> BettiTable {
    let mut key = weights.to_vec();
    key.sort_unstable();
    let e = e.max(0);
    if let Some(t) = memo().lock().expect("memo lock").get(&(key.clone(), e)) {
        return t.clone();
    }
    // computed outside the lock; racing writers insert equal values
    let t = build(&key, e, None);
    memo().lock().expect("memo lock").insert((key, e), t.clone());
    t
}

/// Predicted Betti table of `gr_m(S>=e)` over the companion ring, with the
/// top-level steps recorded.
pub fn construct_gr_betti(weights: &[u32], e: i64) -> Result<(BettiTable, ConstructionTrace)> {
    check_weights(weights)?;
    let mut trace = ConstructionTrace {
        weights: weights.to_vec(),
        e,
        variable: None,
        variable_weight: None,
        layers: None,
        steps: Vec::new(),
    };
    let table = build(weights, e, Some(&mut trace));
    table.check_diagonal()?;
    Ok((table, trace))
}

/// `beta'_{i,j} = sum_t C(k, t) beta_{i-t, j-t}`: the table after tensoring
/// with the Koszul complex on `k` new weight-one variables.
pub fn tensor_koszul_betti(b: &BettiTable, k: usize) -> BettiTable {
    let mut out = BettiTable::new();
    for (i, j, r) in b.iter() {
        let mut binom = 1usize;
        for t in 0..=k {
            out.add(i + t, j + t as i64, r * binom);
            binom = binom * (k - t) / (t + 1);
        }
    }
    out
}

/// Entrywise sum of two linear tables.
pub fn horseshoe_sum(left: &BettiTable, right: &BettiTable) -> Result<BettiTable> {
    left.check_diagonal()?;
    right.check_diagonal()?;
    Ok(left.sum(right))
}

/// Predicted table of `gr_m` of `sum_j S(-t_j)>=e`, `t_j = gen_degrees[j]`.
pub fn construct_free_betti(weights: &[u32], gen_degrees: &[i64], e: i64) -> Result<BettiTable> {
    let mut out = BettiTable::new();
    for &t in gen_degrees {
        out = out.sum(&construct_gr_betti(weights, e - t)?.0);
    }
    Ok(out)
}

/// Result of [`ses_hilbert_check`], with the three Hilbert functions compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesCheck {
    pub holds: bool,
    pub layer: i64,
    pub middle: Vec<usize>,
    pub sub: Vec<usize>,
    pub quotient: Vec<usize>,
}

/// Compares `gr` Hilbert functions along `0 -> M^(i+1) -> M^(i) -> A^(i) -> 0`
/// in degrees `0..=bound`, for `M = S>=e` and `0 <= i < N`.
pub fn ses_hilbert_check(weights: &[u32], e: i64, i: i64, bound: i64) -> Result<SesCheck> {
    check_weights(weights)?;
    if weights.len() < 2 || e <= 0 {
        return Err(Error::Range { what: "threshold with no layers", value: e });
    }
    let ring = RingSpec::with_weights(weights)?;
    let y = elimination_variable(weights).expect("nonempty");
    let d = weights[y];
    let big_n = layer_count(e, d);
    if i < 0 || i >= big_n {
        return Err(Error::Range { what: "filtration layer", value: i });
    }
    let gens = trunc_gens(&ring, e);
    let middle = gr_hilbert(&OrdContext::ideal(&ring, &filtration_layer(&gens, i, y)?)?, bound);
    let sub = gr_hilbert(&OrdContext::ideal(&ring, &filtration_layer(&gens, i + 1, y)?)?, bound);
    // y acts by zero on A^(i), so its gr over S has the pieces of gr over A
    let a = complement_ring(&ring, y)?;
    let quotient = gr_hilbert(&OrdContext::ideal(&a, &trunc_gens(&a, e - d as i64 * i))?, bound);
    let holds = middle.iter().zip(&sub).zip(&quotient).all(|((m, s), q)| *m == s + q);
    Ok(SesCheck { holds, layer: i, middle, sub, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_graded::gr_betti;
    use proptest::prelude::*;

    fn t(e: &[(usize, i64, usize)]) -> BettiTable {
        BettiTable::from_entries(e.iter().copied())
    }

    #[test]
    fn construct_examples() {
        assert_eq!(construct_gr_betti(&[1, 3], 5).unwrap().0, t(&[(0, 0, 3), (1, 1, 2)]));
        assert_eq!(construct_gr_betti(&[1, 2], 1).unwrap().0, t(&[(0, 0, 2), (1, 1, 1)]));
        assert_eq!(construct_gr_betti(&[1, 2, 2], 7).unwrap().0, t(&[(0, 0, 15), (1, 1, 24), (2, 2, 10)]));
        assert_eq!(construct_gr_betti(&[4], 11).unwrap().0, BettiTable::free());
        assert_eq!(construct_gr_betti(&[1, 2], -3).unwrap().0, BettiTable::free());
        assert!(construct_gr_betti(&[], 3).is_err());
        assert!(construct_gr_betti(&[0, 1], 3).is_err());
    }

    #[test]
    fn three_variable_oracle() {
        let ring = RingSpec::with_weights(&[1, 2, 2]).unwrap();
        let ctx = OrdContext::ideal(&ring, &trunc_gens(&ring, 7)).unwrap();
        assert_eq!(gr_betti(&ctx, 6).unwrap(), construct_gr_betti(&[1, 2, 2], 7).unwrap().0);
    }

    #[test]
    fn trace_of_first_layer() {
        let (_, trace) = construct_gr_betti(&[1, 2, 2], 7).unwrap();
        assert_eq!(trace.layers, Some(4));
        assert_eq!(trace.variable, Some(2));
        let first = &trace.steps[0];
        assert_eq!(first.layer, 3);
        assert_eq!(first.sub_weights, vec![1, 2]);
        assert_eq!(first.sub_threshold, 1);
        assert_eq!(first.sub_betti, t(&[(0, 0, 2), (1, 1, 1)]));
        assert_eq!(first.after_tensor, t(&[(0, 0, 2), (1, 1, 3), (2, 2, 1)]));
        assert_eq!(first.before_horseshoe, BettiTable::free());
        assert_eq!(first.after_horseshoe, t(&[(0, 0, 3), (1, 1, 3), (2, 2, 1)]));
        for s in &trace.steps {
            let d = 2;
            assert!(s.sub_threshold == 7 - d * s.layer);
        }
    }

    #[test]
    fn tensor_examples() {
        let b = t(&[(0, 0, 2), (1, 1, 1)]);
        assert_eq!(tensor_koszul_betti(&b, 0), b);
        assert_eq!(tensor_koszul_betti(&b, 1), t(&[(0, 0, 2), (1, 1, 3), (2, 2, 1)]));
        assert_eq!(tensor_koszul_betti(&BettiTable::free(), 2), t(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)]));
        assert_eq!(tensor_koszul_betti(&BettiTable::free(), 4).totals(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn horseshoe_examples() {
        let b = t(&[(0, 0, 2), (1, 1, 1)]);
        assert_eq!(horseshoe_sum(&b, &BettiTable::new()).unwrap(), b);
        assert_eq!(horseshoe_sum(&BettiTable::free(), &b).unwrap(), t(&[(0, 0, 3), (1, 1, 1)]));
        assert!(matches!(horseshoe_sum(&b, &t(&[(1, 2, 1)])), Err(Error::NotDiagonal { i: 1, j: 2 })));
    }

    #[test]
    fn free_examples() {
        assert_eq!(construct_free_betti(&[1, 3], &[0], 5).unwrap(), construct_gr_betti(&[1, 3], 5).unwrap().0);
        assert_eq!(construct_free_betti(&[1, 3], &[0, 0], 5).unwrap(), t(&[(0, 0, 6), (1, 1, 4)]));
        assert_eq!(
            construct_free_betti(&[1, 3], &[0, 9], 5).unwrap(),
            construct_gr_betti(&[1, 3], 5).unwrap().0.sum(&BettiTable::free())
        );
    }

    #[test]
    fn ses_examples() {
        let c = ses_hilbert_check(&[1, 3], 5, 1, 6).unwrap();
        assert!(c.holds);
        // M^(1) = <x^2 y, y^2>, M^(2) = <y^2>, A>=2 = <x^2>
        assert_eq!(c.middle[0], 2);
        assert_eq!(c.sub[0], 1);
        assert_eq!(c.quotient[0], 1);
        assert!(ses_hilbert_check(&[1, 3], 6, 1, 6).unwrap().holds);
        for i in 0..4 {
            assert!(ses_hilbert_check(&[1, 2, 2], 7, i, 8).unwrap().holds);
        }
        assert!(ses_hilbert_check(&[1, 3], 5, 2, 6).is_err());
    }

    fn diag() -> impl Strategy<Value = BettiTable> {
        prop::collection::vec(0usize..5, 0..4)
            .prop_map(|v| BettiTable::from_entries(v.into_iter().enumerate().map(|(i, r)| (i, i as i64, r))))
    }

    proptest! {
        #[test]
        fn horseshoe_is_associative(a in diag(), b in diag(), c in diag()) {
            let left = horseshoe_sum(&horseshoe_sum(&a, &b).unwrap(), &c).unwrap();
            let right = horseshoe_sum(&a, &horseshoe_sum(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn construction_is_diagonal(w in prop::collection::vec(1u32..=5, 1..=4), e in -2i64..=20) {
            let (b, _) = construct_gr_betti(&w, e).unwrap();
            prop_assert!(b.is_diagonal());
            prop_assert_eq!(b.get(0, 0) > 0, true);
        }

        #[test]
        fn one_variable_is_free(w in 1u32..=6, e in -5i64..=40) {
            prop_assert_eq!(construct_gr_betti(&[w], e).unwrap().0, BettiTable::free());
        }
    }
}
