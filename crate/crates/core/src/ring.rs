use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::monomial::Monomial;

/// A positively weighted polynomial ring `S = k[x_1..x_n]` over a prime field.
///
/// The standard-graded companion `R = gr_m(S)` has the same variables and
/// characteristic with every weight replaced by 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    names: Vec<String>,
    weights: Vec<u32>,
    characteristic: u32,
}

/// Monomial orders understood by [`monomial_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderTag {
    /// Weighted degree first, ties broken reverse-lexicographically from the last variable.
    WeightedDegRevLex,
    /// Degrevlex for the companion grading (all weights 1).
    StandardDegRevLex,
    Lex,
}

pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl RingSpec {
    pub fn new(names: Vec<String>, weights: Vec<u32>, characteristic: u32) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if names.len() != weights.len() {
            return Err(Error::Dimension { expected: weights.len(), found: names.len() });
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidRing(format!("weight of {} must be positive", names[pos])));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable name {n}")));
            }
        }
        PrimeField::new(characteristic)?;
        Ok(RingSpec { names, weights, characteristic })
    }

    /// Ring with default variable names and characteristic 32003.
    pub fn with_weights(weights: &[u32]) -> Result<Self> {
        Self::new(default_names(weights.len()), weights.to_vec(), DEFAULT_CHARACTERISTIC)
    }

    pub fn with_characteristic(&self, characteristic: u32) -> Result<Self> {
        Self::new(self.names.clone(), self.weights.clone(), characteristic)
    }

    pub fn companion(&self) -> RingSpec {
        RingSpec {
            names: self.names.clone(),
            weights: vec![1; self.weights.len()],
            characteristic: self.characteristic,
        }
    }

    /// The subring on the first `k` variables.
    pub fn prefix(&self, k: usize) -> Result<RingSpec> {
        if k == 0 || k > self.num_vars() {
            return Err(Error::Range { what: "prefix length", value: k as i64 });
        }
        Ok(RingSpec {
            names: self.names[..k].to_vec(),
            weights: self.weights[..k].to_vec(),
            characteristic: self.characteristic,
        })
    }

    /// The same ring with variables reordered: new variable `t` is old variable `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> RingSpec {
        RingSpec {
            names: perm.iter().map(|&i| self.names[i].clone()).collect(),
            weights: perm.iter().map(|&i| self.weights[i]).collect(),
            characteristic: self.characteristic,
        }
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.characteristic).expect("validated at construction")
    }

    pub fn max_weight(&self) -> u32 {
        *self.weights.iter().max().expect("non-empty")
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.num_vars() != self.num_vars() {
            return Err(Error::Dimension { expected: self.num_vars(), found: m.num_vars() });
        }
        Ok(())
    }

    pub fn weighted_degree(&self, m: &Monomial) -> Result<i64> {
        self.check(m)?;
        Ok(m.weighted_degree(&self.weights))
    }

    pub fn standard_degree(&self, m: &Monomial) -> Result<i64> {
        self.check(m)?;
        Ok(m.standard_degree())
    }

    /// Weighted degrevlex comparison; callers guarantee matching lengths.
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        degrevlex(a.exponents(), b.exponents(), &self.weights)
    }

    /// `a*s` against `b*t` in weighted degrevlex without materializing the products.
    pub fn compare_products(&self, a: &Monomial, s: &Monomial, b: &Monomial, t: &Monomial) -> Ordering {
        let (a, s, b, t) = (a.exponents(), s.exponents(), b.exponents(), t.exponents());
        let mut da = 0i64;
        let mut db = 0i64;
        for k in 0..self.weights.len() {
            da += (a[k] as i64 + s[k] as i64) * self.weights[k] as i64;
            db += (b[k] as i64 + t[k] as i64) * self.weights[k] as i64;
        }
        if da != db {
            return da.cmp(&db);
        }
        for k in (0..self.weights.len()).rev() {
            let x = a[k] as u32 + s[k] as u32;
            let y = b[k] as u32 + t[k] as u32;
            if x != y {
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        m.render(&self.names)
    }

    /// Inverse of the ring-spec grammar, e.g. `x=1,y=3@32003`.
    pub fn render(&self) -> String {
        let vars: Vec<String> = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| format!("{n}={w}"))
            .collect();
        format!("{}@{}", vars.join(","), self.characteristic)
    }
}

fn degrevlex(a: &[u16], b: &[u16], weights: &[u32]) -> Ordering {
    let da: i64 = a.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum();
    let db: i64 = b.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            // the smaller exponent in the last differing variable is larger
            return b[k].cmp(&a[k]);
        }
    }
    Ordering::Equal
}

pub fn monomial_compare(a: &Monomial, b: &Monomial, order: OrderTag, ring: &RingSpec) -> Result<Ordering> {
    ring.check(a)?;
    ring.check(b)?;
    Ok(match order {
        OrderTag::WeightedDegRevLex => degrevlex(a.exponents(), b.exponents(), ring.weights()),
        OrderTag::StandardDegRevLex => degrevlex(a.exponents(), b.exponents(), &vec![1; ring.num_vars()]),
        OrderTag::Lex => a.cmp_lex(b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(w: &[u32]) -> RingSpec {
        RingSpec::with_weights(w).unwrap()
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(ring(&[1, 3]).weighted_degree(&Monomial::new(&[2, 1])).unwrap(), 5);
        assert_eq!(ring(&[1, 3]).weighted_degree(&Monomial::one(2)).unwrap(), 0);
        assert_eq!(ring(&[2, 3]).weighted_degree(&Monomial::new(&[4, 2])).unwrap(), 14);
        assert!(matches!(
            ring(&[1, 3]).weighted_degree(&Monomial::new(&[1, 1, 1])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn compare_examples() {
        let r = ring(&[1, 3]);
        let x5 = Monomial::new(&[5, 0]);
        let x2y = Monomial::new(&[2, 1]);
        assert_eq!(monomial_compare(&x5, &x5, OrderTag::WeightedDegRevLex, &r).unwrap(), Ordering::Equal);
        assert_eq!(monomial_compare(&x5, &x2y, OrderTag::WeightedDegRevLex, &r).unwrap(), Ordering::Greater);
        let r = ring(&[1, 1]);
        let x1x2 = Monomial::new(&[1, 1]);
        let x1sq = Monomial::new(&[2, 0]);
        assert_eq!(monomial_compare(&x1sq, &x1x2, OrderTag::WeightedDegRevLex, &r).unwrap(), Ordering::Greater);
    }

    #[test]
    fn invalid_rings() {
        assert!(RingSpec::new(vec!["x".into()], vec![0], 32003).is_err());
        assert!(RingSpec::new(vec!["x".into(), "x".into()], vec![1, 1], 32003).is_err());
        assert!(RingSpec::new(vec!["x".into()], vec![1], 32001).is_err());
        assert!(ring(&[2, 5]).companion().is_standard());
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..6, 3).prop_map(|v| Monomial::new(&v))
    }

    proptest! {
        #[test]
        fn order_axioms(a in mono3(), b in mono3(), c in mono3(), w in proptest::collection::vec(1u32..5, 3)) {
            let r = ring(&w);
            let ab = r.compare(&a, &b);
            prop_assert_eq!(ab, r.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && r.compare(&b, &c) == Ordering::Greater {
                prop_assert_eq!(r.compare(&a, &c), Ordering::Greater);
            }
            prop_assert_eq!(r.compare(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_eq!(r.compare_products(&a, &c, &b, &c), ab);
        }

        #[test]
        fn degree_additivity(a in mono3(), b in mono3(), w in proptest::collection::vec(1u32..5, 3)) {
            let r = ring(&w);
            prop_assert_eq!(
                r.weighted_degree(&a.mul(&b)).unwrap(),
                r.weighted_degree(&a).unwrap() + r.weighted_degree(&b).unwrap()
            );
        }
    }
}
