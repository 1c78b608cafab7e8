use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector. Exponents are `u16`; products that would overflow panic
/// (or fail through [`Monomial::checked_mul`]) instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn new(exponents: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn var(num_vars: usize, index: usize, power: u16) -> Self {
        let mut m = Self::one(num_vars);
        m.0[index] = power;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as i64 * w as i64)
            .sum()
    }

    pub fn standard_degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.0.len() != other.0.len() {
            return Err(Error::Dimension {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn mul_var(&self, index: usize, power: u16) -> Monomial {
        let mut m = self.clone();
        m.0[index] = m.0[index].checked_add(power).expect("monomial exponent overflow");
        m
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pure lexicographic comparison with `x_1 > x_2 > ...`.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(a, _)| **a > 0)
            .map(|(a, n)| if *a == 1 { n.clone() } else { format!("{n}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// Keeps the minimal elements under divisibility, dropping duplicates.
/// The result is sorted lexicographically descending (`x_1` powers first).
pub fn minimalize(monomials: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = monomials.into_iter().collect();
    all.sort_by(|a, b| {
        a.standard_degree()
            .cmp(&b.standard_degree())
            .then_with(|| b.cmp_lex(a))
    });
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| b.cmp_lex(a));
    kept
}

/// All monomials in `weights.len()` variables of weighted degree exactly `degree`,
/// in lexicographically descending order.
pub fn monomials_of_degree(weights: &[u32], degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut current = vec![0u16; weights.len()];
    fill_degree(weights, 0, degree, &mut current, &mut out);
    out
}

fn fill_degree(weights: &[u32], var: usize, remaining: i64, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if var == weights.len() {
        if remaining == 0 {
            out.push(Monomial::new(current));
        }
        return;
    }
    let w = weights[var] as i64;
    if var + 1 == weights.len() {
        if remaining % w == 0 {
            current[var] = (remaining / w) as u16;
            out.push(Monomial::new(current));
            current[var] = 0;
        }
        return;
    }
    let mut a = remaining / w;
    loop {
        current[var] = a as u16;
        fill_degree(weights, var + 1, remaining - a * w, current, out);
        if a == 0 {
            break;
        }
        a -= 1;
    }
    current[var] = 0;
}
