use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::ring::RingSpec;

/// Sparse polynomial, terms strictly descending in weighted degrevlex,
/// no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(u32, Monomial)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Scale the first operand by the constant term of the second.
    Scale,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: u32, ring: &RingSpec) -> Self {
        Self::term(c, Monomial::one(ring.num_vars()), ring)
    }

    pub fn term(c: u32, m: Monomial, ring: &RingSpec) -> Self {
        let c = c % ring.characteristic();
        if c == 0 {
            Self::zero()
        } else {
            Polynomial { terms: vec![(c, m)] }
        }
    }

    pub fn var(index: usize, ring: &RingSpec) -> Self {
        Self::term(1, Monomial::var(ring.num_vars(), index, 1), ring)
    }

    /// Canonicalizes arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Monomial)>, ring: &RingSpec) -> Self {
        let f = ring.field();
        let mut ts: Vec<(u32, Monomial)> = terms.into_iter().map(|(c, m)| (f.from_i64(c), m)).collect();
        ts.sort_by(|a, b| ring.compare(&b.1, &a.1));
        let mut out: Vec<(u32, Monomial)> = Vec::with_capacity(ts.len());
        for (c, m) in ts {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = f.add(last.0, c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|t| t.0 != 0);
        Polynomial { terms: out }
    }

    /// Re-sorts the terms for another ring on the same variables (e.g. the companion).
    pub fn normalized(&self, ring: &RingSpec) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, m)| (*c as i64, m.clone())), ring)
    }

    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(u32, Monomial)> {
        self.terms.first()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((c, m)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Weighted degree if homogeneous; `None` for zero.
    pub fn weighted_degree(&self, ring: &RingSpec) -> Option<i64> {
        self.terms.first().map(|(_, m)| m.weighted_degree(ring.weights()))
    }

    pub fn is_homogeneous(&self, ring: &RingSpec) -> bool {
        match self.weighted_degree(ring) {
            None => true,
            Some(d) => self.terms.iter().all(|(_, m)| m.weighted_degree(ring.weights()) == d),
        }
    }

    /// The part of standard (total) degree exactly `k`.
    pub fn standard_component(&self, k: i64) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(_, m)| m.standard_degree() == k).cloned().collect(),
        }
    }

    pub fn add(&self, other: &Polynomial, ring: &RingSpec) -> Polynomial {
        self.combine(other, 1, &Monomial::one(ring.num_vars()), ring)
    }

    pub fn sub(&self, other: &Polynomial, ring: &RingSpec) -> Polynomial {
        let f = ring.field();
        self.combine(other, f.neg(1 % f.characteristic()), &Monomial::one(ring.num_vars()), ring)
    }

    pub fn neg(&self, ring: &RingSpec) -> Polynomial {
        let f = ring.field();
        Polynomial { terms: self.terms.iter().map(|(c, m)| (f.neg(*c), m.clone())).collect() }
    }

    pub fn scale(&self, c: u32, ring: &RingSpec) -> Polynomial {
        self.mul_term(c, &Monomial::one(ring.num_vars()), ring)
    }

    pub fn mul_term(&self, c: u32, m: &Monomial, ring: &RingSpec) -> Polynomial {
        let f = ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, t)| (f.mul(*a, c), t.mul(m))).collect(),
        }
    }

    /// `self + c*m*other`, merging sorted term lists.
    pub fn combine(&self, other: &Polynomial, c: u32, m: &Monomial, ring: &RingSpec) -> Polynomial {
        let f = ring.field();
        let c = c % f.characteristic();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let scaled = other.terms.iter().map(|(a, t)| (f.mul(*a, c), t.mul(m)));
        Polynomial { terms: merge(&self.terms, scaled, f, ring) }
    }

    pub fn mul(&self, other: &Polynomial, ring: &RingSpec) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (c, m) in &other.terms {
            acc = acc.combine(self, *c, m, ring);
        }
        acc
    }

    pub fn render(&self, ring: &RingSpec) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = ring.field();
        let mut s = String::new();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let v = f.signed(*c);
            let mag = v.unsigned_abs();
            if k == 0 {
                if v < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if v < 0 { " - " } else { " + " });
            }
            let body = ring.render_monomial(m);
            match (mag, m.is_one()) {
                (_, true) => s.push_str(&mag.to_string()),
                (1, false) => s.push_str(&body),
                _ => s.push_str(&format!("{mag}*{body}")),
            }
        }
        s
    }
}

fn merge(
    a: &[(u32, Monomial)],
    b: impl Iterator<Item = (u32, Monomial)>,
    f: PrimeField,
    ring: &RingSpec,
) -> Vec<(u32, Monomial)> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut i = 0;
    for (bc, bm) in b {
        while i < a.len() && ring.compare(&a[i].1, &bm) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].1 == bm {
            let s = f.add(a[i].0, bc);
            if s != 0 {
                out.push((s, bm));
            }
            i += 1;
        } else {
            out.push((bc, bm));
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp, ring: &RingSpec) -> Polynomial {
    match op {
        PolyOp::Add => f.add(g, ring),
        PolyOp::Sub => f.sub(g, ring),
        PolyOp::Mul => f.mul(g, ring),
        PolyOp::Scale => f.scale(g.constant_term(), ring),
    }
}
