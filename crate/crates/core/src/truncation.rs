//! Minimal monomial generators of truncations and of their `y`-adic layers.

use crate::error::{Error, Result};
use crate::monomial::{minimalize, monomials_of_degree, Monomial};
use crate::ring::RingSpec;

/// Minimal generators of `S>=e`, lexicographically descending. For `e <= 0`
/// this is `{1}`.
pub fn trunc_gens(ring: &RingSpec, e: i64) -> Vec<Monomial> {
    let n = ring.num_vars();
    if e <= 0 {
        return vec![Monomial::one(n)];
    }
    let w = ring.weights();
    let mut out = Vec::new();
    for d in e..e + ring.max_weight() as i64 {
        for m in monomials_of_degree(w, d) {
            let minimal = m.exponents().iter().zip(w).all(|(&a, &wi)| a == 0 || d - (wi as i64) < e);
            if minimal {
                out.push(m);
            }
        }
    }
    out.sort_by(|a, b| b.cmp_lex(a));
    out
}

/// Generators of `sum_j S(-t_j)>=e` where `t_j = gen_degrees[j]`: component `j`
/// contributes the generators of `S>=(e - t_j)`.
pub fn trunc_free_gens(ring: &RingSpec, gen_degrees: &[i64], e: i64) -> Vec<(usize, Monomial)> {
    gen_degrees
        .iter()
        .enumerate()
        .flat_map(|(j, &t)| trunc_gens(ring, e - t).into_iter().map(move |m| (j, m)))
        .collect()
}

/// Minimal generators of `M ∩ <y^i>` where `y` is variable `last_var`.
pub fn filtration_layer(gens: &[Monomial], i: i64, last_var: usize) -> Result<Vec<Monomial>> {
    if i < 0 {
        return Err(Error::Range { what: "filtration layer", value: i });
    }
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    if last_var >= first.num_vars() {
        return Err(Error::Range { what: "variable index", value: last_var as i64 });
    }
    let power = u16::try_from(i).map_err(|_| Error::ExponentOverflow)?;
    let yi = Monomial::var(first.num_vars(), last_var, power);
    Ok(minimalize(gens.iter().map(|u| u.lcm(&yi))))
}

/// A variable of maximal weight; ties go to the largest index.
pub fn elimination_variable(weights: &[u32]) -> Option<usize> {
    let max = *weights.iter().max()?;
    weights.iter().rposition(|&w| w == max)
}

/// `ceil(e / d)` for `d > 0`.
pub fn layer_count(e: i64, d: u32) -> i64 {
    let d = d as i64;
    if e <= 0 {
        0
    } else {
        (e + d - 1) / d
    }
}

/// Inserts exponent `power` for a new variable at position `at`.
pub(crate) fn embed(m: &Monomial, at: usize, power: u16) -> Monomial {
    let mut e = m.exponents().to_vec();
    e.insert(at, power);
    Monomial::new(&e)
}

/// Ring on all variables except `skip`.
pub fn complement_ring(ring: &RingSpec, skip: usize) -> Result<RingSpec> {
    let keep: Vec<usize> = (0..ring.num_vars()).filter(|&t| t != skip).collect();
    if keep.is_empty() {
        return Err(Error::Range { what: "number of remaining variables", value: 0 });
    }
    Ok(ring.permuted(&keep))
}

/// Minimal generators of `sum_{i<N} A>=(e-di) * y^i + <y^N>`, where `y` is the
/// elimination variable of weight `d`, `A` the ring on the other variables and
/// `N = ceil(e/d)`. This equals `S>=e` for every `e`.
pub fn layer_decomposition(ring: &RingSpec, e: i64) -> Result<Vec<Monomial>> {
    if ring.num_vars() == 1 || e <= 0 {
        return Ok(trunc_gens(ring, e));
    }
    let y = elimination_variable(ring.weights()).expect("nonempty ring");
    let d = ring.weights()[y];
    let a = complement_ring(ring, y)?;
    let big_n = layer_count(e, d);
    let mut all = Vec::new();
    for i in 0..big_n {
        let power = u16::try_from(i).map_err(|_| Error::ExponentOverflow)?;
        all.extend(trunc_gens(&a, e - d as i64 * i).iter().map(|m| embed(m, y, power)));
    }
    let top = u16::try_from(big_n).map_err(|_| Error::ExponentOverflow)?;
    all.push(Monomial::var(ring.num_vars(), y, top));
    Ok(minimalize(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(w: &[u32]) -> RingSpec {
        RingSpec::with_weights(w).unwrap()
    }

    fn monos(es: &[&[u16]]) -> Vec<Monomial> {
        es.iter().map(|e| Monomial::new(e)).collect()
    }

    /// Minimal elements of all monomials of degree >= e up to a window, by brute force.
    fn brute_force(ring: &RingSpec, e: i64) -> Vec<Monomial> {
        let top = e + 2 * ring.max_weight() as i64;
        let all: Vec<Monomial> = (e.max(0)..=top).flat_map(|d| monomials_of_degree(ring.weights(), d)).collect();
        let mut out: Vec<Monomial> = all
            .iter()
            .filter(|m| !all.iter().any(|u| u != *m && u.divides(m)))
            .cloned()
            .collect();
        out.sort_by(|a, b| b.cmp_lex(a));
        out
    }

    #[test]
    fn examples() {
        assert_eq!(trunc_gens(&r(&[1, 3]), 5), monos(&[&[5, 0], &[2, 1], &[0, 2]]));
        assert_eq!(trunc_gens(&r(&[1, 4]), 5), monos(&[&[5, 0], &[1, 1], &[0, 2]]));
        assert_eq!(trunc_gens(&r(&[2, 3]), 7), monos(&[&[4, 0], &[2, 1], &[1, 2], &[0, 3]]));
        assert_eq!(trunc_gens(&r(&[2, 3]), 7), brute_force(&r(&[2, 3]), 7));
        assert_eq!(trunc_gens(&r(&[1, 3]), 0), monos(&[&[0, 0]]));
        assert_eq!(trunc_gens(&r(&[1, 3]), -4), monos(&[&[0, 0]]));
    }

    #[test]
    fn free_examples() {
        let ring = r(&[1, 3]);
        let single = trunc_free_gens(&ring, &[0], 5);
        assert_eq!(single.into_iter().map(|p| p.1).collect::<Vec<_>>(), trunc_gens(&ring, 5));
        let two = trunc_free_gens(&ring, &[0, 2], 5);
        let comp1: Vec<Monomial> = two.iter().filter(|p| p.0 == 1).map(|p| p.1.clone()).collect();
        assert_eq!(comp1, monos(&[&[3, 0], &[0, 1]]));
        let whole = trunc_free_gens(&ring, &[0, 2], -10);
        assert_eq!(whole, vec![(0, Monomial::one(2)), (1, Monomial::one(2))]);
    }

    #[test]
    fn layers() {
        let gens = trunc_gens(&r(&[1, 3]), 5);
        assert_eq!(filtration_layer(&gens, 0, 1).unwrap(), gens);
        assert_eq!(filtration_layer(&gens, 1, 1).unwrap(), monos(&[&[2, 1], &[0, 2]]));
        assert_eq!(filtration_layer(&gens, 2, 1).unwrap(), monos(&[&[0, 2]]));
        assert!(filtration_layer(&gens, -1, 1).is_err());
    }

    #[test]
    fn elimination_choice() {
        assert_eq!(elimination_variable(&[1, 2, 2]), Some(2));
        assert_eq!(elimination_variable(&[3, 1]), Some(0));
        assert_eq!(elimination_variable(&[]), None);
        assert_eq!(layer_count(7, 2), 4);
        assert_eq!(layer_count(6, 2), 3);
    }

    fn weights() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1u32..=4, 1..=3)
    }

    proptest! {
        #[test]
        fn generators_are_minimal_and_complete(w in weights(), e in -2i64..=10) {
            let ring = r(&w);
            let gens = trunc_gens(&ring, e);
            for a in &gens {
                for b in &gens {
                    prop_assert!(a == b || !a.divides(b));
                }
            }
            let top = e + 2 * ring.max_weight() as i64;
            for d in 0..=top {
                for m in monomials_of_degree(&w, d) {
                    prop_assert_eq!(d >= e, gens.iter().any(|g| g.divides(&m)));
                }
            }
        }

        #[test]
        fn filtration_decreases(w in weights(), e in 1i64..=10, i in 0i64..4) {
            let ring = r(&w);
            let y = elimination_variable(&w).unwrap();
            let gens = trunc_gens(&ring, e);
            let now = filtration_layer(&gens, i, y).unwrap();
            let next = filtration_layer(&gens, i + 1, y).unwrap();
            for g in &next {
                prop_assert!(now.iter().any(|u| u.divides(g)));
            }
        }

        #[test]
        fn decomposition_identity(w in weights(), e in -1i64..=12) {
            let ring = r(&w);
            prop_assert_eq!(layer_decomposition(&ring, e).unwrap(), trunc_gens(&ring, e));
        }

        #[test]
        fn top_layer_is_principal(w in weights(), e in 1i64..=12) {
            let ring = r(&w);
            let y = elimination_variable(&w).unwrap();
            let n_layers = layer_count(e, w[y]);
            let layer = filtration_layer(&trunc_gens(&ring, e), n_layers, y).unwrap();
            prop_assert_eq!(layer, vec![Monomial::var(w.len(), y, n_layers as u16)]);
        }
    }
}
