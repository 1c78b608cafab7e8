//! Agreement between independent pipelines on random inputs.

use proptest::prelude::*;

use nskoszul::assoc_graded::{gr_betti, gr_hilbert, OrdContext};
use nskoszul::complex::{
    check_complex, free_hilbert_function, homology_dims, koszul_complex, minimize_complex, taylor_complex, totalize_tensor,
};
use nskoszul::construction::construct_gr_betti;
use nskoszul::graded_module::{betti_via_koszul, ExplicitGradedModule};
use nskoszul::koszul_check::{koszul_verdict, linear_part, truncation_ideal, Verdict};
use nskoszul::module::{FreeElement, FreeModule, FreeModuleSpec};
use nskoszul::resolution::resolve_module;
use nskoszul::truncation::{complement_ring, elimination_variable, filtration_layer, layer_count, trunc_gens};
use nskoszul::{Monomial, RingSpec};

fn ideal_strategy(max_vars: usize) -> impl Strategy<Value = (Vec<u32>, Vec<Vec<u16>>)> {
    (1..=max_vars).prop_flat_map(|n| {
        (
            prop::collection::vec(1u32..=3, n),
            prop::collection::vec(prop::collection::vec(0u16..=4, n), 1..=5),
        )
    })
}

fn elements(w: &[u32], gens: &[Vec<u16>]) -> Vec<FreeElement> {
    let ambient = FreeModule::new(RingSpec::with_weights(w).unwrap(), FreeModuleSpec::new(vec![0]));
    gens.iter().map(|e| FreeElement::monomial(&ambient, 0, Monomial::new(e)).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimization_preserves_homology((w, gens) in ideal_strategy(3)) {
        let ring = RingSpec::with_weights(&w).unwrap();
        let monos: Vec<Monomial> = gens.iter().map(|e| Monomial::new(e)).collect();
        let t = taylor_complex(&ring, &monos).unwrap();
        let m = minimize_complex(&t);
        let bound = 14;
        let before = homology_dims(&t, bound);
        let after = homology_dims(&m, bound);
        for (k, v) in &before {
            prop_assert_eq!(after.get(k).copied().unwrap_or(0), *v, "at {:?}", k);
        }
        prop_assert!(after.keys().all(|k| before.contains_key(k)));
    }

    #[test]
    fn euler_characteristic_matches_quotient((w, gens) in ideal_strategy(3)) {
        let ring = RingSpec::with_weights(&w).unwrap();
        let f = resolve_module(&elements(&w, &gens), true).unwrap();
        let module = ExplicitGradedModule::from_monomial_submodule(
            &ring, &[0], &gens.iter().map(|e| (0, Monomial::new(e))).collect::<Vec<_>>(), 14).unwrap();
        for j in 0..=14 {
            let chi: i64 = f.modules().iter().enumerate()
                .map(|(i, m)| if i % 2 == 0 { 1 } else { -1 } * free_hilbert_function(&ring, m, j) as i64)
                .sum();
            prop_assert_eq!(chi, module.dim(j) as i64);
        }
    }

    #[test]
    fn resolution_agrees_with_koszul_homology((w, gens) in ideal_strategy(2)) {
        let ring = RingSpec::with_weights(&w).unwrap();
        let f = resolve_module(&elements(&w, &gens), true).unwrap();
        let bound = 20;
        let module = ExplicitGradedModule::from_monomial_submodule(
            &ring, &[0], &gens.iter().map(|e| (0, Monomial::new(e))).collect::<Vec<_>>(), bound).unwrap();
        prop_assert_eq!(f.betti_table().restrict(bound), betti_via_koszul(&module, &ring, bound).unwrap());
    }

    #[test]
    fn tensor_and_linear_part_are_complexes((w, gens) in ideal_strategy(3), var in 0usize..3) {
        let ring = RingSpec::with_weights(&w).unwrap();
        let f = resolve_module(&elements(&w, &gens), true).unwrap();
        let k = koszul_complex(&ring, &[var % w.len()]).unwrap();
        prop_assert!(check_complex(&totalize_tensor(&f, &k).unwrap()).is_ok());
        prop_assert!(check_complex(&linear_part(&f, &ring).unwrap()).is_ok());
    }

    #[test]
    fn telescoping_layers(w in prop::collection::vec(1u32..=4, 2..=3), e in 1i64..=10) {
        let ring = RingSpec::with_weights(&w).unwrap();
        let y = elimination_variable(&w).unwrap();
        let d = w[y];
        let a = complement_ring(&ring, y).unwrap();
        let gens = trunc_gens(&ring, e);
        let bound = 6;
        let big_n = layer_count(e, d);
        let mut total = gr_hilbert(&OrdContext::ideal(&ring, &filtration_layer(&gens, big_n, y).unwrap()).unwrap(), bound);
        for i in 0..big_n {
            let q = gr_hilbert(&OrdContext::ideal(&a, &trunc_gens(&a, e - d as i64 * i)).unwrap(), bound);
            for (t, x) in total.iter_mut().zip(q) {
                *t += x;
            }
        }
        prop_assert_eq!(total, gr_hilbert(&OrdContext::ideal(&ring, &gens).unwrap(), bound));
    }
}

#[test]
fn lin_betti_matches_gr_and_generators() {
    for w in [[1u32, 2].as_slice(), &[1, 3], &[2, 3], &[1, 1, 2], &[2, 3, 4]] {
        for e in 1..=8 {
            let ring = RingSpec::with_weights(w).unwrap();
            let bound = nskoszul::koszul_check::default_bound(&ring, e);
            let rep = koszul_verdict(&ring, e, bound).unwrap();
            assert_eq!(rep.lin.verdict, Verdict::True);
            assert_eq!(rep.lin_betti(), rep.gr_betti, "{w:?} e={e}");
            assert_eq!(rep.resolution.module(0).rank(), rep.generators.len());
            assert_eq!(rep.gr_betti.get(0, 0), rep.generators.len());
        }
    }
}

#[test]
fn gr_betti_standard_truncation_matches_resolution() {
    let ring = RingSpec::with_weights(&[1, 1, 1]).unwrap();
    for e in 1..=5 {
        let f = resolve_module(&truncation_ideal(&ring, e).unwrap(), true).unwrap();
        let shifted: nskoszul::BettiTable =
            nskoszul::BettiTable::from_entries(f.betti_table().iter().map(|(i, j, r)| (i, j - e, r)));
        let ctx = OrdContext::ideal(&ring, &trunc_gens(&ring, e)).unwrap();
        assert_eq!(gr_betti(&ctx, 8).unwrap(), shifted);
        assert_eq!(construct_gr_betti(&[1, 1, 1], e).unwrap().0, shifted);
    }
}
