//! Property tests for the combinatorial bookkeeping that both rho routes
//! share: multiset splitting, multiplicity counts and the tensor convention.

use exact_algebra::GaussianRational;
use gauss_core::multiset::{multisets, splits, sub_multisets, Multiset};
use gauss_core::SymTensor;
use num_traits::Zero;
use proptest::prelude::*;

fn multiset_strategy(r: usize, k: usize) -> impl Strategy<Value = Multiset> {
    prop::collection::vec(0..r, k).prop_map(Multiset::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn splits_partition_and_count(m in multiset_strategy(4, 5), b in 0usize..=5) {
        // every split reassembles to the original and splits are distinct
        let all = splits(&m, b);
        for (a, t) in &all {
            prop_assert_eq!(a.union(t), m.clone());
        }
        for i in 0..all.len() {
            for j in 0..i {
                prop_assert!(all[i] != all[j], "duplicate split");
            }
        }
        // tuple counting: cutting a tuple with multiset M after position
        // k - b sends each of its orderings(M) arrangements to exactly one
        // (S, T) pair, so the products over distinct splits resum to
        // orderings(M). This is what makes the split weights of the rho
        // bookkeeping total correctly.
        let rhs: u128 = all
            .iter()
            .map(|(a, t)| a.orderings() * t.orderings())
            .sum();
        prop_assert_eq!(m.orderings(), rhs);

    }

    #[test]
    fn sub_multisets_are_contained_and_distinct(m in multiset_strategy(3, 6), k in 0usize..=6) {
        let subs = sub_multisets(&m, k);
        for s in &subs {
            prop_assert!(m.contains(s));
            prop_assert_eq!(s.len(), k);
        }
        for i in 0..subs.len() {
            for j in 0..i {
                prop_assert!(subs[i] != subs[j]);
            }
        }
    }

    #[test]
    fn multinomial_weights_sum_to_power(r in 1usize..5, m in 1usize..4) {
        // sum over multisets I of size m of m!/prod(I_j!) = r^m
        let total: u128 = multisets(r, m).iter().map(Multiset::orderings).sum();
        prop_assert_eq!(total, (r as u128).pow(m as u32));
    }

    #[test]
    fn tuple_coefficients_resum_to_monomials(coeffs in prop::collection::vec(-5i64..=5, 6)) {
        // the documented Sym^2-in-tensor-square convention: summing a_J over
        // all orderings of a multiset recovers the monomial coefficient
        let tensor = SymTensor::new(
            2,
            3,
            coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect(),
        );
        for m in multisets(3, 2) {
            let e = m.elems();
            let mut acc = GaussianRational::zero();
            let tuples: Vec<[usize; 2]> = if e[0] == e[1] {
                vec![[e[0], e[1]]]
            } else {
                vec![[e[0], e[1]], [e[1], e[0]]]
            };
            for t in tuples {
                acc = &acc + &tensor.tuple_coeff(&t);
            }
            prop_assert_eq!(acc, tensor.coeff(&m));
        }

    }
}
