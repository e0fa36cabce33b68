use std::collections::HashSet;

use fusionchar_core::characters::{char_fermionic, char_recursive, exact_sequence_char_identity};
use fusionchar_core::kostka::{restricted_kostka, unrestricted_kostka};
use fusionchar_core::partitions::binomial;
use fusionchar_core::polyring::q_binomial;
use fusionchar_core::{build_basis, Factor, FusionSpec, MPoly, Monomial, Partition};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = FusionSpec> {
    prop::collection::vec((2u32..=4, 1u32..=3), 0..=3).prop_map(|fs| {
        let factors: Vec<Factor> = fs.into_iter().map(|(n, k)| Factor { n, k }).collect();
        let rank = factors.iter().map(|f| f.n as usize).max().unwrap_or(2);
        FusionSpec::new(&factors, rank).unwrap()
    })
}

fn arb_partition(max_rows: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_rows).prop_map(|mut rows| {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(rows).unwrap()
    })
}

fn census(spec: &FusionSpec) -> MPoly {
    let labels = spec.rank() - 1;
    let mut out = MPoly::zero(labels);
    for b in build_basis(spec).unwrap() {
        let z = b.weight(labels).iter().map(|&x| x as i32).collect();
        out += &MPoly::term(1, Monomial::new(b.degree(), z));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fermionic_counts_the_dimension(spec in arb_spec()) {
        let chi = char_fermionic(spec.chain());
        prop_assert!(chi.is_nonnegative());
        prop_assert_eq!(chi.eval_at_one(), BigInt::from(spec.dimension()));
    }

    #[test]
    fn recursion_matches_fermionic(spec in arb_spec()) {
        prop_assert_eq!(char_recursive(spec.chain()).unwrap(), char_fermionic(spec.chain()));
        prop_assert!(exact_sequence_char_identity(spec.chain()).unwrap().passed());
    }

    #[test]
    fn basis_census_is_the_character(spec in arb_spec()) {
        let basis = build_basis(&spec).unwrap();
        let distinct: HashSet<_> = basis.iter().collect();
        prop_assert_eq!(distinct.len(), basis.len());
        prop_assert_eq!(basis.len() as u128, spec.dimension());
        prop_assert_eq!(census(&spec), char_fermionic(spec.chain()));
    }

    #[test]
    fn json_round_trip(spec in arb_spec()) {
        let chi = char_fermionic(spec.chain());
        prop_assert_eq!(MPoly::from_json(&chi.to_json()).unwrap(), chi);
    }

    #[test]
    fn q_binomial_symmetry_and_value_at_one(m in 0i64..=12, n in 0i64..=12) {
        prop_assume!(n <= m);
        let b = q_binomial(m, n);
        prop_assert_eq!(&b, &q_binomial(m, m - n));
        prop_assert_eq!(b.eval_at_one(), BigInt::from(binomial(m as u64, n as u64)));
    }

    #[test]
    fn large_level_removes_the_restriction(mu in arb_partition(3, 3), l in 0u32..=6) {
        let k = mu.size().max(l).max(1);
        prop_assume!(l <= mu.size());
        prop_assert_eq!(restricted_kostka(k, l, &mu).unwrap(), unrestricted_kostka(l, &mu).unwrap());
    }

    #[test]
    fn rank_two_palindromic_at_one(rows in prop::collection::vec(1u32..=4, 0..=4)) {
        let factors: Vec<Factor> = rows.iter().map(|&k| Factor { n: 2, k }).collect();
        let spec = FusionSpec::new(&factors, 2).unwrap();
        let chi = char_fermionic(spec.chain());
        let total = spec.total_boxes() as i32;
        for m in 0..=total {
            prop_assert_eq!(
                chi.z_coefficient(&[m]).eval_at_one(),
                chi.z_coefficient(&[total - m]).eval_at_one()
            );
        }
    }
}
