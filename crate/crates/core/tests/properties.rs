use levelstir::polynum::{pb2_explicit, pb2_gf, pb2_iterated_gf, pb2_multinomial};
use levelstir::series::{gen_two_sin_half, ps_div, ps_mul, PSeries};
use levelstir::stirling::{stirling2_explicit, stirling2_level};
use levelstir::Rat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_bernoulli_routes_agree(n in 0usize..=8, k in -3i64..=3) {
        let e = pb2_explicit(n, k);
        prop_assert_eq!(&pb2_multinomial(n, k).unwrap(), &e);
        let gf = pb2_gf(k, n).unwrap();
        prop_assert_eq!(gf.get(n), Some(&e));
        if k >= 1 {
            let it = pb2_iterated_gf(k, n).unwrap();
            prop_assert_eq!(it.get(n), Some(&e));
        }
    }

    #[test]
    fn stirling_explicit_matches_recurrence(s in 1u32..=4, n in 1usize..=12, k in 1usize..=12) {
        prop_assume!(k <= n);
        prop_assert_eq!(stirling2_explicit(s, n, k).unwrap(), stirling2_level(s, n, k).unwrap());
    }

    #[test]
    fn division_inverts_multiplication(
        coeffs in prop::collection::vec(-20i64..=20, 1..10),
        order in 4usize..=12,
    ) {
        let a = PSeries::from_fn(order, |i| Rat::from(*coeffs.get(i).unwrap_or(&0)));
        let b = gen_two_sin_half(order);
        let q = ps_div(&ps_mul(&a, &b), &b).unwrap();
        prop_assert!(q.agrees_with(&a));
    }
}
