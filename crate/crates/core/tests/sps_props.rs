mod common;

use common::expr;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use sps_core::sps::EvalMode;
use sps_core::{Caps, Prime};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_agrees_with_direct_evaluation(e in expr(3, 3, 4, 20, 20)) {
        let caps = Caps::default();
        let x = e.expand(&caps).unwrap();
        for a in -10i64..10 {
            let a = BigInt::from(a);
            prop_assert_eq!(x.eval_integer(&a, caps.max_eval_bits).unwrap(), e.eval_integer(&a, &caps).unwrap());
        }
    }

    #[test]
    fn expansion_respects_degree_and_monomial_bounds(e in expr(3, 4, 4, 30, 9)) {
        let caps = Caps::default();
        let x = e.expand(&caps).unwrap();
        let params = e.measure();
        if let Some(d) = x.degree() {
            prop_assert!(*d <= params.degree_bound());
        }
        prop_assert!(BigUint::from(x.len()) <= params.monomial_bound());
        prop_assert!(BigUint::from(x.len()) <= e.predicted_monomials());
    }

    #[test]
    fn modular_evaluation_matches_integer(e in expr(3, 3, 4, 60, 1000), a in -500i64..500, q in prop::sample::select(vec![101u64, 7919, 1_000_000_007, (1 << 61) - 1])) {
        let caps = Caps::default();
        let q = Prime::new(q).unwrap();
        let a = BigInt::from(a);
        let exact = e.eval_integer(&a, &caps).unwrap().mod_floor(&BigInt::from(q.get())).to_u64().unwrap();
        let modular = e.eval(&a, EvalMode::Modular(q), &caps).unwrap();
        prop_assert_eq!(modular, sps_core::sps::Value::Residue(exact));
    }

    #[test]
    fn membership_is_monotone(e in expr(2, 3, 4, 40, 3000), s in 1usize..20, ee in 1u32..50, ds in 0usize..5, de in 0u32..10) {
        let (e1, e2) = (BigUint::from(ee), BigUint::from(ee + de));
        if e.is_member(s, &e1).member {
            prop_assert!(e.is_member(s + ds, &e2).member);
        }
        let params = e.measure();
        let tight = BigUint::from(params.coeff_max_bits).max(params.deg_max.clone());
        prop_assert!(e.is_member(params.s.max(params.digit_max), &tight).member);
    }
}
