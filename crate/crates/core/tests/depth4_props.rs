use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use sps_core::depth4::{Block, Term};
use sps_core::sps::EvalMode;
use sps_core::{Atom, Caps, Depth4Formula};

fn atom(nx: usize, nz: usize) -> impl Strategy<Value = Atom> {
    prop_oneof![
        (1..=nx).prop_map(Atom::X),
        (1..=nz).prop_map(Atom::Z),
        (-5i64..=5).prop_map(|c| Atom::Const(BigInt::from(c))),
    ]
}

fn formula() -> impl Strategy<Value = Depth4Formula> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(nx, nz)| {
        let leaf = proptest::collection::vec(atom(nx, nz), 1..=3);
        let block = proptest::collection::vec(leaf, 1..=3);
        let term = proptest::collection::vec(block, 1..=3);
        proptest::collection::vec(term, 1..=3)
            .prop_map(move |terms: Vec<Term>| Depth4Formula::new(nx, nz, terms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn substitution_agrees_with_coupled_evaluation(f in formula()) {
        let caps = Caps::default();
        let e = f.substitute_powers(&caps).unwrap();
        for a in -5i64..5 {
            let a = BigInt::from(a);
            let (xs, zs) = f.coupled_point(&a, &caps).unwrap();
            let direct = f.eval(&xs, &zs, &caps).unwrap();
            prop_assert_eq!(&e.eval_integer(&a, &caps).unwrap(), &direct);
            prop_assert_eq!(&f.to_circuit().eval(&[xs, zs].concat()).unwrap(), &direct);
            prop_assert_eq!(e.eval(&a, EvalMode::Integer, &caps).unwrap(), sps_core::sps::Value::Integer(direct));
        }
    }

    #[test]
    fn structure_carries_over(f in formula()) {
        let caps = Caps::default();
        let e = f.substitute_powers(&caps).unwrap();
        prop_assert_eq!(e.k(), f.terms().len());
        let distinct: std::collections::HashSet<&Block> = f.terms().iter().flatten().collect();
        prop_assert_eq!(e.factors().len(), distinct.len());
        // merging like monomials and dropping zero constants only shrink s
        prop_assert!(e.measure().s <= f.leaf_count());
        // each x_j contributes 2^(j−1) to the degree, bounded by the formal degree
        let max_weight = BigUint::from(1u32) << (f.x_arity() - 1);
        if let Some(d) = e.expand(&caps).unwrap().degree() {
            prop_assert!(*d <= BigUint::from(f.formal_degree()) * max_weight);
        }
    }
}

#[test]
fn leaf_count_equals_s_without_collisions() {
    // distinct x-exponent sums per block, no zero constants
    let leaf = |v: Vec<Atom>| v;
    let terms = vec![
        vec![vec![leaf(vec![Atom::X(1)]), leaf(vec![Atom::X(2), Atom::Z(1)])]],
        vec![
            vec![leaf(vec![Atom::Const(BigInt::from(3))]), leaf(vec![Atom::X(1), Atom::X(2)])],
            vec![leaf(vec![Atom::Z(2)]), leaf(vec![Atom::X(3)])],
        ],
    ];
    let f = Depth4Formula::new(3, 2, terms).unwrap();
    let e = f.substitute_powers(&Caps::default()).unwrap();
    assert_eq!(e.measure().s, f.leaf_count());
    assert_eq!(e.factors().len(), 3);
}

#[test]
fn shared_blocks_use_one_factor() {
    let b: Block = vec![vec![Atom::X(1)], vec![Atom::Const(BigInt::from(1))]];
    let f = Depth4Formula::new(1, 1, vec![vec![b.clone(), b.clone()], vec![b]]).unwrap();
    let e = f.substitute_powers(&Caps::default()).unwrap();
    assert_eq!(e.factors().len(), 1);
    assert_eq!(e.products(), &[vec![0, 0], vec![0]]);
}
