//! Property tests over randomly generated classical circuits.

use proptest::prelude::*;
use ternary_core::circuit::Circuit;
use ternary_core::gate::{GateKind, Pair};
use ternary_core::permsim::permutation_of;

fn arb_classical_gate(width: usize) -> impl Strategy<Value = (GateKind, Vec<usize>)> {
    let wire = 0..width;
    let distinct2 = (0..width, 0..width - 1).prop_map(move |(a, b)| {
        let second = if b >= a { b + 1 } else { b };
        vec![a, second]
    });
    let distinct3 = (0..width, 0..width - 1, 0..width - 2).prop_map(move |(a, b, c)| {
        let second = if b >= a { b + 1 } else { b };
        let mut third = c;
        for &used in &[a.min(second), a.max(second)] {
            if third >= used {
                third += 1;
            }
        }
        vec![a, second, third]
    });
    prop_oneof![
        (
            prop_oneof![
                Just(GateKind::X),
                Just(GateKind::XInv),
                Just(GateKind::S01),
                Just(GateKind::S02),
                Just(GateKind::S12),
            ],
            wire.clone()
        )
            .prop_map(|(k, w)| (k, vec![w])),
        (
            prop_oneof![
                Just(GateKind::Sum),
                Just(GateKind::SumInv),
                Just(GateKind::Swap),
                Just(GateKind::Cx(0)),
                Just(GateKind::Cx(1)),
                Just(GateKind::Cx(2)),
                Just(GateKind::CxInv(2)),
                Just(GateKind::Cpx),
                Just(GateKind::CpxInv),
                Just(GateKind::Cs01(0)),
                Just(GateKind::Swap2(Pair(0, 0), Pair(2, 2))),
                Just(GateKind::Swap2(Pair(0, 1), Pair(1, 0))),
            ],
            distinct2
        )
            .prop_map(|(k, w)| (k, w)),
        (
            prop_oneof![
                Just(GateKind::Horner),
                Just(GateKind::HornerInv),
                Just(GateKind::Csum(2)),
                Just(GateKind::CsumInv(0)),
            ],
            distinct3
        )
            .prop_map(|(k, w)| (k, w)),
    ]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (3usize..6)
        .prop_flat_map(|width| {
            (Just(width), prop::collection::vec(arb_classical_gate(width), 0..25))
        })
        .prop_map(|(width, gates)| {
            let mut c = Circuit::new(width);
            for (i, (kind, wires)) in gates.into_iter().enumerate() {
                if i % 7 == 3 {
                    c.mark_phase();
                }
                c.push(kind, &wires);
            }
            c
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_composes_to_identity(c in arb_circuit()) {
        let round = c.compose(&c.inverse()).unwrap();
        prop_assert!(permutation_of(&round).unwrap().is_identity());
    }

    #[test]
    fn double_inverse_is_structural_identity(c in arb_circuit()) {
        prop_assert_eq!(c.inverse().inverse(), c);
    }

    #[test]
    fn composition_matches_permutation_product(c1 in arb_circuit(), c2 in arb_circuit()) {
        prop_assume!(c1.width == c2.width);
        let composed = permutation_of(&c1.compose(&c2).unwrap()).unwrap();
        let product =
            permutation_of(&c2).unwrap().after(&permutation_of(&c1).unwrap());
        prop_assert_eq!(composed, product);
    }

    #[test]
    fn depth_of_composition_is_subadditive(c1 in arb_circuit(), c2 in arb_circuit()) {
        prop_assume!(c1.width == c2.width);
        let d1 = c1.resource_report().unwrap();
        let d2 = c2.resource_report().unwrap();
        let d = c1.compose(&c2).unwrap().resource_report().unwrap();
        prop_assert_eq!(d.non_clifford_count, d1.non_clifford_count + d2.non_clifford_count);
        prop_assert!(d.non_clifford_depth <= d1.non_clifford_depth + d2.non_clifford_depth);
    }

    #[test]
    fn lowering_is_semantics_preserving(c in arb_circuit()) {
        let low = ternary_core::lower::lower_to_cx(&c).unwrap();
        ternary_core::lower::basis_check(&low, ternary_core::lower::Basis::CliffordCx).unwrap();
        prop_assert_eq!(permutation_of(&low).unwrap(), permutation_of(&c).unwrap());
    }
}
