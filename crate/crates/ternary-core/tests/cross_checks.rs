//! Cross-simulator integration checks: the permutation simulator, the
//! dense cyclotomic simulator, and the sparse basis-state simulator must
//! agree on every lowering of the builders' outputs.

use ternary_core::adders::build_ripple_adder;
use ternary_core::arith::{build_ripple_mod_adder, build_subtractor, Method};
use ternary_core::circuit::{pack_state, unpack_state, Circuit};
use ternary_core::cyclo::{circuit_matrix, simulate_basis_state, Cyclo};
use ternary_core::gate::GateKind;
use ternary_core::lower::{basis_check, lower_to_cx, Basis};
use ternary_core::permsim::{apply_classical, permutation_of};
use ternary_core::superm::lower_to_superm;

#[test]
fn lowered_ripple_adder_preserves_permutation() {
    for n in [1usize, 2] {
        let c = build_ripple_adder(n);
        let low = lower_to_cx(&c).unwrap();
        basis_check(&low, Basis::CliffordCx).unwrap();
        assert_eq!(permutation_of(&low).unwrap(), permutation_of(&c).unwrap(), "n={n}");
    }
}

#[test]
fn lowered_subtractor_preserves_permutation() {
    let c = build_subtractor(2, Method::Cla, true);
    let low = lower_to_cx(&c).unwrap();
    assert_eq!(permutation_of(&low).unwrap(), permutation_of(&c).unwrap());
}

#[test]
fn superm_lowering_preserves_full_adder_permutation() {
    // the two-level pipeline: reflections -> Clifford+CX ->
    // Clifford+P9, cross-checked against the classical permutation on
    // every one of the 3^6 basis states of the n=2 ripple adder
    let c = build_ripple_adder(2);
    let perm = permutation_of(&c).unwrap();
    let cx = lower_to_cx(&c).unwrap();
    let superm = lower_to_superm(&cx).unwrap();
    basis_check(&superm, Basis::Superm).unwrap();

    let states = 3usize.pow(c.width as u32);
    let mut common_phase: Option<Cyclo> = None;
    for x in 0..states {
        let digits = unpack_state(x, c.width);
        let state = simulate_basis_state(&superm, &digits);
        assert_eq!(state.len(), 1, "state {x} is not a single basis term");
        let (&y, amp) = state.iter().next().unwrap();
        assert_eq!(y, perm.mapping[x], "image of state {x}");
        match &common_phase {
            None => common_phase = Some(amp.clone()),
            Some(p) => assert_eq!(amp, p, "phase differs at state {x}"),
        }
    }
}

#[test]
fn superm_lowering_is_exact_on_small_widths() {
    // dense check: a CX embedded in a 2-wire circuit and a Horner in a
    // 3-wire circuit, lowered and compared as matrices up to global phase
    for (kind, width) in [(GateKind::Cx(0), 2usize), (GateKind::Horner, 3)] {
        let mut c = Circuit::new(width);
        c.push(kind, &(0..width).collect::<Vec<_>>());
        let low = lower_to_superm(&c).unwrap();
        let (ok, _) = ternary_core::cyclo::equal_up_to_global_phase(
            &circuit_matrix(&c).unwrap(),
            &circuit_matrix(&low).unwrap(),
        );
        assert!(ok, "{kind:?}");
    }
}

#[test]
fn sampled_adders_at_wide_widths() {
    use ternary_core::permsim::{check_against_oracle, CheckMode, OracleKind};
    for n in [6usize, 8, 10, 12] {
        for (c, kind) in [
            (build_ripple_adder(n), OracleKind::Add),
            (ternary_core::adders::build_cla_out_of_place(n), OracleKind::Add),
            (ternary_core::adders::build_cla_in_place(n), OracleKind::Add),
        ] {
            let report = check_against_oracle(
                &c,
                kind,
                n,
                CheckMode::Sampled { count: 2500, seed: 0xF00D + n as u64 },
            )
            .unwrap();
            assert!(report.passed(), "n={n}: {:?}", report.failure);
        }
    }
}

#[test]
fn inverse_circuit_matrices_are_daggers() {
    // every width <= 3 builder: the inverse circuit's matrix is the dagger
    let blocks = [
        ternary_core::adders::build_carry(),
        ternary_core::adders::build_adjc(),
        ternary_core::adders::build_adjc0(),
        ternary_core::adders::build_merge(),
    ];
    for c in blocks {
        let m = circuit_matrix(&c).unwrap();
        let mi = circuit_matrix(&c.inverse()).unwrap();
        assert_eq!(mi, m.dagger());
    }
}

#[test]
fn lowering_preserves_all_small_builders() {
    use ternary_core::arith as x;
    let mut targets: Vec<Circuit> = vec![
        ternary_core::adders::build_carry(),
        ternary_core::adders::build_adjc(),
        ternary_core::adders::build_adjc0(),
        ternary_core::adders::build_merge(),
    ];
    for n in 1..=2usize {
        targets.push(ternary_core::adders::build_cla_out_of_place(n));
        targets.push(x::build_ripple_mod_adder(n));
        targets.push(x::build_ripple_comparator(n));
        targets.push(x::build_cla_comparator(n));
    }
    targets.push(build_ripple_adder(3)); // width 8: the exhaustive bound
    for (i, c) in targets.iter().enumerate() {
        let low = lower_to_cx(c).unwrap();
        assert_eq!(
            permutation_of(&low).unwrap(),
            permutation_of(c).unwrap(),
            "target {i} (width {})",
            c.width
        );
    }
    // past the exhaustive bound: seeded spot checks on the n=5 ripple adder
    let wide = build_ripple_adder(5);
    let low = lower_to_cx(&wide).unwrap();
    let mut rng = 0x51DE_u64;
    for _ in 0..2000 {
        let idx = ternary_core::permsim::splitmix64(&mut rng) % 3u64.pow(wide.width as u32);
        let input = unpack_state(idx as usize, wide.width);
        assert_eq!(apply_classical(&low, &input).unwrap(), apply_classical(&wide, &input).unwrap());
    }
}

#[test]
fn mod_adder_composition_identity() {
    // (a + b) - b returns a: the adder's sum feeds the subtractor's
    // minuend register
    let n = 2;
    let add = build_ripple_mod_adder(n);
    let sub = build_subtractor(n, Method::Ripple, false);
    let ar = add.registers.clone().unwrap();
    let sr = sub.registers.clone().unwrap();
    for a in 0..9u64 {
        for b in 0..9u64 {
            let at = ternary_core::trit::to_trits(a, n).unwrap();
            let bt = ternary_core::trit::to_trits(b, n).unwrap();
            let mut input = vec![0u8; add.width];
            for i in 0..n {
                input[ar.a[i]] = at.trits[i];
                input[ar.b[i]] = bt.trits[i];
            }
            let mid = apply_classical(&add, &input).unwrap();
            let mut second = vec![0u8; sub.width];
            for i in 0..n {
                second[sr.a[i]] = mid[ar.b[i]]; // minuend = a + b
                second[sr.b[i]] = bt.trits[i]; // subtrahend = b
            }
            let out = apply_classical(&sub, &second).unwrap();
            let got: Vec<u8> = sr.b.iter().map(|&w| out[w]).collect();
            assert_eq!(pack_state(&got) as u64, a, "a={a} b={b}");
        }
    }
}
