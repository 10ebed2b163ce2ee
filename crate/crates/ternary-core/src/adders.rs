//! Builders for the ternary adder constructions: the Carry block, the
//! ripple-carry adder, the carry status circuits AdjC and AdjC0, the
//! merging circuit M, the P/C/P^-1 carry network, and the two carry
//! look-ahead adders.

use crate::circuit::{Circuit, RegisterMap};
use crate::gate::GateKind::*;
use crate::gate::Pair;
use crate::schedule::{cla_schedule, Loc, MergeJob};
use crate::trit::{binary_weight, floor_log2};

fn swap2_00_22() -> crate::gate::GateKind {
    Swap2(Pair(0, 0), Pair(2, 2))
}

/// The Carry block on wires (0 = carry-in, 1 = A, 2 = B).
///
/// For carry-in values 0 and 1 the B wire ends with the carry-out of
/// a + b + cin; the other two wires end with reversible scramble values
/// that the inverse block undoes. Two non-Clifford gates, depth 2.
pub fn build_carry() -> Circuit {
    let mut c = Circuit::new(3);
    c.push(swap2_00_22(), &[1, 2]);
    c.push(Sum, &[1, 2]);
    c.push(SumInv, &[0, 2]);
    c.push(Cs01(0), &[2, 0]);
    c.push(Swap, &[0, 1]);
    c.push(Swap, &[1, 2]);
    c
}

/// AdjC on wires (0 = A, 1 = B): B ends with the carry status indicator
/// `C[i,i+1]`. One non-Clifford gate.
pub fn build_adjc() -> Circuit {
    let mut c = Circuit::new(2);
    c.push(swap2_00_22(), &[0, 1]);
    c.push(Sum, &[0, 1]);
    c.push(S01, &[1]);
    c
}

/// AdjC0 on wires (0 = A, 1 = B, 2 = ancilla at 0): B ends with
/// `C[0,1]` in {0,1}. Two non-Clifford gates, depth 2.
pub fn build_adjc0() -> Circuit {
    let mut c = Circuit::new(3);
    c.push(swap2_00_22(), &[0, 1]);
    c.push(Sum, &[0, 1]);
    c.push(Cx(0), &[1, 2]);
    c.push(Swap, &[0, 2]);
    c.push(Swap, &[1, 0]);
    c
}

/// The merging circuit M on wires (0 = `C[i,k]`, 1 = `C[k,j]`, 2 = out at 0):
/// out ends with `C[i,k]` (.) `C[k,j]`; the inputs are preserved. One
/// non-Clifford gate.
pub fn build_merge() -> Circuit {
    let mut c = Circuit::new(3);
    c.push(Sum, &[1, 2]);
    c.push(X, &[0]);
    c.push(Csum(2), &[1, 0, 2]);
    c.push(XInv, &[0]);
    c
}

/// The classical merging formula itself: `C[i,j]` from `(C[i,k]`, `C[k,j]`).
pub fn merge_value(ik: u8, kj: u8) -> u8 {
    if kj == 2 {
        ik
    } else {
        kj
    }
}

fn append(host: &mut Circuit, block: &Circuit, wires: &[usize]) {
    let emb = block.embed(host.width, wires).expect("valid embedding");
    host.gates.extend(emb.gates);
}

/// Ancillas the width-m carry network needs: m - omega(m) - floor(log m).
pub fn network_ancillas(m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    m - binary_weight(m as u64) as usize - floor_log2(m as u64).unwrap() as usize
}

fn wire_of(loc: Loc, b: &[usize], z: &[usize], x: &[usize]) -> usize {
    match loc {
        Loc::B(i) => b[i],
        Loc::Z(j) => z[j],
        Loc::X(k) => x[k],
    }
}

fn append_merge_jobs(
    host: &mut Circuit,
    jobs: &[MergeJob],
    inverse: bool,
    b: &[usize],
    z: &[usize],
    x: &[usize],
) {
    let m = build_merge();
    let m_inv = m.inverse();
    for job in jobs {
        let wires =
            [wire_of(job.left, b, z, x), wire_of(job.right, b, z, x), wire_of(job.out, b, z, x)];
        append(host, if inverse { &m_inv } else { &m }, &wires);
    }
}

/// Append the P/C/P^-1 network for m positions onto the given wires.
/// Expects `B[i]` = `C[i,i+1]` and `Z[1]` = `C[0,1]` on entry; afterwards
/// `Z[j]` = `C[0,j]` for all j and the X ancillas are back at 0.
fn append_network(host: &mut Circuit, m: usize, b: &[usize], z: &[usize], x: &[usize]) {
    let plan = cla_schedule(m);
    for round in &plan.p_rounds {
        append_merge_jobs(host, round, false, b, z, x);
    }
    for round in &plan.c_rounds {
        append_merge_jobs(host, round, false, b, z, x);
    }
    for round in &plan.pinv_rounds {
        append_merge_jobs(host, round, true, b, z, x);
    }
}

/// Standalone carry network for criterion-level resource checks: width
/// n B-wires + n Z-wires `(Z[1..=n]`) + the ancillas, all in one phase.
/// The caller preloads B with the adjacent indicators and `Z[1]` with
/// `C[0,1]`.
pub fn build_carry_network(n: usize) -> Circuit {
    assert!(n >= 1);
    let anc = network_ancillas(n);
    let width = 2 * n + anc;
    let b: Vec<usize> = (0..n).collect();
    // Loc::Z(0) occurs in no schedule; the sentinel keeps indexing
    // uniform and would fail embedding loudly if that ever changed
    let mut z = vec![usize::MAX; n + 1];
    for (j, slot) in z.iter_mut().enumerate().skip(1) {
        *slot = n + (j - 1);
    }
    let x: Vec<usize> = (2 * n..2 * n + anc).collect();
    let mut c = Circuit::new(width);
    append_network(&mut c, n, &b, &z, &x);
    c.seal_phases();
    c.registers = Some(RegisterMap {
        b: b.clone(),
        z: z[1..].to_vec(),
        x: x.clone(),
        ancillas: x,
        ..Default::default()
    });
    c
}

/// The carry-computing pass shared by the look-ahead builders (steps
/// 1-3 of the out-of-place procedure): adjacent indicators, network,
/// un-compute of the indicator layer. Afterwards `Z[j]` = c_j for
/// j = 1..=m and everything else is restored. Appends three phases.
pub(crate) fn append_carry_pass(
    host: &mut Circuit,
    m: usize,
    a: &[usize],
    b: &[usize],
    z: &[usize],
    x: &[usize],
) {
    if m == 0 {
        return;
    }
    let adjc = build_adjc();
    let adjc0 = build_adjc0();

    host.mark_phase();
    append(host, &adjc0, &[a[0], b[0], z[0]]);
    for i in 1..m {
        append(host, &adjc, &[a[i], b[i]]);
    }
    host.push(Sum, &[b[0], z[1]]);

    host.mark_phase();
    append_network(host, m, b, z, x);

    host.mark_phase();
    for i in (1..m).rev() {
        append(host, &adjc.inverse(), &[a[i], b[i]]);
    }
    append(host, &adjc0.inverse(), &[a[0], b[0], z[0]]);
}

/// The modified ripple-carry adder on 2n+2 wires.
///
/// Roles: CIN (wire 0, admissible inputs 0 and 1), `A[i]`, `B[i]` interleaved,
/// OVF on top. Afterwards B holds the n low trits of a + b + cin, OVF the
/// high trit; A and CIN are restored.
pub fn build_ripple_adder(n: usize) -> Circuit {
    assert!(n >= 1, "adder width must be at least 1");
    let width = 2 * n + 2;
    let cin = 0usize;
    let a: Vec<usize> = (0..n).map(|i| 1 + 2 * i).collect();
    let b: Vec<usize> = (0..n).map(|i| 2 + 2 * i).collect();
    let ovf = 2 * n + 1;
    let carry = build_carry();
    let carry_inv = carry.inverse();
    let cin_of = |i: usize| if i == 0 { cin } else { b[i - 1] };

    let mut c = Circuit::new(width);
    for i in 0..n {
        c.mark_phase();
        append(&mut c, &carry, &[cin_of(i), a[i], b[i]]);
    }
    c.push(Sum, &[b[n - 1], ovf]);
    for i in (0..n).rev() {
        c.mark_phase();
        append(&mut c, &carry_inv, &[cin_of(i), a[i], b[i]]);
        c.push(Sum, &[a[i], b[i]]);
        // the i = 0 instance injects the exposed carry-in; a pinned
        // zero carry would not need this gate
        c.push(Sum, &[cin_of(i), b[i]]);
    }
    c.seal_phases();
    c.registers = Some(RegisterMap {
        a,
        b,
        cin: Some(cin),
        ovf: Some(ovf),
        ancillas: vec![cin],
        ..Default::default()
    });
    c
}

/// Out-of-place carry look-ahead adder: A and B are restored and
/// `Z[0..=n]` receives the sum a + b.
pub fn build_cla_out_of_place(n: usize) -> Circuit {
    assert!(n >= 1, "adder width must be at least 1");
    let anc = network_ancillas(n);
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    let z: Vec<usize> = (2 * n..=3 * n).collect();
    let x: Vec<usize> = (3 * n + 1..3 * n + 1 + anc).collect();
    let mut c = Circuit::new(3 * n + 1 + anc);

    append_carry_pass(&mut c, n, &a, &b, &z, &x);
    c.mark_phase();
    for i in 0..n {
        c.push(Sum, &[a[i], z[i]]);
        c.push(Sum, &[b[i], z[i]]);
    }
    c.seal_phases();
    c.registers = Some(RegisterMap { a, b, z, x: x.clone(), ancillas: x, ..Default::default() });
    c
}

/// X-ancilla pool an in-place adder needs: the forward pass runs at width
/// n, the erasing pass at width n-1.
fn inplace_x_count(n: usize) -> usize {
    network_ancillas(n).max(if n >= 2 { network_ancillas(n - 1) } else { 0 })
}

/// In-place carry look-ahead adder: B is replaced by the n low sum trits,
/// `Z[n]` receives the high trit, and A, Z[0..n) and the X pool are
/// restored to their inputs.
pub fn build_cla_in_place(n: usize) -> Circuit {
    assert!(n >= 1, "adder width must be at least 1");
    let xc = inplace_x_count(n);
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    let z: Vec<usize> = (2 * n..=3 * n).collect();
    let x: Vec<usize> = (3 * n + 1..3 * n + 1 + xc).collect();
    let mut c = Circuit::new(3 * n + 1 + xc);

    append_carry_pass(&mut c, n, &a, &b, &z, &x);

    c.mark_phase();
    for i in 0..n {
        c.push(Sum, &[a[i], b[i]]);
        c.push(Sum, &[z[i], b[i]]);
    }

    c.mark_phase();
    for i in 0..n - 1 {
        c.push(S02, &[b[i]]);
    }

    // erase the carries: inverse of the width-(n-1) carry pass on (a, s')
    if n >= 2 {
        let mut pass2 = Circuit::new(c.width);
        append_carry_pass(&mut pass2, n - 1, &a[..n - 1], &b[..n - 1], &z[..n], &x);
        c = c.compose(&pass2.inverse()).expect("same width");
    }

    c.mark_phase();
    for i in 0..n - 1 {
        c.push(S02, &[b[i]]);
    }

    let mut scratch = z[..n].to_vec();
    scratch.extend(&x);
    c.seal_phases();
    c.registers = Some(RegisterMap {
        a,
        b,
        x: scratch.clone(),
        ovf: Some(z[n]),
        ancillas: scratch,
        ..Default::default()
    });
    c
}
