//! Extensions built on the adders: addition modulo 3^n, subtraction via
//! trit-wise complementation, and the two comparators.

use crate::adders::{
    build_adjc, build_adjc0, build_carry, build_cla_out_of_place, build_merge, network_ancillas,
};
use crate::circuit::{Circuit, RegisterMap};
use crate::gate::GateKind::*;
use crate::trit::ceil_log2;

fn append(host: &mut Circuit, block: &Circuit, wires: &[usize]) {
    let emb = block.embed(host.width, wires).expect("valid embedding");
    host.gates.extend(emb.gates);
}

/// Which adder backs a subtractor or comparator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ripple,
    Cla,
}

/// Out-of-place vs in-place look-ahead procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    OutOfPlace,
    InPlace,
}

/// Ripple adder modulo 3^n: the high carry is never computed. B ends with
/// (a + b) mod 3^n; the carry wire is a true ancilla (fixed 0).
/// Resources: 2(n-1) Carry blocks, 2n-1 SUM gates, depth 4(n-1).
pub fn build_ripple_mod_adder(n: usize) -> Circuit {
    assert!(n >= 1, "adder width must be at least 1");
    let width = 2 * n + 1;
    let cin = 0usize;
    let a: Vec<usize> = (0..n).map(|i| 1 + 2 * i).collect();
    let b: Vec<usize> = (0..n).map(|i| 2 + 2 * i).collect();
    let carry = build_carry();
    let carry_inv = carry.inverse();
    let cin_of = |i: usize| if i == 0 { cin } else { b[i - 1] };

    let mut c = Circuit::new(width);
    for i in 0..n - 1 {
        c.mark_phase();
        append(&mut c, &carry, &[cin_of(i), a[i], b[i]]);
    }
    c.push(Sum, &[a[n - 1], b[n - 1]]);
    if n >= 2 {
        c.push(Sum, &[cin_of(n - 1), b[n - 1]]);
    }
    for i in (0..n - 1).rev() {
        c.mark_phase();
        append(&mut c, &carry_inv, &[cin_of(i), a[i], b[i]]);
        c.push(Sum, &[a[i], b[i]]);
        if i > 0 {
            c.push(Sum, &[cin_of(i), b[i]]);
        }
    }
    c.seal_phases();
    c.registers = Some(RegisterMap { a, b, ancillas: vec![cin], ..Default::default() });
    c
}

/// Carry look-ahead adder modulo 3^n: the carry pass is restricted to the
/// n-1 low trit positions, the modular sum still covers all n.
pub fn build_cla_mod_adder(n: usize, variant: Variant) -> Circuit {
    assert!(n >= 1, "adder width must be at least 1");
    let m = n - 1; // carry-pass width
    match variant {
        Variant::OutOfPlace => {
            let anc = network_ancillas(m);
            let a: Vec<usize> = (0..n).collect();
            let b: Vec<usize> = (n..2 * n).collect();
            let z: Vec<usize> = (2 * n..3 * n).collect();
            let x: Vec<usize> = (3 * n..3 * n + anc).collect();
            let mut c = Circuit::new(3 * n + anc);
            append_carry_pass_public(&mut c, m, &a[..m], &b[..m], &z, &x);
            c.mark_phase();
            for i in 0..n {
                c.push(Sum, &[a[i], z[i]]);
                c.push(Sum, &[b[i], z[i]]);
            }
            c.seal_phases();
            c.registers =
                Some(RegisterMap { a, b, z, x: x.clone(), ancillas: x, ..Default::default() });
            c
        }
        Variant::InPlace => {
            let anc = network_ancillas(m);
            let a: Vec<usize> = (0..n).collect();
            let b: Vec<usize> = (n..2 * n).collect();
            let z: Vec<usize> = (2 * n..3 * n).collect();
            let x: Vec<usize> = (3 * n..3 * n + anc).collect();
            let mut c = Circuit::new(3 * n + anc);

            append_carry_pass_public(&mut c, m, &a[..m], &b[..m], &z, &x);
            c.mark_phase();
            for i in 0..n {
                c.push(Sum, &[a[i], b[i]]);
                c.push(Sum, &[z[i], b[i]]);
            }
            c.mark_phase();
            for i in 0..m {
                c.push(S02, &[b[i]]);
            }
            if m >= 1 {
                let mut pass2 = Circuit::new(c.width);
                append_carry_pass_public(&mut pass2, m, &a[..m], &b[..m], &z, &x);
                c = c.compose(&pass2.inverse()).expect("same width");
            }
            c.mark_phase();
            for i in 0..m {
                c.push(S02, &[b[i]]);
            }

            let mut scratch = z.clone();
            scratch.extend(&x);
            c.seal_phases();
            c.registers = Some(RegisterMap {
                a,
                b,
                x: scratch.clone(),
                ancillas: scratch,
                ..Default::default()
            });
            c
        }
    }
}

// re-exported shim so arith builders can reuse the adders' carry pass
pub(crate) fn append_carry_pass_public(
    host: &mut Circuit,
    m: usize,
    a: &[usize],
    b: &[usize],
    z: &[usize],
    x: &[usize],
) {
    crate::adders::append_carry_pass(host, m, a, b, z, x);
}

/// Subtractor: complement a, add, complement the result, restore a.
/// The result register ends with (a - b) mod 3^n; with `borrow` the high
/// carry of a' + b is exposed (1 iff a < b). Non-Clifford resources are
/// exactly those of the underlying adder.
pub fn build_subtractor(n: usize, method: Method, borrow: bool) -> Circuit {
    assert!(n >= 1, "subtractor width must be at least 1");
    let base = match (method, borrow) {
        (Method::Ripple, false) => build_ripple_mod_adder(n),
        (Method::Ripple, true) => {
            let mut c = crate::adders::build_ripple_adder(n);
            // a subtractor has no carry-in; pin the wire to 0
            if let Some(r) = c.registers.as_mut() {
                r.cin = None;
            }
            c
        }
        (Method::Cla, false) => build_cla_mod_adder(n, Variant::OutOfPlace),
        (Method::Cla, true) => build_cla_out_of_place(n),
    };
    let regs = base.registers.clone().expect("adders carry registers");
    let result: Vec<usize> = if regs.z.len() >= n { regs.z[..n].to_vec() } else { regs.b.clone() };

    let mut c = Circuit::new(base.width);
    for i in 0..n {
        c.push(S02, &[regs.a[i]]);
    }
    c = c.compose(&base).expect("same width");
    c.mark_phase();
    for &w in &result {
        c.push(S02, &[w]);
    }
    for i in 0..n {
        c.push(S02, &[regs.a[i]]);
    }
    c.seal_phases();
    c.registers = Some(regs);
    c
}

/// Ripple comparator: R ends with 1 iff a < b; every other register is
/// restored. Exactly 1 ancilla, 2n Carry blocks, 1 SUM, 2n S02, depth 4n.
pub fn build_ripple_comparator(n: usize) -> Circuit {
    assert!(n >= 1, "comparator width must be at least 1");
    let width = 2 * n + 2;
    let cin = 0usize;
    let a: Vec<usize> = (0..n).map(|i| 1 + 2 * i).collect();
    let b: Vec<usize> = (0..n).map(|i| 2 + 2 * i).collect();
    let r = 2 * n + 1;
    let carry = build_carry();
    let cin_of = |i: usize| if i == 0 { cin } else { b[i - 1] };

    let mut c = Circuit::new(width);
    for &w in &a {
        c.push(S02, &[w]);
    }
    for i in 0..n {
        c.mark_phase();
        append(&mut c, &carry, &[cin_of(i), a[i], b[i]]);
    }
    c.push(Sum, &[b[n - 1], r]);
    for i in (0..n).rev() {
        c.mark_phase();
        append(&mut c, &carry.inverse(), &[cin_of(i), a[i], b[i]]);
    }
    for &w in &a {
        c.push(S02, &[w]);
    }
    c.seal_phases();
    c.registers = Some(RegisterMap { a, b, r: Some(r), ancillas: vec![cin], ..Default::default() });
    c
}

/// Carry look-ahead comparator: a and b are padded to 2^k trits
/// (k = ceil(log n)), only the P-process runs, and C[0, 2^k] is copied to
/// R. Indicators that involve only pad positions are compile-time
/// constants, preset by Clifford gates instead of merges.
pub fn build_cla_comparator(n: usize) -> Circuit {
    assert!(n >= 1, "comparator width must be at least 1");
    let k = ceil_log2(n as u64).unwrap() as usize;
    let full = 1usize << k;
    let afull: Vec<usize> = (0..full).collect();
    let bfull: Vec<usize> = (full..2 * full).collect();
    let z0 = 2 * full;
    let x: Vec<usize> = (2 * full + 1..2 * full + full).collect(); // 2^k - 1 slots
    let r = 3 * full;
    let width = 3 * full + 1;

    let adjc = build_adjc();
    let adjc0 = build_adjc0();
    let merge = build_merge();

    // complement layer
    let mut comp = Circuit::new(width);
    for &w in &afull {
        comp.push(S02, &[w]);
    }

    // adjacent-indicator layer; pad indicators are the constant 2
    let mut layer = Circuit::new(width);
    append(&mut layer, &adjc0, &[afull[0], bfull[0], z0]);
    for i in 1..n {
        append(&mut layer, &adjc, &[afull[i], bfull[i]]);
    }
    for i in n..full {
        layer.push(XInv, &[bfull[i]]);
    }

    // P-process over the full 2^k positions, everything stored in X;
    // merges with two known-constant inputs become presets
    let mut pproc = Circuit::new(width);
    let mut slot_of = std::collections::BTreeMap::new();
    let mut next = 0usize;
    let loc = |slot_of: &std::collections::BTreeMap<(usize, usize), usize>,
               t: usize,
               m: usize,
               bfull: &[usize],
               x: &[usize]| {
        if t == 0 {
            bfull[m]
        } else {
            x[slot_of[&(t, m)]]
        }
    };
    for t in 1..=k {
        for m in 0..(full >> t) {
            let slot = next;
            next += 1;
            slot_of.insert((t, m), slot);
            let lo = m << t;
            if lo >= n {
                // the whole block lies in the pads: C = 2 (.) 2 = 2
                pproc.push(XInv, &[x[slot]]);
            } else {
                let left = loc(&slot_of, t - 1, 2 * m, &bfull, &x);
                let right = loc(&slot_of, t - 1, 2 * m + 1, &bfull, &x);
                append(&mut pproc, &merge, &[left, right, x[slot]]);
            }
        }
    }

    let top = if k == 0 { bfull[0] } else { x[slot_of[&(k, 0)]] };

    let mut c = comp.clone();
    c = c.compose(&layer).expect("width");
    c = c.compose(&pproc).expect("width");
    c.push(Sum, &[top, r]);
    c = c.compose(&pproc.inverse()).expect("width");
    c = c.compose(&layer.inverse()).expect("width");
    c = c.compose(&comp).expect("width");

    let mut ancillas = afull[n..].to_vec();
    ancillas.extend(&bfull[n..]);
    ancillas.push(z0);
    ancillas.extend(&x);
    c.seal_phases();
    c.registers = Some(RegisterMap {
        a: afull[..n].to_vec(),
        b: bfull[..n].to_vec(),
        apad: afull[n..].to_vec(),
        bpad: bfull[n..].to_vec(),
        x: {
            let mut v = vec![z0];
            v.extend(&x);
            v
        },
        r: Some(r),
        ancillas,
        ..Default::default()
    });
    c
}

/// Executed merge count of the comparator's P-step: n + omega(2^k - n) - 1.
pub fn comparator_p_merges(n: usize) -> usize {
    let k = ceil_log2(n as u64).unwrap() as usize;
    let full = 1usize << k;
    let mut count = 0;
    for t in 1..=k {
        for m in 0..(full >> t) {
            if (m << t) < n {
                count += 1;
            }
        }
    }
    count
}
