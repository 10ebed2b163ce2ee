//! Rewrites of the non-Clifford building blocks into Clifford gates plus
//! the controlled-increment CX, making the whole arithmetic suite exactly
//! representable over Clifford+CX.

use crate::circuit::Circuit;
use crate::gate::GateKind::{self, *};
use crate::gate::Pair;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerError {
    /// The kind has no template in the requested basis.
    Untemplated { kind: String, hint: &'static str },
}

impl fmt::Display for LowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerError::Untemplated { kind, hint } => {
                write!(f, "no template for {kind}: {hint}")
            }
        }
    }
}

impl std::error::Error for LowerError {}

/// Target gate sets for lowering and basis checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Clifford gates plus CX (any hard-control value).
    CliffordCx,
    /// Clifford gates plus P9 (the supermetaplectic set).
    Superm,
}

/// True when every gate of the circuit is Clifford or in the basis.
pub fn basis_check(c: &Circuit, basis: Basis) -> Result<(), LowerError> {
    for g in &c.gates {
        let ok = g.kind.is_clifford()
            || match basis {
                Basis::CliffordCx => matches!(g.kind, Cx(_) | CxInv(_)),
                Basis::Superm => matches!(g.kind, P9 | P9Inv),
            };
        if !ok {
            return Err(LowerError::Untemplated {
                kind: g.kind.token(),
                hint: "gate outside the target basis",
            });
        }
    }
    Ok(())
}

fn untemplated(kind: GateKind) -> LowerError {
    let hint = match kind {
        P9 | P9Inv | Cz2 | Cz2Inv | C2z(_) | C2zInv(_) | H | HInv | Q | QInv | Z | ZInv | Cz
        | CzInv => "not a classical gate; use the supermetaplectic lowering",
        _ => "only the S(00,22) and S(01,10) two-way swaps have CX templates",
    };
    LowerError::Untemplated { kind: kind.token(), hint }
}

/// Conjugation that carries hard-control value `value` to 0.
fn shift_control(c: &mut Circuit, wire: usize, value: u8) {
    match value {
        0 => {}
        1 => c.push(XInv, &[wire]),
        2 => c.push(X, &[wire]),
        _ => unreachable!("validated control"),
    }
}

fn unshift_control(c: &mut Circuit, wire: usize, value: u8) {
    match value {
        0 => {}
        1 => c.push(X, &[wire]),
        2 => c.push(XInv, &[wire]),
        _ => unreachable!("validated control"),
    }
}

fn push_cpx(c: &mut Circuit, ctrl: usize, tgt: usize) {
    // C'(X) = (I (x) X) CX(0)^-1: the target picks up +i^2
    c.push(CxInv(0), &[ctrl, tgt]);
    c.push(X, &[tgt]);
}

fn push_cpx_inv(c: &mut Circuit, ctrl: usize, tgt: usize) {
    c.push(XInv, &[tgt]);
    c.push(Cx(0), &[ctrl, tgt]);
}

fn horner_template() -> Circuit {
    // k -> k-(i+j)^2 -> k-i^2-j^2+ij -> k-j^2+ij -> k+ij, three CX
    let mut c = Circuit::new(3);
    c.push(Sum, &[0, 1]);
    push_cpx_inv(&mut c, 1, 2);
    c.push(SumInv, &[0, 1]);
    push_cpx(&mut c, 0, 2);
    push_cpx(&mut c, 1, 2);
    c
}

fn csum0_template() -> Circuit {
    // k -> k+(i^2+j)^2 -> ... -> k+(1-i^2)j, five CX plus a SUM
    let mut c = Circuit::new(3);
    push_cpx(&mut c, 0, 1);
    push_cpx(&mut c, 1, 2);
    push_cpx_inv(&mut c, 0, 1);
    push_cpx_inv(&mut c, 0, 2);
    push_cpx_inv(&mut c, 1, 2);
    c.push(Sum, &[1, 2]);
    c
}

/// The two-qutrit swap of |01> and |10>: five alternating CX(2) and a SWAP.
fn s0110_template() -> Circuit {
    let mut c = Circuit::new(2);
    c.push(Cx(2), &[0, 1]);
    c.push(Cx(2), &[1, 0]);
    c.push(Cx(2), &[0, 1]);
    c.push(Cx(2), &[1, 0]);
    c.push(Cx(2), &[0, 1]);
    c.push(Swap, &[0, 1]);
    c
}

fn swap2_0022_template() -> Circuit {
    // S(00,22) = SUM^-1 (X^-1 (x) I) S(01,10) (X (x) I) SUM
    let mut c = Circuit::new(2);
    c.push(Sum, &[0, 1]);
    c.push(X, &[0]);
    c.gates.extend(s0110_template().gates);
    c.push(XInv, &[0]);
    c.push(SumInv, &[0, 1]);
    c
}

fn cs01_0_template() -> Circuit {
    // Clifford dressing carries {|00>,|22>} to {|00>,|01>}, turning the
    // two-way swap into the hard-controlled S01
    let mut c = Circuit::new(2);
    c.push(SumInv, &[1, 0]);
    c.push(S12, &[1]);
    c.gates.extend(swap2_0022_template().gates);
    c.push(S12, &[1]);
    c.push(Sum, &[1, 0]);
    c
}

/// The replacement circuit of one templated kind over Clifford+CX, on the
/// kind's own wires (no extra wires needed).
pub fn template(kind: GateKind) -> Result<Circuit, LowerError> {
    let circ = match kind {
        Cpx => {
            let mut c = Circuit::new(2);
            push_cpx(&mut c, 0, 1);
            c
        }
        CpxInv => {
            let mut c = Circuit::new(2);
            push_cpx_inv(&mut c, 0, 1);
            c
        }
        Horner => horner_template(),
        HornerInv => horner_template().inverse(),
        Csum(v) => {
            let mut c = Circuit::new(3);
            shift_control(&mut c, 0, v);
            c.gates.extend(csum0_template().gates);
            unshift_control(&mut c, 0, v);
            c
        }
        CsumInv(v) => template(Csum(v))?.inverse(),
        Swap2(Pair(0, 0), Pair(2, 2)) => swap2_0022_template(),
        Swap2(Pair(0, 1), Pair(1, 0)) => s0110_template(),
        Cs01(v) => {
            let mut c = Circuit::new(2);
            shift_control(&mut c, 0, v);
            c.gates.extend(cs01_0_template().gates);
            unshift_control(&mut c, 0, v);
            c
        }
        Cx(v) => {
            let mut c = Circuit::new(2);
            shift_control(&mut c, 0, v);
            c.push(Cx(0), &[0, 1]);
            unshift_control(&mut c, 0, v);
            c
        }
        CxInv(v) => template(Cx(v))?.inverse(),
        _ => return Err(untemplated(kind)),
    };
    Ok(circ)
}

/// The construction of C'(X) from two Horner gates and a borrowed third
/// qutrit, which may hold any value (it is returned unchanged). Wires:
/// 0 = control, 1 = target, 2 = borrowed.
pub fn cpx_from_horner_template() -> Circuit {
    let mut c = Circuit::new(3);
    c.push(Sum, &[0, 2]);
    c.push(Horner, &[0, 2, 1]);
    c.push(SumInv, &[0, 2]);
    c.push(HornerInv, &[0, 2, 1]);
    c
}

/// Replace every non-Clifford, non-CX gate by its template. The phase
/// structure of the input is preserved gate-for-gate.
pub fn lower_to_cx(c: &Circuit) -> Result<Circuit, LowerError> {
    let mut out = Circuit::new(c.width);
    out.registers = c.registers.clone();
    let marks: std::collections::BTreeSet<usize> = c.phase_marks.iter().copied().collect();
    for (i, g) in c.gates.iter().enumerate() {
        if marks.contains(&i) {
            out.mark_phase();
        }
        if g.kind.is_clifford() || matches!(g.kind, Cx(_) | CxInv(_)) {
            out.gates.push(g.clone());
        } else {
            let t = template(g.kind)?;
            let emb = t.embed(c.width, &g.wires).expect("template fits the gate wires");
            out.gates.extend(emb.gates);
        }
    }
    out.seal_phases();
    Ok(out)
}

/// Exhaustive permutation equality between a gate and its template.
pub fn verify_template(kind: GateKind) -> Result<bool, LowerError> {
    let t = template(kind)?;
    let mut single = Circuit::new(kind.arity());
    single.push(kind, &(0..kind.arity()).collect::<Vec<_>>());
    let a = crate::permsim::permutation_of(&t).expect("classical template");
    let b = crate::permsim::permutation_of(&single).expect("classical gate");
    Ok(a == b)
}
