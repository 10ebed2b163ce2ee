//! Circuits: ordered gate lists over a fixed qutrit count, the register
//! map that names their wires, and the non-Clifford resource report.

use crate::gate::GateKind;
use crate::trit::Trit;
use std::collections::BTreeMap;
use std::fmt;

/// One gate applied to specific wires (controls first, target last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    pub kind: GateKind,
    pub wires: Vec<usize>,
}

impl GateInstance {
    pub fn new(kind: GateKind, wires: Vec<usize>) -> Self {
        GateInstance { kind, wires }
    }
}

/// Named wire roles. All list roles are index-ordered `(A[0]` is the least
/// significant trit of a). Ancilla accounting is explicit: the
/// `ancillas` list holds exactly the wires the relevant construction
/// counts as ancillas, and every wire in it starts at 0. A CIN role marks
/// an exposed carry-in whose admissible inputs are {0,1}; constructions
/// that pin the carry wire to 0 list it only among the ancillas.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegisterMap {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub z: Vec<usize>,
    pub x: Vec<usize>,
    pub apad: Vec<usize>,
    pub bpad: Vec<usize>,
    pub cin: Option<usize>,
    pub ovf: Option<usize>,
    pub r: Option<usize>,
    pub ancillas: Vec<usize>,
}

impl RegisterMap {
    /// Every mapped wire, for validation.
    pub fn wires(&self) -> Vec<usize> {
        let mut v = Vec::new();
        v.extend(&self.a);
        v.extend(&self.b);
        v.extend(&self.z);
        v.extend(&self.x);
        v.extend(&self.apad);
        v.extend(&self.bpad);
        v.extend(self.cin);
        v.extend(self.ovf);
        v.extend(self.r);
        v
    }
}

/// A reversible/unitary circuit on `width` qutrits.
///
/// `phase_marks` records the builder's schedule boundaries: each mark is a
/// gate index at which a new time phase begins. The non-Clifford depth of
/// a circuit is the sum over phases of the dependency-layered depth inside
/// each phase; a circuit without marks is a single phase. Builders mark
/// their sequential steps so reported depths match the block schedules the
/// constructions are specified with.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<GateInstance>,
    pub phase_marks: Vec<usize>,
    pub registers: Option<RegisterMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitError {
    ArityMismatch { index: usize, kind: String, got: usize, want: usize },
    WireOutOfRange { index: usize, wire: usize, width: usize },
    DuplicateWire { index: usize, wire: usize },
    BadControl { index: usize, value: u8 },
    BadSwapLabels { index: usize },
    RegisterWireOutOfRange { wire: usize, width: usize },
    RegisterWireDuplicated { wire: usize },
    WidthMismatch { left: usize, right: usize },
    BadEmbedding { detail: String },
}

impl fmt::Display for CircuitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitError::ArityMismatch { index, kind, got, want } => {
                write!(f, "gate {index}: {kind} takes {want} wires, got {got}")
            }
            CircuitError::WireOutOfRange { index, wire, width } => {
                write!(f, "gate {index}: wire {wire} out of range for width {width}")
            }
            CircuitError::DuplicateWire { index, wire } => {
                write!(f, "gate {index}: wire {wire} repeated")
            }
            CircuitError::BadControl { index, value } => {
                write!(f, "gate {index}: control value {value} is not a trit")
            }
            CircuitError::BadSwapLabels { index } => {
                write!(f, "gate {index}: SWAP2 labels must be distinct two-trit states")
            }
            CircuitError::RegisterWireOutOfRange { wire, width } => {
                write!(f, "register map: wire {wire} out of range for width {width}")
            }
            CircuitError::RegisterWireDuplicated { wire } => {
                write!(f, "register map: wire {wire} assigned to two roles")
            }
            CircuitError::WidthMismatch { left, right } => {
                write!(f, "cannot compose circuits of widths {left} and {right}")
            }
            CircuitError::BadEmbedding { detail } => write!(f, "bad embedding: {detail}"),
        }
    }
}

impl std::error::Error for CircuitError {}

/// Non-Clifford resource accounting for a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceReport {
    pub width: usize,
    pub ancilla_count: usize,
    pub total_gates: usize,
    pub non_clifford_count: usize,
    pub non_clifford_depth: usize,
    pub counts_by_kind: BTreeMap<String, usize>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, gates: Vec::new(), phase_marks: Vec::new(), registers: None }
    }

    pub fn push(&mut self, kind: GateKind, wires: &[usize]) {
        self.gates.push(GateInstance::new(kind, wires.to_vec()));
    }

    /// Start a new scheduling phase at the current end of the gate list.
    pub fn mark_phase(&mut self) {
        let at = self.gates.len();
        if at > 0 && self.phase_marks.last() != Some(&at) {
            self.phase_marks.push(at);
        }
    }

    /// Drop marks that ended up past the final gate (phases that stayed
    /// empty); keeps structural equality aligned with serialization.
    pub fn seal_phases(&mut self) {
        let len = self.gates.len();
        self.phase_marks.retain(|&m| m > 0 && m < len);
        self.phase_marks.dedup();
    }

    /// Structural checks: arity, wire bounds, distinctness, parameters,
    /// and register-map consistency. Returns every diagnostic found.
    pub fn validate(&self) -> Result<(), Vec<CircuitError>> {
        let mut errs = Vec::new();
        for (index, g) in self.gates.iter().enumerate() {
            let want = g.kind.arity();
            if g.wires.len() != want {
                errs.push(CircuitError::ArityMismatch {
                    index,
                    kind: g.kind.token(),
                    got: g.wires.len(),
                    want,
                });
                continue;
            }
            for (i, &w) in g.wires.iter().enumerate() {
                if w >= self.width {
                    errs.push(CircuitError::WireOutOfRange { index, wire: w, width: self.width });
                }
                if g.wires[..i].contains(&w) {
                    errs.push(CircuitError::DuplicateWire { index, wire: w });
                }
            }
            match g.kind {
                GateKind::Cx(c)
                | GateKind::CxInv(c)
                | GateKind::Csum(c)
                | GateKind::CsumInv(c)
                | GateKind::Cs01(c)
                | GateKind::C2z(c)
                | GateKind::C2zInv(c) => {
                    if c > 2 {
                        errs.push(CircuitError::BadControl { index, value: c });
                    }
                }
                GateKind::Swap2(s, t) if s == t || s.0 > 2 || s.1 > 2 || t.0 > 2 || t.1 > 2 => {
                    errs.push(CircuitError::BadSwapLabels { index });
                }
                _ => {}
            }
        }
        if let Some(regs) = &self.registers {
            let mut seen = std::collections::BTreeSet::new();
            for w in regs.wires() {
                if w >= self.width {
                    errs.push(CircuitError::RegisterWireOutOfRange { wire: w, width: self.width });
                }
                if !seen.insert(w) {
                    errs.push(CircuitError::RegisterWireDuplicated { wire: w });
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// The inverse circuit: reversed gate order, inverse kinds, mirrored
    /// phase marks.
    pub fn inverse(&self) -> Circuit {
        let n = self.gates.len();
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| GateInstance::new(g.kind.inverse(), g.wires.clone()))
            .collect();
        let mut phase_marks: Vec<usize> =
            self.phase_marks.iter().map(|&m| n - m).filter(|&m| m > 0 && m < n).collect();
        phase_marks.sort_unstable();
        phase_marks.dedup();
        Circuit { width: self.width, gates, phase_marks, registers: self.registers.clone() }
    }

    /// Concatenation of two circuits of equal width. A phase boundary is
    /// inserted at the junction; the register map of `self` is kept.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.width != other.width {
            return Err(CircuitError::WidthMismatch { left: self.width, right: other.width });
        }
        let mut out = self.clone();
        out.mark_phase();
        let base = out.gates.len();
        out.gates.extend(other.gates.iter().cloned());
        for &m in &other.phase_marks {
            out.phase_marks.push(base + m);
        }
        out.phase_marks.sort_unstable();
        out.phase_marks.dedup();
        out.seal_phases();
        Ok(out)
    }

    /// A copy of `self` living on the wires of a host circuit of width
    /// `host_width`, with wire i mapped to `assignment[i]`.
    pub fn embed(&self, host_width: usize, assignment: &[usize]) -> Result<Circuit, CircuitError> {
        if assignment.len() != self.width {
            return Err(CircuitError::BadEmbedding {
                detail: format!("{} wires assigned for width {}", assignment.len(), self.width),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for &w in assignment {
            if w >= host_width {
                return Err(CircuitError::BadEmbedding {
                    detail: format!("target wire {w} out of range for width {host_width}"),
                });
            }
            if !seen.insert(w) {
                return Err(CircuitError::BadEmbedding {
                    detail: format!("target wire {w} used twice"),
                });
            }
        }
        let gates = self
            .gates
            .iter()
            .map(|g| GateInstance::new(g.kind, g.wires.iter().map(|&w| assignment[w]).collect()))
            .collect();
        Ok(Circuit {
            width: host_width,
            gates,
            phase_marks: self.phase_marks.clone(),
            registers: None,
        })
    }

    /// Gate ranges of each phase.
    pub fn phases(&self) -> Vec<std::ops::Range<usize>> {
        let mut bounds = vec![0];
        for &m in &self.phase_marks {
            if m > *bounds.last().unwrap() && m < self.gates.len() {
                bounds.push(m);
            }
        }
        bounds.push(self.gates.len());
        bounds.windows(2).map(|w| w[0]..w[1]).collect()
    }

    /// Dependency-layered non-Clifford depth of one gate range: each wire
    /// carries a layer counter, a Clifford gate synchronizes its wires to
    /// their max, a non-Clifford gate sets its wires to 1 + max.
    fn layered_depth(&self, range: std::ops::Range<usize>, layers: &mut [usize]) -> usize {
        for w in layers.iter_mut() {
            *w = 0;
        }
        let mut depth = 0;
        for g in &self.gates[range] {
            let m = g.wires.iter().map(|&w| layers[w]).max().unwrap_or(0);
            let new = if g.kind.is_clifford() { m } else { m + 1 };
            for &w in &g.wires {
                layers[w] = new;
            }
            depth = depth.max(new);
        }
        depth
    }

    /// The resource report: per-kind counts, non-Clifford count, and the
    /// phase-summed non-Clifford depth.
    pub fn resource_report(&self) -> Result<ResourceReport, Vec<CircuitError>> {
        self.validate()?;
        let mut counts_by_kind = BTreeMap::new();
        let mut non_clifford_count = 0;
        for g in &self.gates {
            *counts_by_kind.entry(g.kind.token()).or_insert(0) += 1;
            if !g.kind.is_clifford() {
                non_clifford_count += 1;
            }
        }
        let mut layers = vec![0usize; self.width];
        let non_clifford_depth =
            self.phases().into_iter().map(|r| self.layered_depth(r, &mut layers)).sum();
        Ok(ResourceReport {
            width: self.width,
            ancilla_count: self.registers.as_ref().map_or(0, |r| r.ancillas.len()),
            total_gates: self.gates.len(),
            non_clifford_count,
            non_clifford_depth,
            counts_by_kind,
        })
    }

    /// Count of gates with the given token (e.g. "SUM", "`CX[2]`").
    pub fn count_of(&self, token: &str) -> usize {
        self.gates.iter().filter(|g| g.kind.token() == token).count()
    }
}

/// Trits of an assignment packed into a state index, wire 0 least
/// significant.
pub fn pack_state(trits: &[Trit]) -> usize {
    let mut acc = 0usize;
    for &t in trits.iter().rev() {
        acc = acc * 3 + t as usize;
    }
    acc
}

/// Inverse of [`pack_state`].
pub fn unpack_state(mut index: usize, width: usize) -> Vec<Trit> {
    let mut v = Vec::with_capacity(width);
    for _ in 0..width {
        v.push((index % 3) as Trit);
        index /= 3;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind::*;

    #[test]
    fn validation_catches_bad_gates() {
        let empty = Circuit::new(1);
        assert!(empty.validate().is_ok());

        let mut dup = Circuit::new(2);
        dup.push(Sum, &[0, 0]);
        let errs = dup.validate().unwrap_err();
        assert!(matches!(errs[0], CircuitError::DuplicateWire { wire: 0, .. }));

        let mut badc = Circuit::new(2);
        badc.push(Cx(3), &[0, 1]);
        let errs = badc.validate().unwrap_err();
        assert!(matches!(errs[0], CircuitError::BadControl { value: 3, .. }));

        let mut badw = Circuit::new(2);
        badw.push(Sum, &[0]);
        assert!(badw.validate().is_err());
    }

    #[test]
    fn inverse_structure() {
        let mut c = Circuit::new(2);
        c.push(Sum, &[0, 1]);
        let inv = c.inverse();
        assert_eq!(inv.gates[0].kind, SumInv);
        assert_eq!(inv.gates[0].wires, vec![0, 1]);

        let mut c = Circuit::new(3);
        c.push(Sum, &[0, 1]);
        c.mark_phase();
        c.push(Horner, &[0, 1, 2]);
        c.push(X, &[2]);
        assert_eq!(c.inverse().inverse(), c);
    }

    #[test]
    fn embed_relabels() {
        let mut c = Circuit::new(2);
        c.push(Sum, &[0, 1]);
        let e = c.embed(4, &[2, 3]).unwrap();
        assert_eq!(e.gates[0].wires, vec![2, 3]);
        assert!(c.embed(4, &[0, 0]).is_err());
        assert!(c.embed(1, &[0, 1]).is_err());
    }

    #[test]
    fn depth_metric_basics() {
        // all-Clifford circuit has depth 0
        let mut c = Circuit::new(2);
        c.push(Sum, &[0, 1]);
        c.push(Swap, &[0, 1]);
        assert_eq!(c.resource_report().unwrap().non_clifford_depth, 0);

        // two independent non-Cliffords share a layer
        let mut c = Circuit::new(4);
        c.push(Horner, &[0, 1, 2]);
        c.push(Cx(0), &[3, 0]);
        let r = c.resource_report().unwrap();
        assert_eq!(r.non_clifford_count, 2);
        assert_eq!(r.non_clifford_depth, 2); // share wire 0: they chain

        let mut c = Circuit::new(4);
        c.push(Cx(0), &[0, 1]);
        c.push(Cx(0), &[2, 3]);
        assert_eq!(c.resource_report().unwrap().non_clifford_depth, 1);

        // a Clifford bridge synchronizes layers
        let mut c = Circuit::new(3);
        c.push(Cx(0), &[0, 1]); // layer 1 on {0,1}
        c.push(Sum, &[1, 2]); // sync {1,2} to 1
        c.push(Cx(0), &[2, 0]); // 1+1 = 2
        assert_eq!(c.resource_report().unwrap().non_clifford_depth, 2);

        // phase marks make phases additive
        let mut c = Circuit::new(4);
        c.push(Cx(0), &[0, 1]);
        c.mark_phase();
        c.push(Cx(0), &[2, 3]);
        assert_eq!(c.resource_report().unwrap().non_clifford_depth, 2);
    }

    #[test]
    fn compose_counts_add() {
        let mut c1 = Circuit::new(2);
        c1.push(Cx(0), &[0, 1]);
        let mut c2 = Circuit::new(2);
        c2.push(Cx(0), &[1, 0]);
        let c = c1.compose(&c2).unwrap();
        let r = c.resource_report().unwrap();
        assert_eq!(r.non_clifford_count, 2);
        assert!(c1.compose(&Circuit::new(3)).is_err());
    }

    #[test]
    fn state_packing_round_trip() {
        for idx in 0..81 {
            assert_eq!(pack_state(&unpack_state(idx, 4)), idx);
        }
    }
}
