//! The qutrit gate catalog: local reversible gates, the Clifford
//! generators, and the non-Clifford reflections and diagonals the adder
//! constructions are built from.

use crate::trit::{t_add, t_mul, t_sub, Trit};
use std::fmt;

/// A two-qutrit basis label, e.g. the `00` and `22` of the two-way swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub Trit, pub Trit);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// Every gate tag in the IR. Hard-control parameters are kept explicit so
/// emitted circuits match the figures they come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    XInv,
    S01,
    S02,
    S12,
    H,
    HInv,
    Q,
    QInv,
    Z,
    ZInv,
    P9,
    P9Inv,
    Sum,
    SumInv,
    Swap,
    Cz,
    CzInv,
    Cx(Trit),
    CxInv(Trit),
    Cpx,
    CpxInv,
    Csum(Trit),
    CsumInv(Trit),
    Cs01(Trit),
    Horner,
    HornerInv,
    Swap2(Pair, Pair),
    Cz2,
    Cz2Inv,
    C2z(Trit),
    C2zInv(Trit),
}

use GateKind::*;

impl GateKind {
    /// Number of wires the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            X | XInv | S01 | S02 | S12 | H | HInv | Q | QInv | Z | ZInv | P9 | P9Inv => 1,
            Sum
            | SumInv
            | Swap
            | Cz
            | CzInv
            | Cx(_)
            | CxInv(_)
            | Cpx
            | CpxInv
            | Cs01(_)
            | Swap2(_, _)
            | C2z(_)
            | C2zInv(_) => 2,
            Csum(_) | CsumInv(_) | Horner | HornerInv | Cz2 | Cz2Inv => 3,
        }
    }

    /// True exactly for the gates generated by SUM, X, H, Q (free in the
    /// cost metric).
    pub fn is_clifford(self) -> bool {
        matches!(
            self,
            X | XInv
                | S01
                | S02
                | S12
                | H
                | HInv
                | Q
                | QInv
                | Z
                | ZInv
                | Sum
                | SumInv
                | Swap
                | Cz
                | CzInv
        )
    }

    /// The inverse tag.
    pub fn inverse(self) -> GateKind {
        match self {
            X => XInv,
            XInv => X,
            H => HInv,
            HInv => H,
            Q => QInv,
            QInv => Q,
            Z => ZInv,
            ZInv => Z,
            P9 => P9Inv,
            P9Inv => P9,
            Sum => SumInv,
            SumInv => Sum,
            Cz => CzInv,
            CzInv => Cz,
            Cx(c) => CxInv(c),
            CxInv(c) => Cx(c),
            Cpx => CpxInv,
            CpxInv => Cpx,
            Csum(c) => CsumInv(c),
            CsumInv(c) => Csum(c),
            Horner => HornerInv,
            HornerInv => Horner,
            Cz2 => Cz2Inv,
            Cz2Inv => Cz2,
            C2z(c) => C2zInv(c),
            C2zInv(c) => C2z(c),
            // involutions
            S01 | S02 | S12 | Swap | Cs01(_) | Swap2(_, _) => self,
        }
    }

    /// True when the gate acts as a permutation of the computational basis
    /// (no phases), i.e. it can be run by the classical simulator.
    pub fn is_classical(self) -> bool {
        !matches!(
            self,
            H | HInv
                | Q
                | QInv
                | Z
                | ZInv
                | P9
                | P9Inv
                | Cz
                | CzInv
                | Cz2
                | Cz2Inv
                | C2z(_)
                | C2zInv(_)
        )
    }

    /// Classical action on the trits carried by the gate's wires, in wire
    /// order (controls first, target last). Panics on non-classical kinds;
    /// callers gate on [`GateKind::is_classical`].
    pub fn apply(self, v: &mut [Trit]) {
        match self {
            X => v[0] = t_add(v[0], 1),
            XInv => v[0] = t_sub(v[0], 1),
            S01 => {
                v[0] = match v[0] {
                    0 => 1,
                    1 => 0,
                    t => t,
                }
            }
            S02 => v[0] = 2 - v[0],
            S12 => {
                v[0] = match v[0] {
                    1 => 2,
                    2 => 1,
                    t => t,
                }
            }
            Sum => v[1] = t_add(v[1], v[0]),
            SumInv => v[1] = t_sub(v[1], v[0]),
            Swap => v.swap(0, 1),
            Cx(c) => {
                if v[0] == c {
                    v[1] = t_add(v[1], 1);
                }
            }
            CxInv(c) => {
                if v[0] == c {
                    v[1] = t_sub(v[1], 1);
                }
            }
            Cpx => v[1] = t_add(v[1], t_mul(v[0], v[0])),
            CpxInv => v[1] = t_sub(v[1], t_mul(v[0], v[0])),
            Csum(c) => {
                if v[0] == c {
                    v[2] = t_add(v[2], v[1]);
                }
            }
            CsumInv(c) => {
                if v[0] == c {
                    v[2] = t_sub(v[2], v[1]);
                }
            }
            Cs01(c) => {
                if v[0] == c {
                    v[1] = match v[1] {
                        0 => 1,
                        1 => 0,
                        t => t,
                    };
                }
            }
            Horner => v[2] = t_add(v[2], t_mul(v[0], v[1])),
            HornerInv => v[2] = t_sub(v[2], t_mul(v[0], v[1])),
            Swap2(s, t) => {
                if (v[0], v[1]) == (s.0, s.1) {
                    v[0] = t.0;
                    v[1] = t.1;
                } else if (v[0], v[1]) == (t.0, t.1) {
                    v[0] = s.0;
                    v[1] = s.1;
                }
            }
            _ => panic!("{self:?} is not a classical permutation gate"),
        }
    }

    /// The canonical text token (hard-control parameter included).
    pub fn token(self) -> String {
        match self {
            X => "X".into(),
            XInv => "XINV".into(),
            S01 => "S01".into(),
            S02 => "S02".into(),
            S12 => "S12".into(),
            H => "H".into(),
            HInv => "HINV".into(),
            Q => "Q".into(),
            QInv => "QINV".into(),
            Z => "Z".into(),
            ZInv => "ZINV".into(),
            P9 => "P9".into(),
            P9Inv => "P9INV".into(),
            Sum => "SUM".into(),
            SumInv => "SUMINV".into(),
            Swap => "SWAP".into(),
            Cz => "CZ".into(),
            CzInv => "CZINV".into(),
            Cx(c) => format!("CX[{c}]"),
            CxInv(c) => format!("CXINV[{c}]"),
            Cpx => "CPX".into(),
            CpxInv => "CPXINV".into(),
            Csum(c) => format!("CSUM[{c}]"),
            CsumInv(c) => format!("CSUMINV[{c}]"),
            Cs01(c) => format!("CS01[{c}]"),
            Horner => "HORNER".into(),
            HornerInv => "HORNERINV".into(),
            Swap2(_, _) => "SWAP2".into(),
            Cz2 => "CZ2".into(),
            Cz2Inv => "CZ2INV".into(),
            C2z(c) => format!("C2Z[{c}]"),
            C2zInv(c) => format!("C2ZINV[{c}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_kinds() -> Vec<GateKind> {
        let mut v = vec![
            X,
            XInv,
            S01,
            S02,
            S12,
            H,
            HInv,
            Q,
            QInv,
            Z,
            ZInv,
            P9,
            P9Inv,
            Sum,
            SumInv,
            Swap,
            Cz,
            CzInv,
            Cpx,
            CpxInv,
            Horner,
            HornerInv,
            Cz2,
            Cz2Inv,
            Swap2(Pair(0, 0), Pair(2, 2)),
            Swap2(Pair(0, 1), Pair(1, 0)),
        ];
        for c in 0..3 {
            v.push(Cx(c));
            v.push(CxInv(c));
            v.push(Csum(c));
            v.push(CsumInv(c));
            v.push(Cs01(c));
            v.push(C2z(c));
            v.push(C2zInv(c));
        }
        v
    }

    #[test]
    fn clifford_classification() {
        assert!(Sum.is_clifford());
        assert!(!Horner.is_clifford());
        assert!(!P9.is_clifford());
        assert!(!Swap2(Pair(0, 0), Pair(2, 2)).is_clifford());
        assert!(Cz.is_clifford());
        assert!(!Cx(2).is_clifford());
    }

    #[test]
    fn inverse_is_involutive_and_preserves_cliffordness() {
        for k in all_kinds() {
            assert_eq!(k.inverse().inverse(), k, "double inverse of {k:?}");
            assert_eq!(k.is_clifford(), k.inverse().is_clifford());
            assert_eq!(k.arity(), k.inverse().arity());
        }
    }

    #[test]
    fn classical_actions_match_definitions() {
        // HORNER: |i,j,k> -> |i,j,ij+k>
        let mut v = [1, 2, 0];
        Horner.apply(&mut v);
        assert_eq!(v, [1, 2, 2]);
        // CPX: |i,j> -> |i,j+i^2>
        let mut v = [2, 0];
        Cpx.apply(&mut v);
        assert_eq!(v, [2, 1]);
        // X wraps
        let mut v = [2];
        X.apply(&mut v);
        assert_eq!(v, [0]);
        // CSUM[c]: |i,j,k> -> |i,j,k + j*delta(i,c)>
        let mut v = [2, 2, 1];
        Csum(2).apply(&mut v);
        assert_eq!(v, [2, 2, 0]);
        let mut v = [1, 2, 1];
        Csum(2).apply(&mut v);
        assert_eq!(v, [1, 2, 1]);
    }

    #[test]
    fn classical_inverses_cancel() {
        for k in all_kinds().into_iter().filter(|k| k.is_classical()) {
            let arity = k.arity();
            let mut counter = vec![0u8; arity];
            loop {
                let mut v = counter.clone();
                k.apply(&mut v);
                k.inverse().apply(&mut v);
                assert_eq!(v, counter, "inverse of {k:?} failed at {counter:?}");
                // next assignment
                let mut i = 0;
                while i < arity {
                    counter[i] += 1;
                    if counter[i] < 3 {
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
                if i == arity {
                    break;
                }
            }
        }
    }
}
