//! Exact arithmetic in Q(zeta_36) and small dense-matrix simulation.
//!
//! One field hosts every constant the gate set needs: zeta_3 = z^12,
//! zeta_9 = z^4, zeta_6 = z^6, i = z^9, and sqrt(3) = -i(zeta_3 -
//! zeta_3^2), writing z for the primitive 36th root of unity. Elements
//! are integer polynomials in z of degree < 12 (reduced by
//! Phi_36 = z^12 - z^6 + 1) over a power-of-3 denominator, which is
//! closed under everything the simulators do and matches the printed
//! matrix format.

use crate::circuit::Circuit;
use crate::gate::GateKind;
use crate::trit::Trit;
use num_bigint::BigInt;
use std::fmt;

/// An element of Z[zeta_36, 1/3]: coefficients over the power basis
/// 1, z, ..., z^11 divided by 3^den_pow3. Kept normalized: either zero
/// with den_pow3 = 0, or not all coefficients divisible by 3 when
/// den_pow3 > 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    pub coeffs: [BigInt; 12],
    pub den_pow3: u32,
}

fn zero_coeffs() -> [BigInt; 12] {
    Default::default()
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { coeffs: zero_coeffs(), den_pow3: 0 }
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut c = zero_coeffs();
        c[0] = BigInt::from(v);
        Cyclo { coeffs: c, den_pow3: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.sign() == num_bigint::Sign::NoSign)
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den_pow3 = 0;
            return;
        }
        let three = BigInt::from(3);
        while self.den_pow3 > 0
            && self.coeffs.iter().all(|c| (c % &three).sign() == num_bigint::Sign::NoSign)
        {
            for c in self.coeffs.iter_mut() {
                *c /= &three;
            }
            self.den_pow3 -= 1;
        }
    }

    /// Reduce a raw power-basis expansion (degree < 36) by z^12 = z^6 - 1.
    fn reduce(raw: &mut [BigInt]) -> [BigInt; 12] {
        for p in (12..raw.len()).rev() {
            if raw[p].sign() != num_bigint::Sign::NoSign {
                let c = std::mem::take(&mut raw[p]);
                raw[p - 6] += &c;
                raw[p - 12] -= &c;
            }
        }
        let mut out = zero_coeffs();
        out.clone_from_slice(&raw[..12]);
        out
    }

    /// zeta_36^k for any integer k.
    pub fn zeta(k: i64) -> Self {
        let k = k.rem_euclid(36) as usize;
        let mut raw = vec![BigInt::from(0); 36];
        raw[k] = BigInt::from(1);
        Cyclo { coeffs: Self::reduce(&mut raw), den_pow3: 0 }
    }

    /// zeta_9^k.
    pub fn zeta9(k: i64) -> Self {
        Self::zeta(4 * k)
    }

    /// zeta_3^k.
    pub fn zeta3(k: i64) -> Self {
        Self::zeta(12 * k)
    }

    /// 1/sqrt(3) = (z^3 + z^33)/3.
    pub fn inv_sqrt3() -> Self {
        let mut raw = vec![BigInt::from(0); 36];
        raw[3] = BigInt::from(1);
        raw[33] = BigInt::from(1);
        let mut out = Cyclo { coeffs: Self::reduce(&mut raw), den_pow3: 1 };
        out.normalize();
        out
    }

    pub fn add(&self, rhs: &Cyclo) -> Cyclo {
        let den = self.den_pow3.max(rhs.den_pow3);
        let ls = BigInt::from(3).pow(den - self.den_pow3);
        let rs = BigInt::from(3).pow(den - rhs.den_pow3);
        let mut coeffs = zero_coeffs();
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = &self.coeffs[i] * &ls + &rhs.coeffs[i] * &rs;
        }
        let mut out = Cyclo { coeffs, den_pow3: den };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Cyclo {
        let mut coeffs = zero_coeffs();
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = -&self.coeffs[i];
        }
        Cyclo { coeffs, den_pow3: self.den_pow3 }
    }

    pub fn sub(&self, rhs: &Cyclo) -> Cyclo {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Cyclo) -> Cyclo {
        let mut raw = vec![BigInt::from(0); 23];
        for i in 0..12 {
            if self.coeffs[i].sign() == num_bigint::Sign::NoSign {
                continue;
            }
            for j in 0..12 {
                if rhs.coeffs[j].sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                raw[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        let mut out =
            Cyclo { coeffs: Self::reduce(&mut raw), den_pow3: self.den_pow3 + rhs.den_pow3 };
        out.normalize();
        out
    }

    /// Complex conjugation: z^k -> z^(36-k).
    pub fn conjugate(&self) -> Cyclo {
        let mut raw = vec![BigInt::from(0); 36];
        raw[0] = self.coeffs[0].clone();
        for k in 1..12 {
            raw[36 - k] = self.coeffs[k].clone();
        }
        Cyclo { coeffs: Self::reduce(&mut raw), den_pow3: self.den_pow3 }
    }

    /// Scale by an integer.
    pub fn scale(&self, v: i64) -> Cyclo {
        let f = BigInt::from(v);
        let mut coeffs = zero_coeffs();
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = &self.coeffs[i] * &f;
        }
        let mut out = Cyclo { coeffs, den_pow3: self.den_pow3 };
        out.normalize();
        out
    }

    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.sign() == num_bigint::Sign::NoSign {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")?;
        if self.den_pow3 > 0 {
            write!(f, "/3^{}", self.den_pow3)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

/// A dense matrix over the cyclotomic ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryMatrix {
    pub dim: usize,
    pub entries: Vec<Cyclo>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Cyclo::zero(); dim * dim];
        for d in 0..dim {
            entries[d * dim + d] = Cyclo::one();
        }
        UnitaryMatrix { dim, entries }
    }

    pub fn at(&self, r: usize, c: usize) -> &Cyclo {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclo) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut out = UnitaryMatrix { dim, entries: vec![Cyclo::zero(); dim * dim] };
        for r in 0..dim {
            for k in 0..dim {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(r, c).add(&prod);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> UnitaryMatrix {
        let dim = self.dim;
        let mut out = UnitaryMatrix { dim, entries: vec![Cyclo::zero(); dim * dim] };
        for r in 0..dim {
            for c in 0..dim {
                out.set(c, r, self.at(r, c).conjugate());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == UnitaryMatrix::identity(self.dim)
    }
}

/// Diagonal phase exponent (as a power of zeta_3) of the named diagonal
/// gates, as a function of the gate-local trits.
fn diagonal_zeta3_exponent(kind: GateKind, v: &[Trit]) -> Option<i64> {
    use GateKind::*;
    let e = match kind {
        Q => i64::from(v[0] == 2),
        QInv => -i64::from(v[0] == 2),
        Z => v[0] as i64,
        ZInv => -(v[0] as i64),
        Cz => (v[0] * v[1]) as i64,
        CzInv => -((v[0] * v[1]) as i64),
        Cz2 => (v[0] * v[1]) as i64 * v[2] as i64,
        Cz2Inv => -((v[0] * v[1]) as i64 * v[2] as i64),
        C2z(c) => (v[1] * u8::from(v[0] == c)) as i64,
        C2zInv(c) => -((v[1] * u8::from(v[0] == c)) as i64),
        _ => return None,
    };
    Some(e)
}

/// The exact matrix of one gate in gate-local convention: the basis index
/// runs most-significant-first over the gate's wire list, matching the
/// |i,j> ordering of the definitions.
pub fn gate_matrix(kind: GateKind) -> UnitaryMatrix {
    use GateKind::*;
    let a = kind.arity();
    let dim = 3usize.pow(a as u32);
    let mut m = UnitaryMatrix { dim, entries: vec![Cyclo::zero(); dim * dim] };
    let digits = |idx: usize| -> Vec<Trit> {
        let mut v = vec![0u8; a];
        let mut x = idx;
        for d in v.iter_mut().rev() {
            *d = (x % 3) as Trit;
            x /= 3;
        }
        v
    };
    let index = |v: &[Trit]| -> usize { v.iter().fold(0, |acc, &d| acc * 3 + d as usize) };

    match kind {
        H | HInv => {
            let s = Cyclo::inv_sqrt3();
            for j in 0..3i64 {
                for k in 0..3i64 {
                    let e = if kind == H { j * k } else { -j * k };
                    m.set(j as usize, k as usize, Cyclo::zeta3(e).mul(&s));
                }
            }
        }
        P9 | P9Inv => {
            for v in 0..3i64 {
                let e = if kind == P9 { v - 1 } else { 1 - v };
                m.set(v as usize, v as usize, Cyclo::zeta9(e));
            }
        }
        _ => {
            if kind.is_classical() {
                for idx in 0..dim {
                    let mut v = digits(idx);
                    kind.apply(&mut v);
                    m.set(index(&v), idx, Cyclo::one());
                }
            } else {
                for idx in 0..dim {
                    let v = digits(idx);
                    let e = diagonal_zeta3_exponent(kind, &v)
                        .expect("every non-classical kind is H, P9, or diagonal");
                    m.set(idx, idx, Cyclo::zeta3(e));
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    TooWide { width: usize, bound: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::TooWide { width, bound } => {
                write!(f, "dense simulation limited to width {bound}, got {width}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Default dense width bound (81 x 81 matrices).
pub const DENSE_WIDTH_BOUND: usize = 4;

/// The full circuit unitary in the circuit's state convention (wire 0
/// least significant), as the left-to-right product of embedded gates.
pub fn circuit_matrix(c: &Circuit) -> Result<UnitaryMatrix, MatrixError> {
    circuit_matrix_bounded(c, DENSE_WIDTH_BOUND)
}

pub fn circuit_matrix_bounded(c: &Circuit, bound: usize) -> Result<UnitaryMatrix, MatrixError> {
    if c.width > bound {
        return Err(MatrixError::TooWide { width: c.width, bound });
    }
    let dim = 3usize.pow(c.width as u32);
    let mut m = UnitaryMatrix::identity(dim);
    for g in &c.gates {
        apply_gate_to_matrix(&mut m, g, c.width);
    }
    Ok(m)
}

/// In-place left-multiplication by the embedded gate: M <- G . M.
fn apply_gate_to_matrix(m: &mut UnitaryMatrix, g: &crate::circuit::GateInstance, width: usize) {
    let local = gate_matrix(g.kind);
    let a = g.wires.len();
    let ldim = 3usize.pow(a as u32);
    let dim = m.dim;
    // gate-local digit t (most significant first) lives on wire
    // g.wires[t], whose stride in the packed index is 3^wire
    let strides: Vec<usize> = g.wires.iter().map(|&w| 3usize.pow(w as u32)).collect();
    let rest_wires: Vec<usize> = (0..width).filter(|w| !g.wires.contains(w)).collect();
    let rest_count: usize = dim / ldim;

    let local_offset = |lidx: usize| -> usize {
        let mut x = lidx;
        let mut off = 0;
        for t in (0..a).rev() {
            off += (x % 3) * strides[t];
            x /= 3;
        }
        off
    };
    let offsets: Vec<usize> = (0..ldim).map(local_offset).collect();

    let mut scratch: Vec<Cyclo> = vec![Cyclo::zero(); ldim];
    for col in 0..dim {
        for rest in 0..rest_count {
            let mut base = 0usize;
            let mut r = rest;
            for &w in &rest_wires {
                base += (r % 3) * 3usize.pow(w as u32);
                r /= 3;
            }
            for (l, s) in scratch.iter_mut().enumerate() {
                *s = m.at(base + offsets[l], col).clone();
            }
            for (l_out, &off) in offsets.iter().enumerate() {
                let mut acc = Cyclo::zero();
                for (l_in, s) in scratch.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let coeff = local.at(l_out, l_in);
                    if coeff.is_zero() {
                        continue;
                    }
                    acc = acc.add(&coeff.mul(s));
                }
                m.set(base + off, col, acc);
            }
        }
    }
}

/// Test M1 = lambda * M2 for a scalar lambda; the scalar is searched among
/// the 36th roots of unity, which covers every phase the constructions
/// produce. Returns the witness scalar on success.
pub fn equal_up_to_global_phase(m1: &UnitaryMatrix, m2: &UnitaryMatrix) -> (bool, Option<Cyclo>) {
    if m1.dim != m2.dim {
        return (false, None);
    }
    let anchor = (0..m1.entries.len()).find(|&i| !m2.entries[i].is_zero());
    let anchor = match anchor {
        Some(i) => i,
        None => return (m1.entries.iter().all(Cyclo::is_zero), Some(Cyclo::one())),
    };
    for t in 0..36 {
        let lambda = Cyclo::zeta(t);
        if m1.entries[anchor] == lambda.mul(&m2.entries[anchor]) {
            let all = m1.entries.iter().zip(&m2.entries).all(|(x, y)| *x == lambda.mul(y));
            if all {
                return (true, Some(lambda));
            }
        }
    }
    (false, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagError {
    NotDiagonal { row: usize, col: usize },
    NotRepresentable { index: usize },
}

impl fmt::Display for DiagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagError::NotDiagonal { row, col } => {
                write!(f, "matrix has a nonzero off-diagonal entry at ({row},{col})")
            }
            DiagError::NotRepresentable { index } => {
                write!(f, "diagonal entry {index} is not a power of zeta_9 relative to entry 0")
            }
        }
    }
}

impl std::error::Error for DiagError {}

/// Extract the exponent table of a diagonal matrix whose entries are all
/// powers of zeta_9 after removing a common global phase. Exponents are
/// relative to entry 0.
pub fn diagonal_exponents(m: &UnitaryMatrix) -> Result<Vec<u8>, DiagError> {
    for r in 0..m.dim {
        for c in 0..m.dim {
            if r != c && !m.at(r, c).is_zero() {
                return Err(DiagError::NotDiagonal { row: r, col: c });
            }
        }
    }
    let base = m.at(0, 0);
    let mut out = Vec::with_capacity(m.dim);
    'entry: for d in 0..m.dim {
        for e in 0..9i64 {
            if *m.at(d, d) == Cyclo::zeta9(e).mul(base) {
                out.push(e as u8);
                continue 'entry;
            }
        }
        return Err(DiagError::NotRepresentable { index: d });
    }
    Ok(out)
}

/// A sparse state vector over the cyclotomic ring, for exact simulation
/// of circuits that are classical + diagonal + isolated H conjugations
/// at widths past the dense bound.
pub type SparseState = std::collections::BTreeMap<usize, Cyclo>;

/// Apply a circuit to one computational basis state exactly.
pub fn simulate_basis_state(c: &Circuit, input: &[Trit]) -> SparseState {
    use GateKind::*;
    let mut state: SparseState = SparseState::new();
    state.insert(crate::circuit::pack_state(input), Cyclo::one());
    let mut scratch = [0u8; 3];
    for g in &c.gates {
        match g.kind {
            H | HInv => {
                let w = g.wires[0];
                let stride = 3usize.pow(w as u32);
                let s = Cyclo::inv_sqrt3();
                let mut next: SparseState = SparseState::new();
                for (idx, amp) in &state {
                    let v = (idx / stride) % 3;
                    let base = idx - v * stride;
                    for u in 0..3usize {
                        let e = if g.kind == H { (u * v) as i64 } else { -((u * v) as i64) };
                        let contrib = amp.mul(&Cyclo::zeta3(e)).mul(&s);
                        let slot = next.entry(base + u * stride).or_insert_with(Cyclo::zero);
                        *slot = slot.add(&contrib);
                    }
                }
                next.retain(|_, a| !a.is_zero());
                state = next;
            }
            _ if g.kind.is_classical() => {
                let mut next: SparseState = SparseState::new();
                for (idx, amp) in &state {
                    let mut digits = crate::circuit::unpack_state(*idx, c.width);
                    let k = g.wires.len();
                    for (s, &w) in scratch[..k].iter_mut().zip(&g.wires) {
                        *s = digits[w];
                    }
                    g.kind.apply(&mut scratch[..k]);
                    for (&s, &w) in scratch[..k].iter().zip(&g.wires) {
                        digits[w] = s;
                    }
                    next.insert(crate::circuit::pack_state(&digits), amp.clone());
                }
                state = next;
            }
            _ => {
                // diagonal kinds: Q, Z, P9, CZ, CZ2, C2Z and inverses
                let mut next: SparseState = SparseState::new();
                for (idx, amp) in &state {
                    let digits = crate::circuit::unpack_state(*idx, c.width);
                    let local: Vec<Trit> = g.wires.iter().map(|&w| digits[w]).collect();
                    let phase = match g.kind {
                        P9 => Cyclo::zeta9(local[0] as i64 - 1),
                        P9Inv => Cyclo::zeta9(1 - local[0] as i64),
                        _ => Cyclo::zeta3(
                            diagonal_zeta3_exponent(g.kind, &local).expect("diagonal kind"),
                        ),
                    };
                    next.insert(*idx, amp.mul(&phase));
                }
                state = next;
            }
        }
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind::*;

    #[test]
    fn zeta_orders() {
        let z3 = Cyclo::zeta(12);
        assert_eq!(z3.mul(&z3).mul(&z3), Cyclo::one());
        assert_ne!(z3, Cyclo::one());
        let z4 = Cyclo::zeta(4);
        assert_eq!(z4, Cyclo::zeta9(1));
        let mut p = Cyclo::one();
        for _ in 0..9 {
            p = p.mul(&z4);
        }
        assert_eq!(p, Cyclo::one());
    }

    #[test]
    fn inv_sqrt3_squares_to_third() {
        let s = Cyclo::inv_sqrt3();
        let third = s.mul(&s);
        assert_eq!(third.scale(3), Cyclo::one());
    }

    #[test]
    fn field_ops_spot_checks() {
        let mut rng = 0xC0FFEE_u64;
        let rand_elem = |rng: &mut u64| {
            let mut c = Cyclo::zero();
            for k in 0..12 {
                let v = (crate::permsim::splitmix64(rng) % 9) as i64 - 4;
                c = c.add(&Cyclo::zeta(k).scale(v));
            }
            c
        };
        for _ in 0..25 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
            assert_eq!(a.sub(&a), Cyclo::zero());
        }
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for kind in [X, S01, H, HInv, Q, Z, P9, Sum, Swap, Cz, Cx(2), Cpx, Horner, Cz2, C2z(2)] {
            let m = gate_matrix(kind);
            assert!(m.mul(&m.dagger()).is_identity(), "{kind:?} not unitary");
        }
    }

    #[test]
    fn cx2_matches_printed_matrix() {
        // the controlled increment on control value 2: the i = 2 block
        // cycles while everything else is fixed
        let m = gate_matrix(Cx(2));
        let one = Cyclo::one();
        for (r, c) in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 8), (7, 6), (8, 7)] {
            assert_eq!(*m.at(r, c), one, "entry ({r},{c})");
        }
        let total: usize = m.entries.iter().filter(|e| !e.is_zero()).count();
        assert_eq!(total, 9);
    }

    #[test]
    fn p9_matrix() {
        let m = gate_matrix(P9);
        assert_eq!(*m.at(0, 0), Cyclo::zeta9(-1));
        assert_eq!(*m.at(1, 1), Cyclo::one());
        assert_eq!(*m.at(2, 2), Cyclo::zeta9(1));
    }

    #[test]
    fn circuit_matrix_basics() {
        let mut c = Circuit::new(1);
        c.push(H, &[0]);
        c.push(HInv, &[0]);
        assert!(circuit_matrix(&c).unwrap().is_identity());

        // CZ = (I (x) H) SUM (I (x) H^-1) as a circuit reads HINV, SUM, H
        let mut c = Circuit::new(2);
        c.push(HInv, &[1]);
        c.push(Sum, &[0, 1]);
        c.push(H, &[1]);
        let got = circuit_matrix(&c).unwrap();
        let mut cz = Circuit::new(2);
        cz.push(Cz, &[0, 1]);
        assert_eq!(got, circuit_matrix(&cz).unwrap());
    }

    #[test]
    fn circuit_matrix_agrees_with_permutation() {
        let mut c = Circuit::new(3);
        c.push(Horner, &[0, 1, 2]);
        c.push(Cx(2), &[2, 0]);
        c.push(Swap2(crate::gate::Pair(0, 0), crate::gate::Pair(2, 2)), &[1, 2]);
        let m = circuit_matrix(&c).unwrap();
        let p = crate::permsim::permutation_of(&c).unwrap();
        for x in 0..27 {
            for y in 0..27 {
                let want = if p.mapping[x] == y { Cyclo::one() } else { Cyclo::zero() };
                assert_eq!(*m.at(y, x), want, "entry ({y},{x})");
            }
        }
    }

    #[test]
    fn inverse_circuit_gives_dagger() {
        let mut c = Circuit::new(2);
        c.push(H, &[0]);
        c.push(Cz, &[0, 1]);
        c.push(P9, &[1]);
        c.push(Sum, &[0, 1]);
        let m = circuit_matrix(&c).unwrap();
        let mi = circuit_matrix(&c.inverse()).unwrap();
        assert_eq!(mi, m.dagger());
    }

    #[test]
    fn global_phase_comparison() {
        let m = gate_matrix(Cz);
        assert_eq!(equal_up_to_global_phase(&m, &m), (true, Some(Cyclo::one())));
        let scaled = UnitaryMatrix {
            dim: m.dim,
            entries: m.entries.iter().map(|e| e.mul(&Cyclo::zeta9(-2))).collect(),
        };
        let (ok, phase) = equal_up_to_global_phase(&scaled, &m);
        assert!(ok);
        assert_eq!(phase.unwrap(), Cyclo::zeta9(-2));
        let id = UnitaryMatrix::identity(9);
        assert!(!equal_up_to_global_phase(&m, &id).0);
    }

    #[test]
    fn diagonal_exponent_extraction() {
        let m = gate_matrix(Cz);
        let e = diagonal_exponents(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e[3 * i + j] as usize, (3 * i * j) % 9);
            }
        }
        assert_eq!(diagonal_exponents(&UnitaryMatrix::identity(3)).unwrap(), vec![0, 0, 0]);

        // diag(1, 1, -1) is outside the zeta_9 lattice
        let mut m = UnitaryMatrix::identity(3);
        m.set(2, 2, Cyclo::from_int(-1));
        assert!(matches!(diagonal_exponents(&m), Err(DiagError::NotRepresentable { index: 2 })));

        let off = gate_matrix(Sum);
        assert!(matches!(diagonal_exponents(&off), Err(DiagError::NotDiagonal { .. })));
    }

    #[test]
    fn footnote_square_identity() {
        // zeta_3^(i^2) = zeta_9^((2i mod 3) - ((2-i) mod 3)) up to the
        // global phase zeta_9^-2, exhaustively over i
        for i in 0..3i64 {
            let lhs = Cyclo::zeta9((2 * i).rem_euclid(3) - (2 - i).rem_euclid(3));
            let rhs = Cyclo::zeta9(-2).mul(&Cyclo::zeta3(i * i));
            assert_eq!(lhs, rhs, "i={i}");
        }
    }

    #[test]
    fn sparse_simulation_matches_dense() {
        let mut c = Circuit::new(2);
        c.push(H, &[1]);
        c.push(Cz, &[0, 1]);
        c.push(P9, &[0]);
        c.push(HInv, &[1]);
        c.push(Sum, &[0, 1]);
        let m = circuit_matrix(&c).unwrap();
        for x in 0..9usize {
            let digits = crate::circuit::unpack_state(x, 2);
            let state = simulate_basis_state(&c, &digits);
            for y in 0..9usize {
                let amp = state.get(&y).cloned().unwrap_or_else(Cyclo::zero);
                assert_eq!(amp, *m.at(y, x), "amplitude ({y},{x})");
            }
        }
    }
}
