//! The supermetaplectic basis (Clifford+P9): phase-polynomial
//! representation of diagonal gates, the mod-9 linear solver, circuit
//! emission for the synthesized diagonals, and the H-conjugation
//! lowering of CX and Horner onto Clifford+P9.

use crate::circuit::{unpack_state, Circuit};
use crate::cyclo::gate_matrix;
#[cfg(test)]
use crate::cyclo::{circuit_matrix, equal_up_to_global_phase, Cyclo};
use crate::gate::GateKind::{self, *};
use crate::permsim::{decompose_affine, AffineGate};
use crate::trit::Trit;
use std::collections::BTreeMap;
use std::fmt;

/// An affine function F3^n -> F3: coefs . x + konst, always evaluated
/// mod 3 before any integer scaling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub coefs: Vec<Trit>,
    pub konst: Trit,
}

impl AffineForm {
    pub fn eval(&self, x: &[Trit]) -> Trit {
        let mut acc = self.konst as u32;
        for (c, v) in self.coefs.iter().zip(x) {
            acc += (*c as u32) * (*v as u32);
        }
        (acc % 3) as Trit
    }

    pub fn is_constant(&self) -> bool {
        self.coefs.iter().all(|&c| c == 0)
    }
}

/// The zeta_3-level part of a diagonal gate: a polynomial of total degree
/// at most 2 over the coordinates, coefficients mod 3.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadPoly {
    pub pairs: BTreeMap<(usize, usize), Trit>,
    pub squares: Vec<Trit>,
    pub linears: Vec<Trit>,
    pub konst: Trit,
}

impl QuadPoly {
    pub fn new(n: usize) -> Self {
        QuadPoly { pairs: BTreeMap::new(), squares: vec![0; n], linears: vec![0; n], konst: 0 }
    }

    pub fn eval(&self, x: &[Trit]) -> Trit {
        let mut acc = self.konst as u32;
        for (&(p, q), &c) in &self.pairs {
            acc += c as u32 * (x[p] as u32) * (x[q] as u32);
        }
        for (p, &c) in self.squares.iter().enumerate() {
            acc += c as u32 * (x[p] as u32) * (x[p] as u32);
        }
        for (p, &c) in self.linears.iter().enumerate() {
            acc += c as u32 * (x[p] as u32);
        }
        (acc % 3) as Trit
    }

    fn add_affine(&mut self, scale: u8, f: &AffineForm) {
        for (slot, &c) in self.linears.iter_mut().zip(&f.coefs) {
            *slot = (*slot + scale % 3 * c) % 3;
        }
        self.konst = (self.konst + scale % 3 * f.konst) % 3;
    }
}

/// A diagonal gate written as zeta_9-weighted affine forms plus a
/// zeta_3-level quadratic part and a global exponent:
/// e(x) = sum A_f lift(f(x)) + 3 Q(x) + global (mod 9).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePolynomial {
    pub n: usize,
    pub affine: BTreeMap<AffineForm, u8>,
    pub quad: QuadPoly,
    pub global: u8,
}

impl PhasePolynomial {
    pub fn new(n: usize) -> Self {
        PhasePolynomial { n, affine: BTreeMap::new(), quad: QuadPoly::new(n), global: 0 }
    }

    /// The represented exponent at one point, mod 9.
    pub fn exponent(&self, x: &[Trit]) -> u8 {
        let mut acc = self.global as u32;
        for (f, &a) in &self.affine {
            acc += a as u32 * f.eval(x) as u32;
        }
        acc += 3 * self.quad.eval(x) as u32;
        (acc % 9) as u8
    }

    /// The full exponent table over F3^n.
    pub fn exponent_table(&self) -> Vec<u8> {
        (0..3usize.pow(self.n as u32))
            .map(|idx| self.exponent(&unpack_state(idx, self.n)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotRepresentable;

impl fmt::Display for NotRepresentable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exponent table is not representable over Clifford+P9")
    }
}

impl std::error::Error for NotRepresentable {}

fn all_affine_forms(n: usize) -> Vec<AffineForm> {
    let count = 3usize.pow(n as u32 + 1);
    (0..count)
        .map(|mut idx| {
            let konst = (idx % 3) as Trit;
            idx /= 3;
            let mut coefs = vec![0u8; n];
            for c in coefs.iter_mut() {
                *c = (idx % 3) as Trit;
                idx /= 3;
            }
            AffineForm { coefs, konst }
        })
        .collect()
}

fn is_unit_mod9(v: u8) -> bool {
    v % 3 != 0
}

fn inv_mod9(v: u8) -> u8 {
    for cand in 1..9u8 {
        if (v as u16 * cand as u16) % 9 == 1 {
            return cand;
        }
    }
    unreachable!("unit expected")
}

/// Solve M u = rhs over Z/9. Pivots on units until none remain; the
/// residual rows then have all coefficients in 3Z/9 and are solved mod 3
/// after dividing out the common factor. Returns one solution.
fn solve_mod9(mut m: Vec<Vec<u8>>, mut rhs: Vec<u8>) -> Option<Vec<u8>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    loop {
        // any unit entry in a non-pivot column, in a row not yet used
        let mut found = None;
        'scan: for col in 0..cols {
            if pivot_of_col[col].is_some() {
                continue;
            }
            for row in r..rows {
                if is_unit_mod9(m[row][col]) {
                    found = Some((row, col));
                    break 'scan;
                }
            }
        }
        let (prow, pcol) = match found {
            Some(f) => f,
            None => break,
        };
        m.swap(r, prow);
        rhs.swap(r, prow);
        let inv = inv_mod9(m[r][pcol]);
        for e in m[r].iter_mut() {
            *e = ((*e as u16 * inv as u16) % 9) as u8;
        }
        rhs[r] = ((rhs[r] as u16 * inv as u16) % 9) as u8;
        for row in 0..rows {
            if row != r && m[row][pcol] != 0 {
                let f = m[row][pcol] as u16;
                for col in 0..cols {
                    let sub = (f * m[r][col] as u16) % 9;
                    m[row][col] = ((m[row][col] as u16 + 9 - sub) % 9) as u8;
                }
                let sub = (f * rhs[r] as u16) % 9;
                rhs[row] = ((rhs[row] as u16 + 9 - sub) % 9) as u8;
            }
        }
        pivot_of_col[pcol] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }

    // residual rows: all coefficients divisible by 3
    let mut f3_rows: Vec<Vec<u8>> = Vec::new();
    let mut f3_rhs: Vec<u8> = Vec::new();
    for row in r..rows {
        if rhs[row] % 3 != 0 {
            return None;
        }
        f3_rows.push(m[row].iter().map(|&e| e / 3).collect());
        f3_rhs.push(rhs[row] / 3);
    }
    let f3_solution = solve_mod3(f3_rows, f3_rhs, cols)?;

    // free variables take their mod-3 value; pivots back-substitute mod 9
    let mut u = vec![0u8; cols];
    for (col, s) in f3_solution.iter().enumerate() {
        if pivot_of_col[col].is_none() {
            u[col] = *s;
        }
    }
    for col in 0..cols {
        if let Some(prow) = pivot_of_col[col] {
            let mut acc = rhs[prow] as i32;
            for other in 0..cols {
                if other != col && u[other] != 0 {
                    acc -= m[prow][other] as i32 * u[other] as i32;
                }
            }
            u[col] = acc.rem_euclid(9) as u8;
        }
    }
    Some(u)
}

/// Plain Gaussian elimination over F3; returns one solution.
fn solve_mod3(mut m: Vec<Vec<u8>>, mut rhs: Vec<u8>, cols: usize) -> Option<Vec<u8>> {
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(prow) = (r..rows).find(|&row| m[row][col] % 3 != 0) else {
            continue;
        };
        m.swap(r, prow);
        rhs.swap(r, prow);
        if m[r][col] % 3 == 2 {
            for e in m[r].iter_mut() {
                *e = (*e * 2) % 3;
            }
            rhs[r] = (rhs[r] * 2) % 3;
        }
        for row in 0..rows {
            if row != r && m[row][col] % 3 != 0 {
                let f = m[row][col] % 3;
                for c in 0..cols {
                    m[row][c] = (m[row][c] + 3 - f * m[r][c] % 3) % 3;
                }
                rhs[row] = (rhs[row] + 3 - f * rhs[r] % 3) % 3;
            }
        }
        pivot_of_col[col] = Some(r);
        r += 1;
    }
    for row in r..rows {
        if rhs[row] % 3 != 0 {
            return None;
        }
    }
    let mut u = vec![0u8; cols];
    for col in 0..cols {
        if let Some(prow) = pivot_of_col[col] {
            u[col] = rhs[prow] % 3;
        }
    }
    Some(u)
}

/// Solve the full system of Formula-(7) type for an exponent table:
/// unknown A_f per affine form plus a mod-3 coefficient per quadratic
/// monomial (entering scaled by 3).
pub fn solve_affine_decomposition(e: &[u8], n: usize) -> Result<PhasePolynomial, NotRepresentable> {
    let points = 3usize.pow(n as u32);
    assert_eq!(e.len(), points, "exponent table size");
    let forms = all_affine_forms(n);
    let mut quad_monomials: Vec<(usize, usize)> = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            quad_monomials.push((p, q));
        }
    }
    let cols = forms.len() + quad_monomials.len() + n; // pairs then squares
    let mut m = vec![vec![0u8; cols]; points];
    for (row, matrix_row) in m.iter_mut().enumerate() {
        let x = unpack_state(row, n);
        for (ci, f) in forms.iter().enumerate() {
            matrix_row[ci] = f.eval(&x);
        }
        for (qi, &(p, q)) in quad_monomials.iter().enumerate() {
            matrix_row[forms.len() + qi] = 3 * ((x[p] * x[q]) % 3);
        }
        for p in 0..n {
            matrix_row[forms.len() + quad_monomials.len() + p] = 3 * ((x[p] * x[p]) % 3);
        }
    }
    let rhs: Vec<u8> = e.iter().map(|&v| v % 9).collect();
    let u = solve_mod9(m, rhs).ok_or(NotRepresentable)?;

    let mut poly = PhasePolynomial::new(n);
    for (ci, f) in forms.iter().enumerate() {
        if u[ci] % 9 != 0 {
            poly.affine.insert(f.clone(), u[ci] % 9);
        }
    }
    for (qi, &(p, q)) in quad_monomials.iter().enumerate() {
        let v = u[forms.len() + qi] % 3;
        if v != 0 {
            poly.quad.pairs.insert((p, q), v);
        }
    }
    for p in 0..n {
        poly.quad.squares[p] = u[forms.len() + quad_monomials.len() + p] % 3;
    }
    Ok(poly)
}

/// Reduce every A_f to {0, 1, 8}: multiples of three move into the
/// zeta_3-level part via zeta_9^(3m lift(f)) = zeta_3^(m f). The
/// represented exponent is unchanged.
pub fn normalize(p: &PhasePolynomial) -> PhasePolynomial {
    let mut out = PhasePolynomial::new(p.n);
    out.quad = p.quad.clone();
    out.global = p.global;
    for (f, &a) in &p.affine {
        let a = a % 9;
        let (residue, absorb) = match a % 3 {
            0 => (0u8, a / 3),
            1 => (1u8, a / 3),
            _ => (8u8, a / 3 + 1), // a = 3k+2 = 3(k+1) - 1
        };
        if absorb % 3 != 0 {
            out.quad.add_affine(absorb % 3, f);
        }
        if residue != 0 {
            out.affine.insert(f.clone(), residue);
        }
    }
    out
}

/// Minimal-P9 search for small widths: find a phase polynomial for `e`
/// with at most `max_terms` nonzero +-1 affine coefficients. Candidates
/// are scanned in lexicographic order, so the result is deterministic.
pub fn minimal_decomposition(e: &[u8], n: usize, max_terms: usize) -> Option<PhasePolynomial> {
    let forms: Vec<AffineForm> =
        all_affine_forms(n).into_iter().filter(|f| !f.is_constant()).collect();
    let points = 3usize.pow(n as u32);
    let xs: Vec<Vec<Trit>> = (0..points).map(|i| unpack_state(i, n)).collect();
    let lift: Vec<Vec<u8>> = forms.iter().map(|f| xs.iter().map(|x| f.eval(x)).collect()).collect();

    // residual r(x) must be constant mod 3 and its zeta_3 part must fit a
    // degree-<=2 polynomial
    let try_terms = |chosen: &[(usize, bool)]| -> Option<PhasePolynomial> {
        let mut r = vec![0i32; points];
        for (row, slot) in r.iter_mut().enumerate() {
            let mut acc = e[row] as i32;
            for &(fi, positive) in chosen {
                if positive {
                    acc -= lift[fi][row] as i32;
                } else {
                    acc += lift[fi][row] as i32;
                }
            }
            *slot = acc.rem_euclid(9);
        }
        let base = r[0] % 3;
        if r.iter().any(|&v| v % 3 != base) {
            return None;
        }
        let q: Vec<u8> = r.iter().map(|&v| (((v - r[0]).rem_euclid(9)) / 3) as u8).collect();
        // fit q with pairs + squares + linears over F3
        type Mono = Box<dyn Fn(&[Trit]) -> u8>;
        let mut monos: Vec<Mono> = Vec::new();
        let mut pair_idx = Vec::new();
        for p in 0..n {
            for s in (p + 1)..n {
                pair_idx.push((p, s));
            }
        }
        for &(p, s) in &pair_idx {
            monos.push(Box::new(move |x: &[Trit]| (x[p] * x[s]) % 3));
        }
        for p in 0..n {
            monos.push(Box::new(move |x: &[Trit]| (x[p] * x[p]) % 3));
        }
        for p in 0..n {
            monos.push(Box::new(move |x: &[Trit]| x[p] % 3));
        }
        let cols = monos.len();
        let mat: Vec<Vec<u8>> = xs.iter().map(|x| monos.iter().map(|m| m(x)).collect()).collect();
        let sol = solve_mod3(mat, q, cols)?;

        let mut poly = PhasePolynomial::new(n);
        for &(fi, positive) in chosen {
            poly.affine.insert(forms[fi].clone(), if positive { 1 } else { 8 });
        }
        for (k, &(p, s)) in pair_idx.iter().enumerate() {
            if sol[k] != 0 {
                poly.quad.pairs.insert((p, s), sol[k]);
            }
        }
        for p in 0..n {
            poly.quad.squares[p] = sol[pair_idx.len() + p];
            poly.quad.linears[p] = sol[pair_idx.len() + n + p];
        }
        poly.global = (r[0] % 9) as u8;
        Some(poly)
    };

    // k-subsets with sign patterns, lexicographic
    fn next_combination(chosen: &mut [usize], n_options: usize) -> bool {
        let k = chosen.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if chosen[i] < n_options - (k - i) {
                chosen[i] += 1;
                for j in i + 1..k {
                    chosen[j] = chosen[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    let options: Vec<(usize, bool)> =
        (0..forms.len()).flat_map(|fi| [(fi, true), (fi, false)]).collect();
    for k in 0..=max_terms.min(options.len()) {
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            let terms: Vec<(usize, bool)> = chosen.iter().map(|&i| options[i]).collect();
            // skip picks reusing one form with both signs
            let mut fis: Vec<usize> = terms.iter().map(|t| t.0).collect();
            fis.dedup();
            if fis.len() == terms.len() {
                if let Some(poly) = try_terms(&terms) {
                    return Some(poly);
                }
            }
            if !next_combination(&mut chosen, options.len()) {
                break;
            }
        }
    }
    None
}

/// The literal Formula-(8) phase polynomial for zeta_3^(ijk): seven
/// affine forms with integer weights.
pub fn eq8_polynomial() -> PhasePolynomial {
    let mut p = PhasePolynomial::new(3);
    let term = |konst: u8, ci: u8, cj: u8, ck: u8| AffineForm { coefs: vec![ci, cj, ck], konst };
    let entries = [
        (term(1, 2, 1, 1), 1u8),
        (term(1, 2, 1, 2), 2),
        (term(2, 2, 1, 2), 6),
        (term(1, 2, 2, 1), 2),
        (term(2, 2, 2, 1), 6),
        (term(1, 2, 2, 2), 4),
        (term(2, 2, 2, 2), 6),
    ];
    for (f, a) in entries {
        p.affine.insert(f, a);
    }
    p
}

/// Evaluate the Formula-(8) right-hand exponent at (i, j, k), mod 9.
pub fn eq8_exponent(i: Trit, j: Trit, k: Trit) -> u8 {
    eq8_polynomial().exponent(&[i, j, k])
}

/// Emit a Clifford+P9 circuit for a normalized phase polynomial. Returns
/// the circuit and the exponent `missing` such that the target diagonal
/// equals zeta_9^missing times the circuit's unitary.
pub fn synthesize_diagonal(p: &PhasePolynomial) -> (Circuit, u8) {
    let n = p.n;
    let mut c = Circuit::new(n);
    let mut missing: u32 = p.global as u32 + 3 * p.quad.konst as u32;

    for (f, &a) in &p.affine {
        assert!(a == 1 || a == 8, "synthesize_diagonal expects a normalized polynomial");
        let positive = a == 1;
        if f.is_constant() {
            missing = (missing + a as u32 * f.konst as u32) % 9;
            continue;
        }
        // an invertible affine map whose first output coordinate is f(x)
        let pivot = f.coefs.iter().position(|&v| v != 0).expect("nonconstant form");
        let mut matrix = vec![vec![0u8; n]; n];
        matrix[0] = f.coefs.clone();
        let mut row = 1;
        for j in 0..n {
            if j != pivot {
                matrix[row][j] = 1;
                row += 1;
            }
        }
        let mut offset = vec![0u8; n];
        offset[0] = f.konst;
        let gate = AffineGate { n, matrix, offset };
        let t = decompose_affine(&gate).expect("pivot keeps the matrix invertible");
        c.gates.extend(t.gates.iter().cloned());
        c.push(if positive { P9 } else { P9Inv }, &[0]);
        c.gates.extend(t.inverse().gates);
        // P9 carries zeta_9^(v-1): the -1 stays missing
        missing = if positive { (missing + 1) % 9 } else { (missing + 8) % 9 };
    }

    for (&(pw, qw), &v) in &p.quad.pairs {
        match v {
            1 => c.push(Cz, &[pw, qw]),
            2 => c.push(CzInv, &[pw, qw]),
            _ => {}
        }
    }
    for (pw, &v) in p.quad.squares.iter().enumerate() {
        // zeta_3^(v^2) = Z Q^-1 on the wire
        match v {
            1 => {
                c.push(Z, &[pw]);
                c.push(QInv, &[pw]);
            }
            2 => {
                c.push(ZInv, &[pw]);
                c.push(Q, &[pw]);
            }
            _ => {}
        }
    }
    for (pw, &v) in p.quad.linears.iter().enumerate() {
        match v {
            1 => c.push(Z, &[pw]),
            2 => c.push(ZInv, &[pw]),
            _ => {}
        }
    }
    (c, (missing % 9) as u8)
}

/// Synthesized CZ2 (soft-soft-controlled Z) from the normalized
/// Formula-(8) polynomial: exactly four P9-family gates.
pub fn cz2_circuit() -> (Circuit, u8) {
    synthesize_diagonal(&normalize(&eq8_polynomial()))
}

/// Synthesized hard-controlled Z on control value c: the minimal
/// decomposition has three P9-family gates.
pub fn c2z_circuit(ctrl: Trit) -> (Circuit, u8) {
    let e: Vec<u8> = (0..9)
        .map(|idx| {
            let x = unpack_state(idx, 2);
            // wire 0 = control, wire 1 = target
            if x[0] == ctrl {
                (3 * x[1]) % 9
            } else {
                0
            }
        })
        .collect();
    let poly = minimal_decomposition(&e, 2, 3)
        .unwrap_or_else(|| normalize(&solve_affine_decomposition(&e, 2).expect("in the lattice")));
    synthesize_diagonal(&poly)
}

/// The Clifford+P9 replacement of one templated kind, on the kind's own
/// wires: the target gate is H-conjugated into a diagonal and the
/// diagonal synthesized. The unitary equals the gate's exactly, up to a
/// global phase. Supported kinds: CX(c), Horner, and their inverses.
pub fn superm_template(kind: GateKind) -> Result<Circuit, crate::lower::LowerError> {
    let circ = match kind {
        Cx(v) | CxInv(v) => {
            let (d, _) = c2z_circuit(v);
            let d = if matches!(kind, CxInv(_)) { d.inverse() } else { d };
            let mut r = Circuit::new(2);
            r.push(H, &[1]);
            r.gates.extend(d.gates);
            r.push(HInv, &[1]);
            r
        }
        Horner | HornerInv => {
            let (d, _) = cz2_circuit();
            let d = if kind == HornerInv { d.inverse() } else { d };
            let mut r = Circuit::new(3);
            r.push(H, &[2]);
            r.gates.extend(d.gates);
            r.push(HInv, &[2]);
            r
        }
        _ => {
            return Err(crate::lower::LowerError::Untemplated {
                kind: kind.token(),
                hint: "lower to Clifford+CX first",
            })
        }
    };
    Ok(circ)
}

/// Lower a circuit over Clifford + {CX, Horner, P9} (and inverses) to the
/// supermetaplectic basis by H-conjugating the synthesized diagonals.
pub fn lower_to_superm(c: &Circuit) -> Result<Circuit, crate::lower::LowerError> {
    let mut out = Circuit::new(c.width);
    out.registers = c.registers.clone();
    let marks: std::collections::BTreeSet<usize> = c.phase_marks.iter().copied().collect();
    let mut cache: BTreeMap<String, Circuit> = BTreeMap::new();
    for (i, g) in c.gates.iter().enumerate() {
        if marks.contains(&i) {
            out.mark_phase();
        }
        if g.kind.is_clifford() || matches!(g.kind, P9 | P9Inv) {
            out.gates.push(g.clone());
        } else {
            let token = g.kind.token();
            let r = match cache.get(&token) {
                Some(hit) => hit.clone(),
                None => {
                    let t = superm_template(g.kind)?;
                    cache.insert(token, t.clone());
                    t
                }
            };
            let emb = r.embed(c.width, &g.wires).expect("replacement fits");
            out.gates.extend(emb.gates);
        }
    }
    out.seal_phases();
    Ok(out)
}

/// Count of P9-family gates in a circuit.
pub fn p9_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| matches!(g.kind, P9 | P9Inv)).count()
}

/// Exponent table (mod 9, relative to the all-zeros state) of a named
/// target diagonal, for tests and the self-test command.
pub fn target_table(kind: GateKind) -> Vec<u8> {
    let m = gate_matrix(kind);
    crate::cyclo::diagonal_exponents(&m).expect("diagonal target")
}
