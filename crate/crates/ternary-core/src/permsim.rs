//! Exact classical simulation of reversible circuits, permutation
//! extraction, and recognition/decomposition of affine reversible gates
//! (the subgroup generated by SUM, S12, X).

use crate::circuit::{pack_state, unpack_state, Circuit};
use crate::gate::GateKind;
use crate::trit::{t_add, t_mul, t_sub, Trit};
use std::fmt;

/// Default cap on exhaustive state enumeration: 3^12 states.
pub const DEFAULT_MAX_STATES: usize = 531_441;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimError {
    NotClassical { index: usize, kind: String },
    TooWide { width: usize, states: usize, bound: usize },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::NotClassical { index, kind } => {
                write!(f, "not a permutation circuit: gate {index} ({kind}) is non-classical")
            }
            SimError::TooWide { width, states, bound } => {
                write!(f, "width {width} needs {states} states, over the configured bound {bound}")
            }
        }
    }
}

impl std::error::Error for SimError {}

/// Run a permutation circuit on one basis assignment (trits indexed by
/// wire).
pub fn apply_classical(c: &Circuit, input: &[Trit]) -> Result<Vec<Trit>, SimError> {
    assert_eq!(input.len(), c.width, "input width mismatch");
    let mut state = input.to_vec();
    apply_classical_in_place(c, &mut state)?;
    Ok(state)
}

pub fn apply_classical_in_place(c: &Circuit, state: &mut [Trit]) -> Result<(), SimError> {
    let mut scratch = [0u8; 3];
    for (index, g) in c.gates.iter().enumerate() {
        if !g.kind.is_classical() {
            return Err(SimError::NotClassical { index, kind: g.kind.token() });
        }
        let k = g.wires.len();
        for (s, &w) in scratch[..k].iter_mut().zip(&g.wires) {
            *s = state[w];
        }
        g.kind.apply(&mut scratch[..k]);
        for (&s, &w) in scratch[..k].iter().zip(&g.wires) {
            state[w] = s;
        }
    }
    Ok(())
}

/// The classical action of a reversible circuit on {0, ..., 3^w - 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pub width: usize,
    pub mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(width: usize) -> Self {
        Permutation { width, mapping: (0..3usize.pow(width as u32)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// self after other (apply `other` first).
    pub fn after(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.width, other.width);
        Permutation {
            width: self.width,
            mapping: other.mapping.iter().map(|&m| self.mapping[m]).collect(),
        }
    }
}

/// Extract the full permutation of a classical circuit, bounded by
/// `max_states`.
pub fn permutation_of_bounded(c: &Circuit, max_states: usize) -> Result<Permutation, SimError> {
    let states = 3usize.checked_pow(c.width as u32).unwrap_or(usize::MAX);
    if states > max_states {
        return Err(SimError::TooWide { width: c.width, states, bound: max_states });
    }
    let mut mapping = Vec::with_capacity(states);
    let mut state = vec![0u8; c.width];
    for x in 0..states {
        let src = unpack_state(x, c.width);
        state.copy_from_slice(&src);
        apply_classical_in_place(c, &mut state)?;
        mapping.push(pack_state(&state));
    }
    Ok(Permutation { width: c.width, mapping })
}

pub fn permutation_of(c: &Circuit) -> Result<Permutation, SimError> {
    permutation_of_bounded(c, DEFAULT_MAX_STATES)
}

/// An affine reversible gate x -> A.x + v with A invertible over F3.
/// A is stored row-major; row r of A describes output wire r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineGate {
    pub n: usize,
    pub matrix: Vec<Vec<Trit>>,
    pub offset: Vec<Trit>,
}

impl AffineGate {
    pub fn apply(&self, x: &[Trit]) -> Vec<Trit> {
        (0..self.n)
            .map(|r| {
                let mut acc = self.offset[r];
                for j in 0..self.n {
                    acc = t_add(acc, t_mul(self.matrix[r][j], x[j]));
                }
                acc
            })
            .collect()
    }
}

/// Determinant over F3 (Gaussian elimination).
fn det3(m: &[Vec<Trit>]) -> Trit {
    let n = m.len();
    let mut a: Vec<Vec<Trit>> = m.to_vec();
    let mut det: Trit = 1;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| a[r][col] != 0) {
            Some(p) => p,
            None => return 0,
        };
        if pivot != col {
            a.swap(pivot, col);
            det = t_mul(det, 2); // row swap flips sign; -1 = 2 mod 3
        }
        det = t_mul(det, a[col][col]);
        let inv = if a[col][col] == 1 { 1 } else { 2 };
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = t_mul(a[r][col], inv);
                for k in col..n {
                    let sub = t_mul(factor, a[col][k]);
                    a[r][k] = t_sub(a[r][k], sub);
                }
            }
        }
    }
    det
}

/// Recognize a permutation as affine: interpolate A and v from the images
/// of 0 and the unit vectors, then verify every point.
pub fn is_affine(p: &Permutation) -> Option<AffineGate> {
    let n = p.width;
    let offset = unpack_state(p.mapping[0], n);
    let mut matrix = vec![vec![0u8; n]; n];
    for j in 0..n {
        let col = unpack_state(p.mapping[3usize.pow(j as u32)], n);
        for (r, row) in matrix.iter_mut().enumerate() {
            row[j] = t_sub(col[r], offset[r]);
        }
    }
    let g = AffineGate { n, matrix, offset };
    for (x, &img) in p.mapping.iter().enumerate() {
        if pack_state(&g.apply(&unpack_state(x, n))) != img {
            return None;
        }
    }
    if det3(&g.matrix) == 0 {
        return None;
    }
    Some(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularMatrix;

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix is singular over F3")
    }
}

impl std::error::Error for SingularMatrix {}

/// Decompose an affine gate into a circuit over SUM, S12, X.
///
/// Row-reduces A by the three row operations realized by the generators:
/// row add (SUM), row scaling by 2 (S12), and row swap, which expands to
/// SUM/S12 words. The returned circuit's permutation equals x -> A.x + v.
pub fn decompose_affine(g: &AffineGate) -> Result<Circuit, SingularMatrix> {
    let n = g.n;
    if det3(&g.matrix) == 0 {
        return Err(SingularMatrix);
    }
    // Left-multiplications L_k ... L_1 A = I. Each L is one of
    //   rowadd(i,j):  row j += row i   (= A_ij, gate SUM wires (i, j))
    //   rowscale(i):  row i *= 2       (= M_i, gate S12 wire i)
    //   rowswap(i,j): expands to M_i A_ij A_ji^-1 A_ij
    #[derive(Clone, Copy)]
    enum RowOp {
        Add { src: usize, dst: usize, factor: Trit },
        Scale(usize),
        Swap(usize, usize),
    }
    let mut a = g.matrix.clone();
    let mut ops: Vec<RowOp> = Vec::new();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0).expect("invertible");
        if pivot != col {
            ops.push(RowOp::Swap(col, pivot));
            a.swap(col, pivot);
        }
        if a[col][col] == 2 {
            ops.push(RowOp::Scale(col));
            for k in 0..n {
                a[col][k] = t_mul(a[col][k], 2);
            }
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = t_sub(0, a[r][col]);
                ops.push(RowOp::Add { src: col, dst: r, factor });
                for k in 0..n {
                    let add = t_mul(factor, a[col][k]);
                    a[r][k] = t_add(a[r][k], add);
                }
            }
        }
    }
    // A = L_1^-1 ... L_k^-1, so the circuit applies the inverse ops in
    // reverse emission order, then the offset as X gates.
    let mut c = Circuit::new(n);
    for op in ops.iter().rev() {
        match *op {
            RowOp::Add { src, dst, factor } => {
                // inverse of "row dst += factor*row src" is subtraction
                match factor {
                    1 => c.push(GateKind::SumInv, &[src, dst]),
                    2 => c.push(GateKind::Sum, &[src, dst]),
                    _ => unreachable!(),
                }
            }
            RowOp::Scale(i) => c.push(GateKind::S12, &[i]),
            RowOp::Swap(i, j) => {
                // B_ij = M_i A_ij A_ji^-1 A_ij, self-inverse; as a circuit
                // the rightmost factor applies first.
                c.push(GateKind::Sum, &[i, j]);
                c.push(GateKind::SumInv, &[j, i]);
                c.push(GateKind::Sum, &[i, j]);
                c.push(GateKind::S12, &[i]);
            }
        }
    }
    for (i, &v) in g.offset.iter().enumerate() {
        match v {
            1 => c.push(GateKind::X, &[i]),
            2 => c.push(GateKind::XInv, &[i]),
            _ => {}
        }
    }
    Ok(c)
}

/// |GL(n,3)| * 3^n, the order of the affine group.
pub fn affine_group_order(n: usize) -> u128 {
    let pn = 3u128.pow(n as u32);
    let mut order = pn;
    for k in 0..n {
        order *= pn - 3u128.pow(k as u32);
    }
    order
}

/// Brute-force closure of the {S12, X, SUM} generator permutations on
/// 3^n points. Feasible for n <= 2; used as the oracle for
/// [`affine_group_order`].
pub fn generated_group_order(n: usize) -> usize {
    let states = 3usize.pow(n as u32);
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let perm_of = |c: &Circuit| permutation_of(c).unwrap().mapping;
    for i in 0..n {
        let mut c = Circuit::new(n);
        c.push(GateKind::S12, &[i]);
        gens.push(perm_of(&c));
        let mut c = Circuit::new(n);
        c.push(GateKind::X, &[i]);
        gens.push(perm_of(&c));
        for j in 0..n {
            if i != j {
                let mut c = Circuit::new(n);
                c.push(GateKind::Sum, &[i, j]);
                gens.push(perm_of(&c));
            }
        }
    }
    let identity: Vec<usize> = (0..states).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Which integer-arithmetic contract a circuit is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    /// Full addition: sum register = a + b + cin (n+1 trits).
    Add,
    /// Addition mod 3^n: sum register = (a + b) mod 3^n (n trits).
    AddMod,
    /// Subtraction: result = (a - b) mod 3^n; high wire (if any) = borrow.
    Sub,
    /// Comparison: R = 1 iff a < b.
    Cmp,
}

/// How inputs are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub cin: Trit,
    pub input: Vec<Trit>,
    pub output: Vec<Trit>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub cases: u64,
    pub failure: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    MissingRegisters,
    NotPermutation,
    Sim(SimError),
    Range(crate::trit::RangeError),
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::MissingRegisters => write!(f, "circuit carries no register map"),
            CheckError::NotPermutation => {
                write!(f, "circuit does not act as a basis permutation (up to phase)")
            }
            CheckError::Sim(e) => write!(f, "{e}"),
            CheckError::Range(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CheckError {}

impl From<SimError> for CheckError {
    fn from(e: SimError) -> Self {
        CheckError::Sim(e)
    }
}

/// splitmix64; the sampled mode's deterministic source.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Number of admissible inputs an oracle check enumerates exhaustively.
pub fn oracle_case_count(c: &Circuit, n: usize) -> Result<u64, CheckError> {
    let regs = c.registers.as_ref().ok_or(CheckError::MissingRegisters)?;
    let limit = crate::trit::pow3(n).map_err(CheckError::Range)?;
    let cins = if regs.cin.is_some() { 2 } else { 1 };
    limit.checked_mul(limit).and_then(|s| s.checked_mul(cins)).ok_or(CheckError::Sim(
        SimError::TooWide { width: c.width, states: usize::MAX, bound: DEFAULT_MAX_STATES },
    ))
}

/// Decode a case index into the (a, b, cin) triple it enumerates.
pub fn case_of_index(idx: u64, limit: u64, cin_free: bool) -> (u64, u64, Trit) {
    if cin_free {
        ((idx / 2) / limit, (idx / 2) % limit, (idx % 2) as Trit)
    } else {
        (idx / limit, idx % limit, 0)
    }
}

/// The circuit's action on one basis state, falling back to the exact
/// sparse simulator when non-classical gates are present (the circuit
/// must then act as a permutation up to a phase, which lowered circuits
/// do).
pub fn basis_image(c: &Circuit, input: &[Trit]) -> Result<Vec<Trit>, CheckError> {
    let mut state = input.to_vec();
    match apply_classical_in_place(c, &mut state) {
        Ok(()) => Ok(state),
        Err(SimError::NotClassical { .. }) => {
            let s = crate::cyclo::simulate_basis_state(c, input);
            if s.len() != 1 {
                return Err(CheckError::NotPermutation);
            }
            let idx = *s.keys().next().expect("one term");
            Ok(crate::circuit::unpack_state(idx, c.width))
        }
        Err(e) => Err(CheckError::Sim(e)),
    }
}

/// Run one admissible input through the circuit and compare against the
/// oracle. Every wire that is not a designated output must return to its
/// input value.
pub fn check_single_case(
    c: &Circuit,
    kind: OracleKind,
    n: usize,
    a: u64,
    b: u64,
    cin: Trit,
) -> Result<Option<Counterexample>, CheckError> {
    let regs = c.registers.as_ref().ok_or(CheckError::MissingRegisters)?;
    let limit = crate::trit::pow3(n).map_err(CheckError::Range)?;

    let run_case = |a: u64, b: u64, cin: Trit| -> Result<Option<Counterexample>, CheckError> {
        let mut input = vec![0u8; c.width];
        let at = crate::trit::to_trits(a, n).map_err(CheckError::Range)?;
        let bt = crate::trit::to_trits(b, n).map_err(CheckError::Range)?;
        for i in 0..n {
            input[regs.a[i]] = at.trits[i];
            input[regs.b[i]] = bt.trits[i];
        }
        if let Some(w) = regs.cin {
            input[w] = cin;
        }
        let state = basis_image(c, &input)?;

        let fail = |detail: String, state: &[Trit]| {
            Some(Counterexample { a, b, cin, input: input.clone(), output: state.to_vec(), detail })
        };

        // designated output wires and their expected trits
        let mut expected: Vec<(usize, Trit)> = Vec::new();
        match kind {
            OracleKind::Add => {
                let s = crate::trit::add_oracle(a, b, cin, n).map_err(CheckError::Range)?;
                let (sum_wires, high) = if regs.z.len() == n + 1 {
                    (&regs.z[..n], Some(regs.z[n]))
                } else {
                    (&regs.b[..], regs.ovf)
                };
                for i in 0..n {
                    expected.push((sum_wires[i], s.trits[i]));
                }
                if let Some(w) = high {
                    expected.push((w, s.trits[n]));
                }
            }
            OracleKind::AddMod => {
                let s = crate::trit::to_trits((a + b) % limit, n).map_err(CheckError::Range)?;
                let sum_wires = if regs.z.len() >= n { &regs.z[..n] } else { &regs.b[..] };
                for i in 0..n {
                    expected.push((sum_wires[i], s.trits[i]));
                }
            }
            OracleKind::Sub => {
                let (d, borrow) = crate::trit::sub_oracle(a, b, n).map_err(CheckError::Range)?;
                let dt = crate::trit::to_trits(d, n).map_err(CheckError::Range)?;
                let (res_wires, borrow_wire) = if regs.z.len() >= n {
                    (&regs.z[..n], regs.z.get(n).copied().or(regs.ovf))
                } else {
                    (&regs.b[..], regs.ovf)
                };
                for i in 0..n {
                    expected.push((res_wires[i], dt.trits[i]));
                }
                if let Some(w) = borrow_wire {
                    expected.push((w, borrow as Trit));
                }
            }
            OracleKind::Cmp => {
                let r = regs.r.expect("comparator register map carries R");
                expected.push((r, crate::trit::cmp_oracle(a, b)));
            }
        }

        let output_wires: std::collections::BTreeSet<usize> =
            expected.iter().map(|&(w, _)| w).collect();
        for &(w, want) in &expected {
            if state[w] != want {
                return Ok(fail(
                    format!("output wire {w}: got {}, oracle says {want}", state[w]),
                    &state,
                ));
            }
        }
        for w in 0..c.width {
            if !output_wires.contains(&w) && state[w] != input[w] {
                return Ok(fail(
                    format!("wire {w} not restored: started {}, ended {}", input[w], state[w]),
                    &state,
                ));
            }
        }
        Ok(None)
    };
    run_case(a, b, cin)
}

/// Check a built circuit against its integer oracle on every admissible
/// input (or a seeded sample). Returns the first counterexample in input
/// order.
pub fn check_against_oracle(
    c: &Circuit,
    kind: OracleKind,
    n: usize,
    mode: CheckMode,
) -> Result<CheckReport, CheckError> {
    let regs = c.registers.as_ref().ok_or(CheckError::MissingRegisters)?;
    let limit = crate::trit::pow3(n).map_err(CheckError::Range)?;
    let cin_free = regs.cin.is_some();

    let mut cases = 0u64;
    match mode {
        CheckMode::Exhaustive => {
            let total = oracle_case_count(c, n)?;
            if total > DEFAULT_MAX_STATES as u64 * 8 {
                return Err(CheckError::Sim(SimError::TooWide {
                    width: c.width,
                    states: total.min(usize::MAX as u64) as usize,
                    bound: DEFAULT_MAX_STATES * 8,
                }));
            }
            for idx in 0..total {
                let (a, b, cin) = case_of_index(idx, limit, cin_free);
                cases += 1;
                if let Some(cex) = check_single_case(c, kind, n, a, b, cin)? {
                    return Ok(CheckReport { cases, failure: Some(cex) });
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = seed;
            for _ in 0..count {
                let a = splitmix64(&mut rng) % limit;
                let b = splitmix64(&mut rng) % limit;
                let cin = if cin_free { (splitmix64(&mut rng) % 2) as Trit } else { 0 };
                cases += 1;
                if let Some(cex) = check_single_case(c, kind, n, a, b, cin)? {
                    return Ok(CheckReport { cases, failure: Some(cex) });
                }
            }
        }
    }
    Ok(CheckReport { cases, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind::*;
    use crate::gate::Pair;

    #[test]
    fn classical_actions() {
        let mut c = Circuit::new(3);
        c.push(Horner, &[0, 1, 2]);
        assert_eq!(apply_classical(&c, &[1, 2, 0]).unwrap(), vec![1, 2, 2]);

        let mut c = Circuit::new(2);
        c.push(Cpx, &[0, 1]);
        assert_eq!(apply_classical(&c, &[2, 0]).unwrap(), vec![2, 1]);

        let mut c = Circuit::new(1);
        c.push(H, &[0]);
        assert!(matches!(apply_classical(&c, &[0]), Err(SimError::NotClassical { index: 0, .. })));
    }

    #[test]
    fn permutations_compose_and_invert() {
        let empty = Circuit::new(2);
        assert!(permutation_of(&empty).unwrap().is_identity());

        let mut c = Circuit::new(2);
        c.push(Swap2(Pair(0, 0), Pair(2, 2)), &[0, 1]);
        let p = permutation_of(&c).unwrap();
        // |00> <-> |22>: indices 0 and 8
        assert_eq!(p.mapping[0], 8);
        assert_eq!(p.mapping[8], 0);
        assert!((1..8).all(|i| p.mapping[i] == i));

        let mut c = Circuit::new(2);
        c.push(Sum, &[0, 1]);
        c.push(Cx(2), &[1, 0]);
        let p = permutation_of(&c).unwrap();
        let q = permutation_of(&c.inverse()).unwrap();
        assert!(q.after(&p).is_identity());

        // composition respects left-to-right application
        let mut c1 = Circuit::new(2);
        c1.push(Sum, &[0, 1]);
        let mut c2 = Circuit::new(2);
        c2.push(Cx(2), &[1, 0]);
        let p12 = permutation_of(&c1.compose(&c2).unwrap()).unwrap();
        let expect = permutation_of(&c2).unwrap().after(&permutation_of(&c1).unwrap());
        assert_eq!(p12, expect);
    }

    #[test]
    fn affine_recognition() {
        // SUM(0,1): A = [[1,0],[1,1]] (row 1 accumulates wire 0), v = 0
        let mut c = Circuit::new(2);
        c.push(Sum, &[0, 1]);
        let g = is_affine(&permutation_of(&c).unwrap()).unwrap();
        assert_eq!(g.matrix, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(g.offset, vec![0, 0]);

        // X on wire 0: A = I, v = e0
        let mut c = Circuit::new(2);
        c.push(X, &[0]);
        let g = is_affine(&permutation_of(&c).unwrap()).unwrap();
        assert_eq!(g.matrix, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(g.offset, vec![1, 0]);

        // HORNER is nonlinear
        let mut c = Circuit::new(3);
        c.push(Horner, &[0, 1, 2]);
        assert!(is_affine(&permutation_of(&c).unwrap()).is_none());
    }

    #[test]
    fn affine_decomposition_round_trips() {
        // (A = (2), v = 0) on one wire is a single S12
        let g = AffineGate { n: 1, matrix: vec![vec![2]], offset: vec![0] };
        let c = decompose_affine(&g).unwrap();
        assert_eq!(c.gates.len(), 1);
        assert_eq!(c.gates[0].kind, S12);

        let g = AffineGate { n: 2, matrix: vec![vec![1, 0], vec![0, 1]], offset: vec![1, 0] };
        let c = decompose_affine(&g).unwrap();
        assert_eq!(c.gates.len(), 1);
        assert_eq!(c.gates[0].kind, X);

        let singular =
            AffineGate { n: 2, matrix: vec![vec![1, 2], vec![2, 1]], offset: vec![0, 0] };
        assert!(decompose_affine(&singular).is_err());

        // seeded random pairs round-trip through the circuit
        let mut rng = 0x5EED_u64;
        for n in 1..=4usize {
            let mut done = 0;
            while done < 30 {
                let mut matrix = vec![vec![0u8; n]; n];
                for row in matrix.iter_mut() {
                    for e in row.iter_mut() {
                        *e = (splitmix64(&mut rng) % 3) as Trit;
                    }
                }
                if det3(&matrix) == 0 {
                    continue;
                }
                let offset: Vec<Trit> =
                    (0..n).map(|_| (splitmix64(&mut rng) % 3) as Trit).collect();
                let g = AffineGate { n, matrix, offset };
                let c = decompose_affine(&g).unwrap();
                assert!(c.gates.iter().all(|gi| matches!(gi.kind, Sum | SumInv | S12 | X | XInv)));
                let back = is_affine(&permutation_of(&c).unwrap()).unwrap();
                assert_eq!(back, g);
                done += 1;
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(affine_group_order(1), 6);
        assert_eq!(affine_group_order(2), 432);
        assert_eq!(generated_group_order(1), 6); // all of S3
        assert_eq!(generated_group_order(2), 432);
    }
}
