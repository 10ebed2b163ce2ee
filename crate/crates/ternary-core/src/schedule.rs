//! The carry look-ahead round plan: which carry status indicators are
//! merged in which round of the P-, C-, and P^-1-processes, and where
//! each intermediate indicator lives.

use crate::trit::{floor_log2, floor_log2_div3};
use std::collections::BTreeMap;

/// Where a carry status indicator is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Loc {
    /// Level-0 indicator `C[i,i+1]` on the B register of position i.
    B(usize),
    /// A `C[0,j]` written to the output register `Z[j]`.
    Z(usize),
    /// An intermediate indicator in ancilla slot k.
    X(usize),
}

/// One merge: `C[lo,hi]` = `C[lo,mid]` (.) `C[mid,hi]`, written to `out`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeJob {
    pub lo: usize,
    pub mid: usize,
    pub hi: usize,
    pub left: Loc,
    pub right: Loc,
    pub out: Loc,
}

/// The three scheduled processes of the carry network.
#[derive(Debug, Clone, Default)]
pub struct RoundPlan {
    /// `P[t]`-rounds for t = 1..floor(log n): `C[2^t m, 2^t(m+1)]` for each m.
    pub p_rounds: Vec<Vec<MergeJob>>,
    /// `C[t]`-rounds for t = floor(log(n/3))..0 descending: `C[0, 2^t(2m+1)]`.
    pub c_rounds: Vec<Vec<MergeJob>>,
    /// `P^-1[t]`-rounds for t = floor(log n)-1..1 descending; uncomputes the
    /// ancilla-stored P results.
    pub pinv_rounds: Vec<Vec<MergeJob>>,
    /// Ancilla slot of every indicator that is not a `C[0,j]` (keyed by
    /// (level t, index m)).
    pub ancilla_of: BTreeMap<(usize, usize), usize>,
}

impl RoundPlan {
    pub fn total_p(&self) -> usize {
        self.p_rounds.iter().map(Vec::len).sum()
    }
    pub fn total_c(&self) -> usize {
        self.c_rounds.iter().map(Vec::len).sum()
    }
    pub fn total_pinv(&self) -> usize {
        self.pinv_rounds.iter().map(Vec::len).sum()
    }
    pub fn ancilla_count(&self) -> usize {
        self.ancilla_of.len()
    }
}

/// Storage location of the level-t indicator `C[2^t m, 2^t(m+1)]`.
fn loc_of(plan: &BTreeMap<(usize, usize), usize>, t: usize, m: usize) -> Loc {
    if t == 0 {
        if m == 0 {
            // C[0,1] is copied into Z[1] before the network runs
            Loc::Z(1)
        } else {
            Loc::B(m)
        }
    } else if m == 0 {
        Loc::Z(1 << t)
    } else {
        Loc::X(plan[&(t, m)])
    }
}

/// Build the round plan for n trit positions.
///
/// Job totals satisfy the closed forms |P| = n - omega(n),
/// |C| = n - floor(log n) - 1, |P^-1| = n - omega(n) - floor(log n),
/// with n - omega(n) - floor(log n) ancillas.
pub fn cla_schedule(n: usize) -> RoundPlan {
    let mut plan = RoundPlan::default();
    if n == 0 {
        return plan;
    }
    let log = floor_log2(n as u64).unwrap() as usize;
    let mut next_anc = 0usize;

    // P-process: rounds t = 1..=log, jobs m = 0..floor(n/2^t)-1.
    for t in 1..=log {
        let mut round = Vec::new();
        for m in 0..(n >> t) {
            let lo = m << t;
            let mid = lo + (1 << (t - 1));
            let hi = lo + (1 << t);
            let left = loc_of(&plan.ancilla_of, t - 1, 2 * m);
            let right = loc_of(&plan.ancilla_of, t - 1, 2 * m + 1);
            let out = if m == 0 {
                Loc::Z(hi)
            } else {
                let slot = next_anc;
                next_anc += 1;
                plan.ancilla_of.insert((t, m), slot);
                Loc::X(slot)
            };
            round.push(MergeJob { lo, mid, hi, left, right, out });
        }
        plan.p_rounds.push(round);
    }

    // C-process: rounds t = floor(log(n/3))..0 descending, jobs
    // m = 1..floor(n/2^(t+1) - 1/2) producing C[0, 2^t(2m+1)] from
    // C[0, 2^(t+1) m] and C[2^t 2m, 2^t(2m+1)].
    let l3 = floor_log2_div3(n as u64);
    if l3 >= 0 {
        for t in (0..=(l3 as usize)).rev() {
            let mut round = Vec::new();
            let m_max = (n - (1 << t)) >> (t + 1);
            for m in 1..=m_max {
                let mid = (2 * m) << t;
                let hi = mid + (1 << t);
                let left = Loc::Z(mid);
                let right = loc_of(&plan.ancilla_of, t, 2 * m);
                round.push(MergeJob { lo: 0, mid, hi, left, right, out: Loc::Z(hi) });
            }
            plan.c_rounds.push(round);
        }
    }

    // P^-1-process: rounds t = log-1..1 descending, jobs m = 1..floor(n/2^t)-1.
    for t in (1..log.max(1)).rev() {
        let mut round = Vec::new();
        for m in 1..(n >> t) {
            let lo = m << t;
            let mid = lo + (1 << (t - 1));
            let hi = lo + (1 << t);
            let left = loc_of(&plan.ancilla_of, t - 1, 2 * m);
            let right = loc_of(&plan.ancilla_of, t - 1, 2 * m + 1);
            let out = loc_of(&plan.ancilla_of, t, m);
            round.push(MergeJob { lo, mid, hi, left, right, out });
        }
        plan.pinv_rounds.push(round);
    }

    plan
}
