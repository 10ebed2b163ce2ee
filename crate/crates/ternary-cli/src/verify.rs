//! Oracle verification orchestration: exhaustive runs partitioned over a
//! worker pool with deterministic reduction, and seeded sampling.

use ternary_core::circuit::Circuit;
use ternary_core::permsim::{
    case_of_index, check_single_case, oracle_case_count, CheckError, Counterexample, OracleKind,
};
use ternary_core::trit::pow3;

pub struct VerifyOutcome {
    pub cases: u64,
    pub failure: Option<(u64, Counterexample)>,
}

/// Exhaustive check over all admissible inputs, split across `jobs`
/// threads. The reported failure is always the one with the smallest
/// case index, so the output is schedule-independent.
pub fn verify_exhaustive(
    c: &Circuit,
    kind: OracleKind,
    n: usize,
    jobs: usize,
) -> Result<VerifyOutcome, CheckError> {
    let total = oracle_case_count(c, n)?;
    let limit = pow3(n).map_err(CheckError::Range)?;
    let cin_free = c.registers.as_ref().is_some_and(|r| r.cin.is_some());
    let jobs = jobs.clamp(1, 64).min(total.max(1) as usize);

    let run_range = |from: u64, to: u64| -> Result<Option<(u64, Counterexample)>, CheckError> {
        for idx in from..to {
            let (a, b, cin) = case_of_index(idx, limit, cin_free);
            if let Some(cex) = check_single_case(c, kind, n, a, b, cin)? {
                return Ok(Some((idx, cex)));
            }
        }
        Ok(None)
    };

    if jobs == 1 {
        let failure = run_range(0, total)?;
        return Ok(VerifyOutcome { cases: total, failure });
    }

    let chunk = total.div_ceil(jobs as u64);
    let results: Vec<Result<Option<(u64, Counterexample)>, CheckError>> =
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for j in 0..jobs as u64 {
                let from = j * chunk;
                let to = (from + chunk).min(total);
                handles.push(scope.spawn(move || run_range(from, to)));
            }
            handles.into_iter().map(|h| h.join().expect("verify worker")).collect()
        });

    let mut failure: Option<(u64, Counterexample)> = None;
    for r in results {
        if let Some((idx, cex)) = r? {
            if failure.as_ref().is_none_or(|(best, _)| idx < *best) {
                failure = Some((idx, cex));
            }
        }
    }
    Ok(VerifyOutcome { cases: total, failure })
}

/// Seeded sampling; single-threaded and reproducible.
pub fn verify_sampled(
    c: &Circuit,
    kind: OracleKind,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<VerifyOutcome, CheckError> {
    let limit = pow3(n).map_err(CheckError::Range)?;
    let cin_free = c.registers.as_ref().is_some_and(|r| r.cin.is_some());
    let mut rng = seed;
    for i in 0..count {
        let a = ternary_core::permsim::splitmix64(&mut rng) % limit;
        let b = ternary_core::permsim::splitmix64(&mut rng) % limit;
        let cin =
            if cin_free { (ternary_core::permsim::splitmix64(&mut rng) % 2) as u8 } else { 0 };
        if let Some(cex) = check_single_case(c, kind, n, a, b, cin)? {
            return Ok(VerifyOutcome { cases: (i + 1) as u64, failure: Some((i as u64, cex)) });
        }
    }
    Ok(VerifyOutcome { cases: count as u64, failure: None })
}

/// Render a counterexample with role-annotated trit strings
/// (most-significant trit first, as the tables print them).
pub fn render_counterexample(c: &Circuit, cex: &Counterexample) -> String {
    let mut out = String::new();
    out.push_str(&format!("counterexample: a={} b={} cin={}\n", cex.a, cex.b, cex.cin));
    if let Some(regs) = &c.registers {
        let render = |wires: &[usize], state: &[u8]| -> String {
            wires.iter().rev().map(|&w| char::from(b'0' + state[w])).collect()
        };
        let mut role_line = |name: &str, wires: &[usize]| {
            if !wires.is_empty() {
                out.push_str(&format!(
                    "  {name}: in={} out={}\n",
                    render(wires, &cex.input),
                    render(wires, &cex.output)
                ));
            }
        };
        role_line("A", &regs.a);
        role_line("B", &regs.b);
        role_line("Z", &regs.z);
        role_line("X", &regs.x);
        if let Some(w) = regs.cin {
            role_line("CIN", &[w]);
        }
        if let Some(w) = regs.ovf {
            role_line("OVF", &[w]);
        }
        if let Some(w) = regs.r {
            role_line("R", &[w]);
        }
    }
    out.push_str(&format!("  {}\n", cex.detail));
    out
}
