//! Command-line front end for the ternary arithmetic circuit suite.
//!
//! Subcommands: gen, lower, verify, run, matrix, report, selftest.
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::collections::BTreeMap;
use ternary_cli::{format, selftest, verify};
use ternary_core::adders::{build_cla_in_place, build_cla_out_of_place, build_ripple_adder};
use ternary_core::arith::{
    build_cla_comparator, build_cla_mod_adder, build_ripple_comparator, build_ripple_mod_adder,
    build_subtractor, Method, Variant,
};
use ternary_core::circuit::Circuit;
use ternary_core::cyclo::{circuit_matrix_bounded, simulate_basis_state};
use ternary_core::gate::GateKind;
use ternary_core::lower::{basis_check, lower_to_cx, Basis};
use ternary_core::permsim::{apply_classical, OracleKind};
use ternary_core::superm::lower_to_superm;

const USAGE: &str = "\
ternary - qutrit reversible-arithmetic circuit toolkit

USAGE:
  ternary gen <ripple-adder|cla-adder|subtractor|comparator> --n N
              [--variant out-of-place|in-place] [--mod]
              [--method ripple|cla] [--borrow] [-o FILE]
  ternary lower --basis <cx|superm> -i FILE [-o FILE]
  ternary verify --spec <add|add-mod|sub|cmp> --n N -i FILE
                 (--exhaustive | --samples K --seed S)
                 [--max-width W] [--jobs J]
  ternary run -i FILE --input TRITS
  ternary matrix -i FILE
  ternary report -i FILE [--json]
  ternary selftest

Circuits are read and written in the .t3 text format. Exhaustive
verification is bounded by TERNARY_MAX_STATES (default 3^12 cases).
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(&args));
}

struct Flags {
    values: BTreeMap<String, String>,
    switches: Vec<String>,
    positional: Vec<String>,
}

fn parse_flags(
    args: &[String],
    value_flags: &[&str],
    switch_flags: &[&str],
) -> Result<Flags, String> {
    let mut flags = Flags { values: BTreeMap::new(), switches: Vec::new(), positional: Vec::new() };
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if value_flags.contains(&a.as_str()) {
            let v = args.get(i + 1).ok_or_else(|| format!("flag {a} needs a value"))?;
            flags.values.insert(a.clone(), v.clone());
            i += 2;
        } else if switch_flags.contains(&a.as_str()) {
            flags.switches.push(a.clone());
            i += 1;
        } else if a.starts_with('-') {
            return Err(format!("unknown flag {a}"));
        } else {
            flags.positional.push(a.clone());
            i += 1;
        }
    }
    Ok(flags)
}

fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return 2;
    };
    let rest = &args[1..];
    let result = match command.as_str() {
        "gen" => cmd_gen(rest),
        "lower" => cmd_lower(rest),
        "verify" => cmd_verify(rest),
        "run" => cmd_run(rest),
        "matrix" => cmd_matrix(rest),
        "report" => cmd_report(rest),
        "selftest" => cmd_selftest(),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(0)
        }
        other => Err(format!("unknown command '{other}'")),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_circuit(flags: &Flags) -> Result<Circuit, String> {
    let path = flags.values.get("-i").ok_or("missing -i FILE")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    format::parse_text(&text).map_err(|e| format!("{path}: {e}"))
}

fn write_or_print(flags: &Flags, text: &str) -> Result<(), String> {
    match flags.values.get("-o") {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary_line(label: &str, c: &Circuit) -> Result<String, String> {
    let r = c.resource_report().map_err(|e| format!("invalid circuit: {}", e[0]))?;
    Ok(format!(
        "# {label}: width={} ancillas={} non_clifford={} depth={} gates={}",
        r.width, r.ancilla_count, r.non_clifford_count, r.non_clifford_depth, r.total_gates
    ))
}

fn cmd_gen(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(args, &["--n", "--variant", "--method", "-o"], &["--mod", "--borrow"])?;
    let kind = flags.positional.first().ok_or("gen needs a circuit kind")?.clone();
    let n: usize = flags
        .values
        .get("--n")
        .ok_or("gen needs --n")?
        .parse()
        .map_err(|_| "--n must be a positive integer".to_string())?;
    if n == 0 {
        return Err("--n must be at least 1".into());
    }
    let modular = flags.switches.iter().any(|s| s == "--mod");
    let borrow = flags.switches.iter().any(|s| s == "--borrow");
    let method = match flags.values.get("--method").map(String::as_str) {
        None | Some("ripple") => Method::Ripple,
        Some("cla") => Method::Cla,
        Some(other) => return Err(format!("unknown method '{other}'")),
    };
    let variant = match flags.values.get("--variant").map(String::as_str) {
        None | Some("out-of-place") => Variant::OutOfPlace,
        Some("in-place") => Variant::InPlace,
        Some(other) => return Err(format!("unknown variant '{other}'")),
    };

    let (label, circuit) = match kind.as_str() {
        "ripple-adder" => {
            if modular {
                (format!("ripple-adder n={n} mod"), build_ripple_mod_adder(n))
            } else {
                (format!("ripple-adder n={n}"), build_ripple_adder(n))
            }
        }
        "cla-adder" => {
            let vname = match variant {
                Variant::OutOfPlace => "out-of-place",
                Variant::InPlace => "in-place",
            };
            let c = match (modular, variant) {
                (true, v) => build_cla_mod_adder(n, v),
                (false, Variant::OutOfPlace) => build_cla_out_of_place(n),
                (false, Variant::InPlace) => build_cla_in_place(n),
            };
            (format!("cla-adder n={n} variant={vname}{}", if modular { " mod" } else { "" }), c)
        }
        "subtractor" => {
            let mname = if method == Method::Ripple { "ripple" } else { "cla" };
            (
                format!("subtractor n={n} method={mname} borrow={borrow}"),
                build_subtractor(n, method, borrow),
            )
        }
        "comparator" => match method {
            Method::Ripple => {
                (format!("comparator n={n} method=ripple"), build_ripple_comparator(n))
            }
            Method::Cla => (format!("comparator n={n} method=cla"), build_cla_comparator(n)),
        },
        other => return Err(format!("unknown circuit kind '{other}'")),
    };

    circuit.validate().map_err(|e| format!("generated circuit invalid: {}", e[0]))?;
    println!("{}", summary_line(&label, &circuit)?);
    write_or_print(&flags, &format::emit_text(&circuit))?;
    Ok(0)
}

fn count_kinds(c: &Circuit, pred: impl Fn(GateKind) -> bool) -> usize {
    c.gates.iter().filter(|g| pred(g.kind)).count()
}

fn cmd_lower(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(args, &["--basis", "-i", "-o"], &[])?;
    let basis = flags.values.get("--basis").ok_or("lower needs --basis cx|superm")?;
    let circuit = read_circuit(&flags)?;
    let lowered = match basis.as_str() {
        "cx" => lower_to_cx(&circuit).map_err(|e| e.to_string())?,
        "superm" => {
            // anything outside Clifford + {CX, Horner, P9} routes through
            // the CX lowering first
            let ready = circuit.gates.iter().all(|g| {
                g.kind.is_clifford()
                    || matches!(
                        g.kind,
                        GateKind::Cx(_)
                            | GateKind::CxInv(_)
                            | GateKind::Horner
                            | GateKind::HornerInv
                            | GateKind::P9
                            | GateKind::P9Inv
                    )
            });
            let staged = if ready {
                circuit.clone()
            } else {
                lower_to_cx(&circuit).map_err(|e| e.to_string())?
            };
            lower_to_superm(&staged).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown basis '{other}'")),
    };
    let target = if basis == "cx" { Basis::CliffordCx } else { Basis::Superm };
    basis_check(&lowered, target)
        .map_err(|e| format!("internal: lowered circuit fails basis check: {e}"))?;
    let cx = count_kinds(&lowered, |k| matches!(k, GateKind::Cx(_) | GateKind::CxInv(_)));
    let p9 = count_kinds(&lowered, |k| matches!(k, GateKind::P9 | GateKind::P9Inv));
    println!("# lower basis={basis}: gates={} CX={cx} P9={p9}", lowered.gates.len());
    write_or_print(&flags, &format::emit_text(&lowered))?;
    Ok(0)
}

fn max_cases_bound(flags: &Flags) -> Result<u64, String> {
    if let Some(w) = flags.values.get("--max-width") {
        let w: u32 = w.parse().map_err(|_| "--max-width must be an integer".to_string())?;
        if w > 40 {
            return Err("--max-width is limited to 40".into());
        }
        return Ok(3u64.pow(w));
    }
    match std::env::var("TERNARY_MAX_STATES") {
        Ok(v) => v.parse().map_err(|_| "TERNARY_MAX_STATES must be an integer".to_string()),
        Err(_) => Ok(ternary_core::permsim::DEFAULT_MAX_STATES as u64),
    }
}

fn cmd_verify(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(
        args,
        &["--spec", "--n", "-i", "--samples", "--seed", "--max-width", "--jobs"],
        &["--exhaustive"],
    )?;
    let spec = match flags.values.get("--spec").map(String::as_str) {
        Some("add") => OracleKind::Add,
        Some("add-mod") => OracleKind::AddMod,
        Some("sub") => OracleKind::Sub,
        Some("cmp") => OracleKind::Cmp,
        Some(other) => return Err(format!("unknown spec '{other}'")),
        None => return Err("verify needs --spec add|add-mod|sub|cmp".into()),
    };
    let n: usize = flags
        .values
        .get("--n")
        .ok_or("verify needs --n")?
        .parse()
        .map_err(|_| "--n must be a positive integer".to_string())?;
    let circuit = read_circuit(&flags)?;
    if circuit.registers.is_none() {
        return Err("circuit carries no REG lines; verification needs the register map".into());
    }
    let jobs: usize = flags
        .values
        .get("--jobs")
        .map(|v| v.parse().map_err(|_| "--jobs must be an integer".to_string()))
        .transpose()?
        .unwrap_or(1);

    let exhaustive = flags.switches.iter().any(|s| s == "--exhaustive");
    let outcome = if exhaustive {
        let total =
            ternary_core::permsim::oracle_case_count(&circuit, n).map_err(|e| e.to_string())?;
        let bound = max_cases_bound(&flags)?;
        if total > bound {
            return Err(format!(
                "exhaustive run needs {total} cases, over the bound {bound}; \
                 use --samples K --seed S or raise TERNARY_MAX_STATES"
            ));
        }
        println!("# verify mode=exhaustive cases={total} jobs={jobs}");
        verify::verify_exhaustive(&circuit, spec, n, jobs).map_err(|e| e.to_string())?
    } else {
        let samples: usize = flags
            .values
            .get("--samples")
            .ok_or("verify needs --exhaustive or --samples K")?
            .parse()
            .map_err(|_| "--samples must be an integer".to_string())?;
        let seed: u64 = flags
            .values
            .get("--seed")
            .map(|v| v.parse().map_err(|_| "--seed must be an integer".to_string()))
            .transpose()?
            .unwrap_or(0);
        println!("# verify mode=sampled samples={samples} seed={seed}");
        verify::verify_sampled(&circuit, spec, n, samples, seed).map_err(|e| e.to_string())?
    };

    match outcome.failure {
        None => {
            println!("PASS ({} cases)", outcome.cases);
            Ok(0)
        }
        Some((_, cex)) => {
            println!("FAIL");
            print!("{}", verify::render_counterexample(&circuit, &cex));
            Ok(1)
        }
    }
}

fn cmd_run(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(args, &["-i", "--input"], &[])?;
    let circuit = read_circuit(&flags)?;
    let input = flags.values.get("--input").ok_or("run needs --input TRITS")?;
    let trits: Vec<u8> = input
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0u8),
            '1' => Ok(1),
            '2' => Ok(2),
            other => Err(format!("bad trit '{other}' in --input")),
        })
        .collect::<Result<_, _>>()?;
    if trits.len() != circuit.width {
        return Err(format!(
            "--input has {} trits, circuit width is {} (wire 0 first)",
            trits.len(),
            circuit.width
        ));
    }
    let out = apply_classical(&circuit, &trits).map_err(|e| e.to_string())?;
    let rendered: String = out.iter().map(|&t| char::from(b'0' + t)).collect();
    println!("{rendered}");
    Ok(0)
}

fn cmd_matrix(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(args, &["-i"], &[])?;
    let circuit = read_circuit(&flags)?;
    if circuit.width <= 3 {
        let m = circuit_matrix_bounded(&circuit, 3).expect("width checked");
        println!("# matrix dim={} (z = zeta_36, row-major)", m.dim);
        for r in 0..m.dim {
            let row: Vec<String> = (0..m.dim).map(|c| m.at(r, c).to_string()).collect();
            println!("{}", row.join(" "));
        }
        return Ok(0);
    }
    // monomial fast path: classical + diagonal gates only
    let monomial = circuit.gates.iter().all(|g| {
        g.kind.is_classical()
            || matches!(
                g.kind,
                GateKind::Q
                    | GateKind::QInv
                    | GateKind::Z
                    | GateKind::ZInv
                    | GateKind::P9
                    | GateKind::P9Inv
                    | GateKind::Cz
                    | GateKind::CzInv
                    | GateKind::Cz2
                    | GateKind::Cz2Inv
                    | GateKind::C2z(_)
                    | GateKind::C2zInv(_)
            )
    });
    if !monomial {
        return Err(format!(
            "width {} is past the dense bound 3 and the circuit mixes H gates; \
             no exact monomial representation",
            circuit.width
        ));
    }
    let states = 3usize
        .checked_pow(circuit.width as u32)
        .filter(|&s| s <= ternary_core::permsim::DEFAULT_MAX_STATES)
        .ok_or_else(|| format!("width {} exceeds the monomial bound", circuit.width))?;
    println!("# monomial matrix: state -> image phase (z = zeta_36)");
    for x in 0..states {
        let digits = ternary_core::circuit::unpack_state(x, circuit.width);
        let state = simulate_basis_state(&circuit, &digits);
        let (y, amp) = state.iter().next().expect("monomial circuit");
        println!("{x} -> {y} {amp}");
    }
    Ok(0)
}

fn cmd_report(args: &[String]) -> Result<i32, String> {
    let flags = parse_flags(args, &["-i"], &["--json"])?;
    let circuit = read_circuit(&flags)?;
    let r = circuit.resource_report().map_err(|e| format!("invalid circuit: {}", e[0]))?;
    if flags.switches.iter().any(|s| s == "--json") {
        print!("{}", format::emit_json_report(&r));
    } else {
        println!("width:              {}", r.width);
        println!("ancillas:           {}", r.ancilla_count);
        println!("gates:              {}", r.total_gates);
        println!("non-Clifford:       {}", r.non_clifford_count);
        println!("non-Clifford depth: {}", r.non_clifford_depth);
        for (token, count) in &r.counts_by_kind {
            println!("  {token:<12} {count}");
        }
    }
    Ok(0)
}

fn cmd_selftest() -> Result<i32, String> {
    let (report, ok) = selftest::run();
    print!("{report}");
    Ok(if ok { 0 } else { 1 })
}
