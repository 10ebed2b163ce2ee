//! The `.t3` text circuit format and the JSON resource report.
//!
//! Line-oriented UTF-8: comment lines start with `#`; the header is
//! `QUTRITS <w>`; optional `REG <role> <index...>` lines name wires; one
//! gate per line as a token followed by wire indices. Hard controls ride
//! on the token as `[c]` (`CX[0]`, `CSUM[2]`); inverses carry an `INV`
//! suffix. The two-way swap spells its basis labels out:
//! `SWAP2 q1 q2 s1s2 t1t2`. A comment of the exact form `# phase` marks
//! a schedule boundary and round-trips through the parser; other comments
//! are dropped. Emission is byte-stable for a given circuit.

use std::fmt;
use ternary_core::circuit::{Circuit, RegisterMap, ResourceReport};
use ternary_core::gate::{GateKind, Pair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

fn parse_wire(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| err(line, format!("bad wire index '{tok}'")))
}

fn parse_pair(tok: &str, line: usize) -> Result<Pair, ParseError> {
    let bytes = tok.as_bytes();
    if bytes.len() != 2 || !bytes.iter().all(|b| (b'0'..=b'2').contains(b)) {
        return Err(err(line, format!("bad SWAP2 basis label '{tok}'")));
    }
    Ok(Pair(bytes[0] - b'0', bytes[1] - b'0'))
}

/// Token -> kind, with the `[c]` parameter peeled off.
fn parse_kind(tok: &str, line: usize) -> Result<GateKind, ParseError> {
    use GateKind::*;
    let (name, param) = match tok.find('[') {
        Some(open) => {
            if !tok.ends_with(']') {
                return Err(err(line, format!("unterminated control parameter in '{tok}'")));
            }
            let inner = &tok[open + 1..tok.len() - 1];
            let c: u8 =
                inner.parse().map_err(|_| err(line, format!("bad control value '{inner}'")))?;
            if c > 2 {
                return Err(err(line, format!("control value {c} is not a trit")));
            }
            (&tok[..open], Some(c))
        }
        None => (tok, None),
    };
    let kind = match (name, param) {
        ("X", None) => X,
        ("XINV", None) => XInv,
        ("S01", None) => S01,
        ("S02", None) => S02,
        ("S12", None) => S12,
        ("H", None) => H,
        ("HINV", None) => HInv,
        ("Q", None) => Q,
        ("QINV", None) => QInv,
        ("Z", None) => Z,
        ("ZINV", None) => ZInv,
        ("P9", None) => P9,
        ("P9INV", None) => P9Inv,
        ("SUM", None) => Sum,
        ("SUMINV", None) => SumInv,
        ("SWAP", None) => Swap,
        ("CZ", None) => Cz,
        ("CZINV", None) => CzInv,
        ("CX", Some(c)) => Cx(c),
        ("CXINV", Some(c)) => CxInv(c),
        ("CPX", None) => Cpx,
        ("CPXINV", None) => CpxInv,
        ("CSUM", Some(c)) => Csum(c),
        ("CSUMINV", Some(c)) => CsumInv(c),
        ("CS01", Some(c)) => Cs01(c),
        ("HORNER", None) => Horner,
        ("HORNERINV", None) => HornerInv,
        ("CZ2", None) => Cz2,
        ("CZ2INV", None) => Cz2Inv,
        ("C2Z", Some(c)) => C2z(c),
        ("C2ZINV", Some(c)) => C2zInv(c),
        _ => return Err(err(line, format!("unknown gate token '{tok}'"))),
    };
    Ok(kind)
}

/// Parse a `.t3` document into a circuit.
pub fn parse_text(input: &str) -> Result<Circuit, ParseError> {
    let mut width: Option<usize> = None;
    let mut circuit = Circuit::new(0);
    let mut regs = RegisterMap::default();
    let mut saw_reg = false;

    for (i, raw) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if comment.trim() == "phase" {
                circuit.mark_phase();
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().expect("non-empty line");
        let rest: Vec<&str> = toks.collect();

        if head == "QUTRITS" {
            if width.is_some() {
                return Err(err(lineno, "duplicate QUTRITS header"));
            }
            let w: usize = rest
                .first()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(lineno, "QUTRITS needs a positive count"))?;
            if w == 0 {
                return Err(err(lineno, "QUTRITS needs a positive count"));
            }
            width = Some(w);
            circuit.width = w;
            continue;
        }
        if width.is_none() {
            return Err(err(lineno, "expected the QUTRITS header first"));
        }
        if head == "REG" {
            saw_reg = true;
            let role = *rest.first().ok_or_else(|| err(lineno, "REG needs a role name"))?;
            let wires: Vec<usize> =
                rest[1..].iter().map(|t| parse_wire(t, lineno)).collect::<Result<_, _>>()?;
            let single = |wires: &[usize]| -> Result<usize, ParseError> {
                if wires.len() == 1 {
                    Ok(wires[0])
                } else {
                    Err(err(lineno, format!("role {role} takes exactly one wire")))
                }
            };
            match role {
                "A" => regs.a = wires,
                "B" => regs.b = wires,
                "Z" => regs.z = wires,
                "X" => regs.x = wires,
                "APAD" => regs.apad = wires,
                "BPAD" => regs.bpad = wires,
                "ANC" => regs.ancillas = wires,
                "CIN" => regs.cin = Some(single(&wires)?),
                "OVF" => regs.ovf = Some(single(&wires)?),
                "R" => regs.r = Some(single(&wires)?),
                _ => return Err(err(lineno, format!("unknown register role '{role}'"))),
            }
            continue;
        }

        let (kind, wires) = if head == "SWAP2" {
            if rest.len() != 4 {
                return Err(err(lineno, "SWAP2 takes two wires and two basis labels"));
            }
            let wires = vec![parse_wire(rest[0], lineno)?, parse_wire(rest[1], lineno)?];
            let kind = GateKind::Swap2(parse_pair(rest[2], lineno)?, parse_pair(rest[3], lineno)?);
            (kind, wires)
        } else {
            let kind = parse_kind(head, lineno)?;
            let wires: Vec<usize> =
                rest.iter().map(|t| parse_wire(t, lineno)).collect::<Result<_, _>>()?;
            (kind, wires)
        };
        if wires.len() != kind.arity() {
            return Err(err(
                lineno,
                format!("{} takes {} wires, got {}", kind.token(), kind.arity(), wires.len()),
            ));
        }
        circuit.push(kind, &wires);
    }

    if width.is_none() {
        return Err(err(input.lines().count().max(1), "missing QUTRITS header"));
    }
    if saw_reg {
        circuit.registers = Some(regs);
    }
    if let Err(errs) = circuit.validate() {
        return Err(err(0, format!("invalid circuit: {}", errs[0])));
    }
    Ok(circuit)
}

fn fmt_wires(out: &mut String, wires: &[usize]) {
    for w in wires {
        out.push(' ');
        out.push_str(&w.to_string());
    }
}

/// Emit a circuit as `.t3` text; inverse of [`parse_text`] up to comments.
pub fn emit_text(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(&format!("QUTRITS {}\n", c.width));
    if let Some(regs) = &c.registers {
        let list = |out: &mut String, role: &str, wires: &[usize]| {
            if !wires.is_empty() {
                out.push_str("REG ");
                out.push_str(role);
                fmt_wires(out, wires);
                out.push('\n');
            }
        };
        list(&mut out, "A", &regs.a);
        list(&mut out, "B", &regs.b);
        list(&mut out, "Z", &regs.z);
        list(&mut out, "X", &regs.x);
        list(&mut out, "APAD", &regs.apad);
        list(&mut out, "BPAD", &regs.bpad);
        if let Some(w) = regs.cin {
            out.push_str(&format!("REG CIN {w}\n"));
        }
        if let Some(w) = regs.ovf {
            out.push_str(&format!("REG OVF {w}\n"));
        }
        if let Some(w) = regs.r {
            out.push_str(&format!("REG R {w}\n"));
        }
        list(&mut out, "ANC", &regs.ancillas);
    }
    let marks: std::collections::BTreeSet<usize> = c.phase_marks.iter().copied().collect();
    for (i, g) in c.gates.iter().enumerate() {
        if marks.contains(&i) {
            out.push_str("# phase\n");
        }
        out.push_str(&g.kind.token());
        fmt_wires(&mut out, &g.wires);
        if let GateKind::Swap2(s, t) = g.kind {
            out.push_str(&format!(" {s} {t}"));
        }
        out.push('\n');
    }
    out
}

fn json_escape(s: &str) -> String {
    s.chars()
        .flat_map(|ch| match ch {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            c if (c as u32) < 0x20 => format!("\\u{:04x}", c as u32).chars().collect(),
            c => vec![c],
        })
        .collect()
}

/// The JSON resource report: fixed key order, byte-stable.
pub fn emit_json_report(r: &ResourceReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"width\": {}, \"ancillas\": {}, \"gates_total\": {}, \"non_clifford_count\": {}, \"non_clifford_depth\": {}, \"counts_by_gate\": {{",
        r.width, r.ancilla_count, r.total_gates, r.non_clifford_count, r.non_clifford_depth
    ));
    let mut first = true;
    for (token, count) in &r.counts_by_kind {
        if !first {
            out.push_str(", ");
        }
        first = false;
        out.push_str(&format!("\"{}\": {}", json_escape(token), count));
    }
    out.push_str("}}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ternary_core::gate::GateKind::*;

    #[test]
    fn parse_basics() {
        let c = parse_text("QUTRITS 2\nSUM 0 1\n").unwrap();
        assert_eq!(c.width, 2);
        assert_eq!(c.gates.len(), 1);
        assert_eq!(c.gates[0].kind, Sum);

        let c = parse_text("# a comment\nQUTRITS 2\nCX[2] 0 1\n").unwrap();
        assert_eq!(c.gates[0].kind, Cx(2));

        let c = parse_text("QUTRITS 2\nSWAP2 0 1 00 22\n").unwrap();
        assert_eq!(c.gates[0].kind, Swap2(Pair(0, 0), Pair(2, 2)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_text("QUTRITS 2\nSUM 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("takes 2 wires"));

        let e = parse_text("QUTRITS 2\nCX[3] 0 1\n").unwrap_err();
        assert!(e.msg.contains("not a trit"));

        let e = parse_text("QUTRITS 2\nFOO 0\n").unwrap_err();
        assert!(e.msg.contains("unknown gate token"));

        assert!(parse_text("SUM 0 1\n").is_err());
    }

    #[test]
    fn round_trip_with_registers_and_phases() {
        let c = ternary_core::adders::build_ripple_adder(2);
        c.validate().unwrap();
        let text = emit_text(&c);
        let back = parse_text(&text).unwrap();
        assert_eq!(back, c);
        // byte stability
        assert_eq!(emit_text(&back), text);
    }

    #[test]
    fn json_report_schema() {
        let c = ternary_core::adders::build_carry();
        let r = c.resource_report().unwrap();
        let json = emit_json_report(&r);
        assert!(json.starts_with("{\"width\": 3, \"ancillas\": 0,"));
        assert!(json.contains("\"non_clifford_count\": 2"));
        assert!(json.contains("\"CS01[0]\": 1"));
    }
}
