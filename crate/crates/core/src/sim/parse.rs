//! Line-based circuit text format.
//!
//! ```text
//! # comment
//! qubits 2
//! H 0
//! RZ 1 0.785
//! CNOT 0 1
//! MEASURE 0 1
//! ```
//!
//! `#` starts a comment anywhere on a line. The first instruction must be
//! `qubits N`; `MEASURE` is optional but, when present, must come last.

use super::circuit::Circuit;
use super::gate::{GateInstance, GateKind};
use crate::{Error, ParseError};

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut measured_at: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("non-empty line");
        let args: Vec<&str> = tokens.collect();

        let Some(c) = circuit.as_mut() else {
            if !head.eq_ignore_ascii_case("qubits") {
                return Err(ParseError::new(
                    line_no,
                    format!("missing `qubits` header before `{head}`"),
                ));
            }
            let [n] = args.as_slice() else {
                return Err(ParseError::new(line_no, "`qubits` takes exactly one count"));
            };
            let n: usize = n
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("bad qubit count `{n}`")))?;
            circuit = Some(Circuit::empty(n).map_err(|e| ParseError::new(line_no, e.to_string()))?);
            continue;
        };

        if let Some(at) = measured_at {
            return Err(ParseError::new(
                line_no,
                format!("instruction `{head}` after MEASURE on line {at}"),
            ));
        }

        if head.eq_ignore_ascii_case("qubits") {
            return Err(ParseError::new(line_no, "duplicate `qubits` header"));
        }

        if head.eq_ignore_ascii_case("MEASURE") {
            let qubits = args
                .iter()
                .map(|a| parse_index(a, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            c.set_measured(qubits)
                .map_err(|e| ParseError::new(line_no, e.to_string()))?;
            measured_at = Some(line_no);
            continue;
        }

        let kind = gate_kind(head, &args, line_no)?;
        let arity = kind.arity();
        let expected_args = arity + usize::from(matches!(kind, GateKind::Rz(_)));
        if args.len() != expected_args {
            return Err(ParseError::new(
                line_no,
                format!(
                    "gate {} expects {expected_args} argument(s), got {}",
                    kind.name(),
                    args.len()
                ),
            ));
        }
        let targets = args[..arity]
            .iter()
            .map(|a| parse_index(a, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        let gate = GateInstance::new(kind, targets).map_err(|e| ParseError::new(line_no, e.to_string()))?;
        c.push(gate).map_err(|e| match e {
            Error::QubitIndex { index, n_qubits } => ParseError::new(
                line_no,
                format!("qubit index {index} out of range for {n_qubits} qubits"),
            ),
            other => ParseError::new(line_no, other.to_string()),
        })?;
    }

    circuit.ok_or_else(|| ParseError::new(text.lines().count().max(1), "missing `qubits` header"))
}

fn gate_kind(name: &str, args: &[&str], line: usize) -> Result<GateKind, ParseError> {
    let kind = match name.to_ascii_uppercase().as_str() {
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "H" => GateKind::H,
        "S" => GateKind::S,
        "CNOT" | "CX" => GateKind::Cnot,
        "CZ" => GateKind::Cz,
        "SWAP" => GateKind::Swap,
        "RZ" => {
            let Some(angle) = args.get(1) else {
                return Err(ParseError::new(
                    line,
                    format!("gate RZ expects 2 argument(s), got {}", args.len()),
                ));
            };
            let theta: f64 = angle
                .parse()
                .map_err(|_| ParseError::new(line, format!("malformed angle `{angle}`")))?;
            if !theta.is_finite() {
                return Err(ParseError::new(line, format!("malformed angle `{angle}`")));
            }
            GateKind::Rz(theta)
        }
        _ => return Err(ParseError::new(line, format!("unknown gate `{name}`"))),
    };
    Ok(kind)
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad qubit index `{token}`")))
}
