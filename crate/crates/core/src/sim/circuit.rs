use std::fmt;

use super::gate::GateInstance;
use super::state::MAX_QUBITS;
use crate::{Error, Result};

/// An ordered gate list over a fixed register plus the measured qubits, in
/// the order their bits appear in outcome strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateInstance>,
    measured: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<GateInstance>, measured: Vec<usize>) -> Result<Self> {
        let mut circuit = Self::empty(n_qubits)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        circuit.set_measured(measured)?;
        Ok(circuit)
    }

    /// A register with no gates and nothing measured.
    pub fn empty(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        Ok(Self {
            n_qubits,
            gates: Vec::new(),
            measured: Vec::new(),
        })
    }

    pub fn push(&mut self, gate: GateInstance) -> Result<&mut Self> {
        let checked = GateInstance::new(gate.kind, gate.targets)?;
        for &t in &checked.targets {
            self.check_index(t)?;
        }
        self.gates.push(checked);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = GateInstance>>(&mut self, gates: I) -> Result<&mut Self> {
        for gate in gates {
            self.push(gate)?;
        }
        Ok(self)
    }

    pub fn insert(&mut self, index: usize, gate: GateInstance) -> Result<()> {
        let checked = GateInstance::new(gate.kind, gate.targets)?;
        for &t in &checked.targets {
            self.check_index(t)?;
        }
        if index > self.gates.len() {
            return Err(Error::InvalidArgument(format!(
                "insertion point {index} beyond {} gates",
                self.gates.len()
            )));
        }
        self.gates.insert(index, checked);
        Ok(())
    }

    pub fn set_measured(&mut self, measured: Vec<usize>) -> Result<()> {
        for (i, &q) in measured.iter().enumerate() {
            self.check_index(q)?;
            if measured[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        self.measured = measured;
        Ok(())
    }

    /// Measure every qubit, `q0` first.
    pub fn measure_all(mut self) -> Self {
        self.measured = (0..self.n_qubits).collect();
        self
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n_qubits {
            return Err(Error::QubitIndex {
                index,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_clifford())
    }

    /// `(single-qubit, two-qubit)` gate counts.
    pub fn gate_counts(&self) -> (usize, usize) {
        let two = self.gates.iter().filter(|g| g.arity() == 2).count();
        (self.gates.len() - two, two)
    }

    /// Serialize to the line-based text format accepted by
    /// [`parse_circuit`](super::parse_circuit).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        f.write_str("MEASURE")?;
        for q in &self.measured {
            write!(f, " {q}")?;
        }
        writeln!(f)
    }
}
