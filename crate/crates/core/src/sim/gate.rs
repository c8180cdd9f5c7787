use std::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    /// `diag(e^{-i theta/2}, e^{i theta/2})`.
    Rz(f64),
    /// First target is the control.
    Cnot,
    Cz,
    Swap,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Rz(_) => "RZ",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
        }
    }

    /// Everything except `RZ` maps Paulis to Paulis under conjugation.
    pub fn is_clifford(&self) -> bool {
        !matches!(self, GateKind::Rz(_))
    }

    /// Whether applying the gate twice is the identity.
    pub fn is_involution(&self) -> bool {
        !matches!(self, GateKind::S | GateKind::Rz(_))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateInstance {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GateInstance {
    /// Checked constructor: arity, distinct targets and a finite angle.
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != kind.arity() {
            return Err(Error::Arity {
                gate: kind.name(),
                expected: kind.arity(),
                got: targets.len(),
            });
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::DuplicateQubit(targets[0]));
        }
        if let GateKind::Rz(theta) = kind {
            if !theta.is_finite() {
                return Err(Error::NonFinite("RZ angle"));
            }
        }
        Ok(Self { kind, targets })
    }

    fn single(kind: GateKind, q: usize) -> Self {
        Self {
            kind,
            targets: vec![q],
        }
    }

    fn pair(kind: GateKind, a: usize, b: usize) -> Self {
        assert_ne!(a, b, "two-qubit gate needs distinct qubits");
        Self {
            kind,
            targets: vec![a, b],
        }
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::X, q)
    }
    pub fn y(q: usize) -> Self {
        Self::single(GateKind::Y, q)
    }
    pub fn z(q: usize) -> Self {
        Self::single(GateKind::Z, q)
    }
    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }
    pub fn s(q: usize) -> Self {
        Self::single(GateKind::S, q)
    }
    pub fn rz(q: usize, theta: f64) -> Self {
        Self::single(GateKind::Rz(theta), q)
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Self::pair(GateKind::Cnot, control, target)
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::pair(GateKind::Cz, a, b)
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::pair(GateKind::Swap, a, b)
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }
}

impl fmt::Display for GateInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        if let GateKind::Rz(theta) = self.kind {
            // `{:?}` prints the shortest string that parses back to the same f64
            write!(f, " {theta:?}")?;
        }
        Ok(())
    }
}
