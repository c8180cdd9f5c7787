use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sim::{GateInstance, PureState};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    fn from_index(i: usize) -> Self {
        match i {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            3 => Pauli::Z,
            _ => unreachable!("pauli index {i}"),
        }
    }

    /// Flips the computational basis value.
    pub fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Carries a phase component.
    pub fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of Paulis; position `k` acts on the `k`-th target of the
/// gate it follows (the control first, for CNOT).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(paulis: Vec<Pauli>) -> Self {
        Self(paulis)
    }

    pub fn paulis(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// `4^arity - 1`.
    pub fn non_identity_count(arity: usize) -> usize {
        4usize.pow(arity as u32) - 1
    }

    /// The `index`-th non-identity string in lexicographic `I < X < Y < Z`
    /// order, first position most significant.
    pub fn non_identity(arity: usize, index: usize) -> Self {
        assert!(index < Self::non_identity_count(arity));
        let mut v = index + 1;
        let mut paulis = vec![Pauli::I; arity];
        for slot in paulis.iter_mut().rev() {
            *slot = Pauli::from_index(v % 4);
            v /= 4;
        }
        Self(paulis)
    }

    pub fn all_non_identity(arity: usize) -> impl Iterator<Item = PauliString> {
        (0..Self::non_identity_count(arity)).map(move |i| Self::non_identity(arity, i))
    }

    /// Applies the string to `state` on `targets`.
    pub fn apply_to(&self, state: &mut PureState, targets: &[usize]) -> Result<()> {
        for (&p, &q) in self.0.iter().zip(targets) {
            let gate = match p {
                Pauli::I => continue,
                Pauli::X => GateInstance::x(q),
                Pauli::Y => GateInstance::y(q),
                Pauli::Z => GateInstance::z(q),
            };
            state.apply(&gate)?;
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::InvalidArgument(format!("bad Pauli string `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> Self {
        p.to_string()
    }
}

/// A non-identity Pauli applied right after gate `gate_index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliFault {
    pub gate_index: usize,
    pub pauli: PauliString,
}

impl PauliFault {
    pub fn new(gate_index: usize, pauli: PauliString) -> Result<Self> {
        if pauli.is_identity() || pauli.is_empty() {
            return Err(Error::InvalidArgument("fault Pauli must not be the identity".into()));
        }
        Ok(Self { gate_index, pauli })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(PauliString::non_identity_count(1), 3);
        assert_eq!(PauliString::non_identity_count(2), 15);
        let two: Vec<String> = PauliString::all_non_identity(2).map(|p| p.to_string()).collect();
        assert_eq!(two[0], "IX");
        assert_eq!(two[3], "XI");
        assert_eq!(two[14], "ZZ");
        let unique: std::collections::HashSet<_> = two.iter().collect();
        assert_eq!(unique.len(), 15);
        let one: Vec<String> = PauliString::all_non_identity(1).map(|p| p.to_string()).collect();
        assert_eq!(one, ["X", "Y", "Z"]);
    }

    #[test]
    fn identity_fault_rejected() {
        assert!(PauliFault::new(0, "II".parse().unwrap()).is_err());
        assert!(PauliFault::new(0, "IZ".parse().unwrap()).is_ok());
    }
}
