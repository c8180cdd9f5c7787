//! Pauli-frame propagation for Clifford circuits.
//!
//! A Pauli `P` inserted mid-circuit reaches the end as another Pauli
//! `U P U^dagger` (up to phase). Only its `X` part changes measurement
//! statistics, and it does so by XOR-ing a fixed mask into the ideal outcome.
//! The table stores that mask for `X_q` and `Z_q` at every insertion point,
//! so a shot's faults reduce to a handful of XORs.

use super::pauli::PauliString;
use crate::sim::{Circuit, GateInstance, GateKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Frame {
    x: u32,
    z: u32,
}

impl Frame {
    fn xor(self, other: Frame) -> Frame {
        Frame {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }
}

fn bit(mask: u32, q: usize) -> bool {
    (mask >> q) & 1 == 1
}

fn swap_bits(mask: u32, a: usize, b: usize) -> u32 {
    if bit(mask, a) != bit(mask, b) {
        mask ^ (1 << a) ^ (1 << b)
    } else {
        mask
    }
}

/// Conjugates a frame through one Clifford gate.
fn conjugate(gate: &GateInstance, f: Frame) -> Frame {
    let mut f = f;
    match gate.kind {
        GateKind::X | GateKind::Y | GateKind::Z => {}
        GateKind::H => {
            let q = gate.targets[0];
            if bit(f.x, q) != bit(f.z, q) {
                f.x ^= 1 << q;
                f.z ^= 1 << q;
            }
        }
        GateKind::S => {
            let q = gate.targets[0];
            if bit(f.x, q) {
                f.z ^= 1 << q;
            }
        }
        GateKind::Cnot => {
            let (c, t) = (gate.targets[0], gate.targets[1]);
            if bit(f.x, c) {
                f.x ^= 1 << t;
            }
            if bit(f.z, t) {
                f.z ^= 1 << c;
            }
        }
        GateKind::Cz => {
            let (a, b) = (gate.targets[0], gate.targets[1]);
            let (xa, xb) = (bit(f.x, a), bit(f.x, b));
            if xa {
                f.z ^= 1 << b;
            }
            if xb {
                f.z ^= 1 << a;
            }
        }
        GateKind::Swap => {
            let (a, b) = (gate.targets[0], gate.targets[1]);
            f.x = swap_bits(f.x, a, b);
            f.z = swap_bits(f.z, a, b);
        }
        GateKind::Rz(_) => unreachable!("frame table built only for Clifford circuits"),
    }
    f
}

/// Measured-bit flip masks for single-qubit `X`/`Z` insertions at every
/// point of a Clifford circuit.
#[derive(Debug, Clone)]
pub struct PauliFrameTable {
    // flips[p][2q] for X_q, flips[p][2q + 1] for Z_q, inserted before gate p
    flips: Vec<Vec<u32>>,
}

impl PauliFrameTable {
    /// `None` when the circuit contains a non-Clifford gate.
    pub fn new(circuit: &Circuit) -> Option<Self> {
        if !circuit.is_clifford() {
            return None;
        }
        let n = circuit.n_qubits();
        let gates = circuit.gates();
        let basis = |i: usize| {
            let q = i / 2;
            if i % 2 == 0 {
                Frame { x: 1 << q, z: 0 }
            } else {
                Frame { x: 0, z: 1 << q }
            }
        };

        // final[p][i]: frame at the end of the circuit of basis element i
        // inserted before gate p
        let mut finals: Vec<Vec<Frame>> = vec![Vec::new(); gates.len() + 1];
        finals[gates.len()] = (0..2 * n).map(basis).collect();
        for p in (0..gates.len()).rev() {
            let next = &finals[p + 1];
            let row = (0..2 * n)
                .map(|i| {
                    let image = conjugate(&gates[p], basis(i));
                    (0..n).fold(Frame::default(), |acc, q| {
                        let mut acc = acc;
                        if bit(image.x, q) {
                            acc = acc.xor(next[2 * q]);
                        }
                        if bit(image.z, q) {
                            acc = acc.xor(next[2 * q + 1]);
                        }
                        acc
                    })
                })
                .collect();
            finals[p] = row;
        }

        let measured = circuit.measured();
        let to_measured = |f: &Frame| {
            measured
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, &q)| acc | (u32::from(bit(f.x, q)) << k))
        };
        let flips = finals
            .iter()
            .map(|row| row.iter().map(to_measured).collect())
            .collect();
        Some(Self { flips })
    }

    /// Outcome flip mask for `pauli` applied on `targets` right after gate
    /// `gate_index`.
    pub fn fault_flips(&self, gate_index: usize, pauli: &PauliString, targets: &[usize]) -> u32 {
        let row = &self.flips[gate_index + 1];
        pauli
            .paulis()
            .iter()
            .zip(targets)
            .fold(0u32, |acc, (p, &q)| {
                let mut acc = acc;
                if p.has_x() {
                    acc ^= row[2 * q];
                }
                if p.has_z() {
                    acc ^= row[2 * q + 1];
                }
                acc
            })
    }

    /// Outcome flip mask for an `X` on `qubit` before the first gate.
    pub fn preparation_flips(&self, qubit: usize) -> u32 {
        self.flips[0][2 * qubit]
    }
}
