use num_complex::Complex64;

use super::distribution::OutcomeDistribution;
use super::gate::{GateInstance, GateKind};
use crate::{Error, Result};

pub type Amplitude = Complex64;

/// Register sizes above this are rejected; the dense vector has `2^n` entries.
pub const MAX_QUBITS: usize = 12;

/// Normalized amplitude vector; basis index bit `q` is the value of qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl PureState {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
        amplitudes[index] = Amplitude::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps a caller-supplied vector; length must be a power of two and the
    /// norm must be 1 within `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitude vector"));
        }
        let state = Self {
            n_qubits,
            amplitudes,
        };
        if (state.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "state norm^2 {} differs from 1",
                state.norm_sqr()
            )));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Consuming form of [`apply`](Self::apply).
    pub fn applied(mut self, gate: &GateInstance) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    pub fn apply(&mut self, gate: &GateInstance) -> Result<()> {
        for &t in &gate.targets {
            if t >= self.n_qubits {
                return Err(Error::QubitIndex {
                    index: t,
                    n_qubits: self.n_qubits,
                });
            }
        }
        if gate.targets.len() != gate.kind.arity() {
            return Err(Error::Arity {
                gate: gate.kind.name(),
                expected: gate.kind.arity(),
                got: gate.targets.len(),
            });
        }
        match gate.kind {
            GateKind::X => self.x(gate.targets[0]),
            GateKind::Y => self.y(gate.targets[0]),
            GateKind::Z => self.z(gate.targets[0]),
            GateKind::H => self.h(gate.targets[0]),
            GateKind::S => self.phase(gate.targets[0], Amplitude::i()),
            GateKind::Rz(theta) => self.rz(gate.targets[0], theta),
            GateKind::Cnot => self.cnot(gate.targets[0], gate.targets[1]),
            GateKind::Cz => self.cz(gate.targets[0], gate.targets[1]),
            GateKind::Swap => self.swap(gate.targets[0], gate.targets[1]),
        }
        Ok(())
    }

    fn x(&mut self, q: usize) {
        for (i0, i1) in pairs(self.amplitudes.len(), q) {
            self.amplitudes.swap(i0, i1);
        }
    }

    fn y(&mut self, q: usize) {
        // Y = [[0, -i], [i, 0]]
        let i = Amplitude::i();
        for (i0, i1) in pairs(self.amplitudes.len(), q) {
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = -i * a1;
            self.amplitudes[i1] = i * a0;
        }
    }

    fn z(&mut self, q: usize) {
        self.phase(q, Amplitude::new(-1.0, 0.0));
    }

    fn phase(&mut self, q: usize, phase: Amplitude) {
        let bit = 1usize << q;
        for (idx, a) in self.amplitudes.iter_mut().enumerate() {
            if idx & bit != 0 {
                *a *= phase;
            }
        }
    }

    fn h(&mut self, q: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (i0, i1) in pairs(self.amplitudes.len(), q) {
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = (a0 + a1) * s;
            self.amplitudes[i1] = (a0 - a1) * s;
        }
    }

    fn rz(&mut self, q: usize, theta: f64) {
        let bit = 1usize << q;
        let lo = Amplitude::from_polar(1.0, -theta / 2.0);
        let hi = Amplitude::from_polar(1.0, theta / 2.0);
        for (idx, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= if idx & bit == 0 { lo } else { hi };
        }
    }

    fn cnot(&mut self, control: usize, target: usize) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & cbit != 0 && i & tbit == 0 {
                self.amplitudes.swap(i, i | tbit);
            }
        }
    }

    fn cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp = -*amp;
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        let abit = 1usize << a;
        let bbit = 1usize << b;
        for i in 0..self.amplitudes.len() {
            if i & abit != 0 && i & bbit == 0 {
                self.amplitudes.swap(i, (i & !abit) | bbit);
            }
        }
    }

    /// Marginal probabilities over `measured`, as a dense vector indexed by the
    /// outcome value (bit `k` is the result for `measured[k]`).
    pub fn marginal_probabilities(&self, measured: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1usize << measured.len()];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let key = measured
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &q)| acc | (((idx >> q) & 1) << k));
            out[key] += p;
        }
        out
    }

    pub fn measurement_distribution(&self, measured: &[usize]) -> OutcomeDistribution {
        OutcomeDistribution::from_dense(measured.len(), &self.marginal_probabilities(measured))
            .expect("marginal of a normalized state is a distribution")
    }
}

// Basis indices with bit `q` clear, paired with their partner `i | bit`.
fn pairs(len: usize, q: usize) -> impl Iterator<Item = (usize, usize)> {
    let bit = 1usize << q;
    (0..len).filter(move |i| i & bit == 0).map(move |i| (i, i | bit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Amplitude, b: Amplitude) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let s = PureState::zero(1).unwrap().applied(&GateInstance::h(0)).unwrap();
        assert!(close(s.amplitudes()[0], Amplitude::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitudes()[1], Amplitude::new(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn cnot_truth_table_control_set() {
        // |10> with q1 = 1 as control: basis index 0b10
        let s = PureState::basis(2, 0b10)
            .unwrap()
            .applied(&GateInstance::cnot(1, 0))
            .unwrap();
        assert!(close(s.amplitudes()[0b11], Amplitude::new(1.0, 0.0)));
    }

    #[test]
    fn s_on_plus_gives_plus_i() {
        let s = PureState::zero(1)
            .unwrap()
            .applied(&GateInstance::h(0))
            .unwrap()
            .applied(&GateInstance::s(0))
            .unwrap();
        assert!(close(s.amplitudes()[0], Amplitude::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitudes()[1], Amplitude::new(0.0, FRAC_1_SQRT_2)));
    }

    #[test]
    fn out_of_range_target_is_index_error() {
        let mut s = PureState::zero(2).unwrap();
        assert!(matches!(
            s.apply(&GateInstance::x(5)),
            Err(Error::QubitIndex { index: 5, n_qubits: 2 })
        ));
    }

    #[test]
    fn swap_exchanges_qubits() {
        let s = PureState::basis(3, 0b001)
            .unwrap()
            .applied(&GateInstance::swap(0, 2))
            .unwrap();
        assert!(close(s.amplitudes()[0b100], Amplitude::new(1.0, 0.0)));
    }

    #[test]
    fn rejects_unnormalized_vectors() {
        let v = vec![Amplitude::new(1.0, 0.0), Amplitude::new(1.0, 0.0)];
        assert!(PureState::from_amplitudes(v).is_err());
    }
}
