//! Error mechanisms: stochastic Pauli faults after each gate, preparation and
//! readout bit-flips, coherent `RZ` insertion and the global depolarizing
//! mixture.

mod engine;
mod frame;
mod pauli;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sim::{Bitstring, Circuit, GateInstance, GateKind, OutcomeDistribution};
use crate::{Error, Result};

pub(crate) use engine::faulty_distribution;
pub use engine::{noisy_counts, Engine, NoisySimulator};
pub use frame::PauliFrameTable;
pub use pauli::{Pauli, PauliFault, PauliString};

/// Every stochastic and coherent error knob.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Single-qubit gate fault probability.
    pub eps1: f64,
    /// Two-qubit gate fault probability.
    pub eps2: f64,
    /// Per-qubit readout flip probability.
    pub p_meas: f64,
    /// Per-qubit preparation flip probability.
    pub p_prep: f64,
    /// Coherent `RZ` angle inserted after the encoder's Hadamard (radians).
    pub theta: f64,
    /// Global depolarizing strength, applied to distributions.
    pub xi: f64,
}

impl NoiseParams {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("p_meas", self.p_meas),
            ("p_prep", self.p_prep),
            ("xi", self.xi),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Probability { name, value });
            }
        }
        if !self.theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        Ok(())
    }

    /// True when no per-shot stochastic channel is active.
    pub fn is_shot_noiseless(&self) -> bool {
        self.eps1 == 0.0 && self.eps2 == 0.0 && self.p_meas == 0.0 && self.p_prep == 0.0
    }

    /// Fault probability for a gate of the given arity.
    pub fn gate_error(&self, arity: usize) -> f64 {
        if arity == 1 {
            self.eps1
        } else {
            self.eps2
        }
    }
}

/// Samples the post-gate fault for one gate: with probability `eps` one of
/// the `4^arity - 1` non-identity Paulis, uniformly. Consumes one uniform draw
/// when the gate's error rate is non-zero and none otherwise.
pub fn sample_gate_fault<R: Rng + ?Sized>(
    kind: &GateKind,
    params: &NoiseParams,
    rng: &mut R,
) -> Option<PauliString> {
    let arity = kind.arity();
    let eps = params.gate_error(arity);
    if eps <= 0.0 {
        return None;
    }
    let u: f64 = rng.gen();
    fault_from_uniform(arity, eps, u)
}

/// Maps one uniform draw to a fault: `u >= eps` is no fault, otherwise the
/// sub-interval `[0, eps)` is split evenly across the non-identity Paulis.
pub(crate) fn fault_from_uniform(arity: usize, eps: f64, u: f64) -> Option<PauliString> {
    if u >= eps {
        return None;
    }
    let count = PauliString::non_identity_count(arity);
    let idx = ((u / eps) * count as f64) as usize;
    Some(PauliString::non_identity(arity, idx.min(count - 1)))
}

/// Qubits receiving an `X` before the first gate, each independently with
/// probability `p_prep`.
pub fn apply_preparation_flips<R: Rng + ?Sized>(n_qubits: usize, p_prep: f64, rng: &mut R) -> Vec<usize> {
    if p_prep <= 0.0 {
        return Vec::new();
    }
    (0..n_qubits).filter(|_| rng.gen::<f64>() < p_prep).collect()
}

/// Flips each bit independently with probability `p_meas`.
pub fn apply_measurement_flips<R: Rng + ?Sized>(bitstring: Bitstring, p_meas: f64, rng: &mut R) -> Bitstring {
    if p_meas <= 0.0 {
        return bitstring;
    }
    let mut mask = 0u32;
    for k in 0..bitstring.len() {
        if rng.gen::<f64>() < p_meas {
            mask |= 1 << k;
        }
    }
    bitstring.xor_mask(mask)
}

/// Inserts `RZ(theta)` on `q1` right after the first Hadamard on `q1` (the
/// `L00` encoder's Hadamard).
pub fn insert_coherent_rotation(circuit: &Circuit, theta: f64) -> Result<Circuit> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    let pos = circuit
        .gates()
        .iter()
        .position(|g| g.kind == GateKind::H && g.targets == [1])
        .ok_or_else(|| Error::Structure("no Hadamard on q1 to follow with the rotation".into()))?;
    let mut out = circuit.clone();
    out.insert(pos + 1, GateInstance::rz(1, theta))?;
    Ok(out)
}

/// `I/d` as an outcome distribution: uniform over `d = 2^n` strings.
pub fn totally_mixed(d: usize) -> Result<OutcomeDistribution> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("dimension {d} is not a power of two >= 2")));
    }
    Ok(OutcomeDistribution::uniform(d.trailing_zeros() as usize))
}

/// `(1 - xi) p + xi / d` over the distribution's full alphabet.
pub fn depolarize(dist: &OutcomeDistribution, xi: f64) -> Result<OutcomeDistribution> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::Probability { name: "xi", value: xi });
    }
    let width = dist.width();
    let d = 1usize << width;
    let dense: Vec<f64> = dist
        .to_dense()
        .into_iter()
        .map(|p| (1.0 - xi) * p + xi / d as f64)
        .collect();
    OutcomeDistribution::from_dense(width, &dense)
}

/// Parameters for the global depolarizing mixture on a `d`-dimensional
/// register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingSpec {
    pub xi: f64,
    pub d: usize,
}

impl DepolarizingSpec {
    pub fn new(xi: f64, d: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Probability { name: "xi", value: xi });
        }
        if d < 2 || !d.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("dimension {d} is not a power of two >= 2")));
        }
        Ok(Self { xi, d })
    }

    pub fn apply(&self, dist: &OutcomeDistribution) -> Result<OutcomeDistribution> {
        if 1usize << dist.width() != self.d {
            return Err(Error::Width {
                expected: self.d.trailing_zeros() as usize,
                got: dist.width(),
            });
        }
        depolarize(dist, self.xi)
    }
}
