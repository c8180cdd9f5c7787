//! Monte-Carlo trajectory sampling.
//!
//! Every shot owns an RNG stream keyed by `(seed, shot)` and draws in a fixed
//! order: the outcome uniform, preparation flips, one uniform per noisy gate,
//! then readout flips. With all knobs at zero only the outcome uniform is
//! drawn, so the result coincides with [`sample_counts`] on the ideal
//! distribution.
//!
//! [`sample_counts`]: crate::sim::sample_counts

use rand::Rng;

use super::frame::PauliFrameTable;
use super::pauli::PauliString;
use super::{apply_measurement_flips, apply_preparation_flips, fault_from_uniform, NoiseParams};
use crate::sim::{ideal_distribution, sample_index, shot_rng, tally_shots, Bitstring, Circuit, GateInstance, OutcomeDistribution, PureState, ShotCounts};
use crate::{Error, Result};

/// How faulty shots are propagated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Pauli frames for Clifford circuits, statevector otherwise.
    #[default]
    Auto,
    /// XOR of precomputed flip masks onto an ideal sample; Clifford only.
    PauliFrame,
    /// Re-simulate the state with faults inserted.
    Statevector,
}

/// Noisy sampler for one circuit under fixed parameters.
#[derive(Debug, Clone)]
pub struct NoisySimulator {
    circuit: Circuit,
    params: NoiseParams,
    engine: Engine,
}

// A fault drawn during one shot: gate index and Pauli.
type Fault = (usize, PauliString);

impl NoisySimulator {
    pub fn new(circuit: &Circuit, params: NoiseParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            circuit: circuit.clone(),
            params,
            engine: Engine::Auto,
        })
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn run(&self, shots: u64, seed: u64) -> Result<ShotCounts> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let frame = match self.engine {
            Engine::Statevector => None,
            Engine::Auto => PauliFrameTable::new(&self.circuit),
            Engine::PauliFrame => Some(PauliFrameTable::new(&self.circuit).ok_or_else(|| {
                Error::Unsupported("Pauli-frame engine needs a Clifford circuit".into())
            })?),
        };
        let ideal_cdf = ideal_distribution(&self.circuit).cdf();
        let width = self.circuit.measured().len();
        let n = self.circuit.n_qubits();
        let p = &self.params;

        let dense = tally_shots(width, shots, |shot| {
            let mut rng = shot_rng(seed, shot);
            let u: f64 = rng.gen();
            let prep = apply_preparation_flips(n, p.p_prep, &mut rng);
            let faults: Vec<Fault> = self
                .circuit
                .gates()
                .iter()
                .enumerate()
                .filter_map(|(i, g)| {
                    let eps = p.gate_error(g.arity());
                    if eps <= 0.0 {
                        return None;
                    }
                    fault_from_uniform(g.arity(), eps, rng.gen()).map(|f| (i, f))
                })
                .collect();

            let outcome = if prep.is_empty() && faults.is_empty() {
                sample_index(&ideal_cdf, u) as u32
            } else if let Some(table) = &frame {
                let mut mask = prep.iter().fold(0, |m, &q| m ^ table.preparation_flips(q));
                for (i, f) in &faults {
                    mask ^= table.fault_flips(*i, f, &self.circuit.gates()[*i].targets);
                }
                sample_index(&ideal_cdf, u) as u32 ^ mask
            } else {
                let cdf = faulty_distribution(&self.circuit, &prep, &faults).cdf();
                sample_index(&cdf, u) as u32
            };
            apply_measurement_flips(Bitstring::new(outcome, width), p.p_meas, &mut rng).bits() as usize
        });
        Ok(ShotCounts::from_dense(width, &dense))
    }
}

/// Exact output distribution with `X` on each `prep` qubit before the first
/// gate and each `(gate_index, pauli)` applied right after its gate. Faults
/// must be sorted by gate index.
pub(crate) fn faulty_distribution(circuit: &Circuit, prep: &[usize], faults: &[Fault]) -> OutcomeDistribution {
    let mut state = PureState::zero(circuit.n_qubits()).expect("validated register");
    for &q in prep {
        state.apply(&GateInstance::x(q)).expect("qubit in range");
    }
    let mut pending = faults.iter().peekable();
    for (i, gate) in circuit.gates().iter().enumerate() {
        state.apply(gate).expect("validated gate");
        while let Some((_, f)) = pending.next_if(|(j, _)| *j == i) {
            f.apply_to(&mut state, &gate.targets).expect("validated targets");
        }
    }
    state.measurement_distribution(circuit.measured())
}

/// Samples `shots` noisy trajectories of `circuit`. `xi` and `theta` are not
/// per-shot channels and are ignored here.
pub fn noisy_counts(circuit: &Circuit, params: &NoiseParams, shots: u64, seed: u64) -> Result<ShotCounts> {
    NoisySimulator::new(circuit, *params)?.run(shots, seed)
}
