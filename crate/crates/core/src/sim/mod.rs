//! Dense statevector simulation of few-qubit circuits.
//!
//! Qubit `q` is bit `q` of a basis-state index. Measurement bitstrings are
//! printed with the first measured qubit leftmost, so the `[4,2,2]` codeword
//! `|0011>` reads as `q0=0, q1=0, q2=1, q3=1`.

mod circuit;
mod distribution;
mod gate;
mod parse;
mod state;

pub use circuit::Circuit;
pub use distribution::{
    sample_counts, sample_index, shot_rng, Bitstring, OutcomeDistribution, ShotCounts,
    PRUNE_THRESHOLD,
};
pub(crate) use distribution::tally_shots;
pub use gate::{GateInstance, GateKind};
pub use parse::parse_circuit;
pub use state::{Amplitude, PureState, MAX_QUBITS};

/// Exact Born-rule distribution over the circuit's measured qubits, starting
/// from `|0...0>`.
pub fn ideal_distribution(circuit: &Circuit) -> OutcomeDistribution {
    let mut state = PureState::zero(circuit.n_qubits()).expect("circuit register validated");
    for gate in circuit.gates() {
        state.apply(gate).expect("circuit gates validated");
    }
    state.measurement_distribution(circuit.measured())
}
