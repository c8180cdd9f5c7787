// Monte-Carlo shots with stochastic Pauli faults. Clifford circuits use the
// fast frame engine; a rotation in the circuit forces full re-simulation.
// Either way a fixed seed gives the same counts on any thread count.

use qec422::code422::{build_encoder, coded_gate_circuit, EncoderVariant, LogicalGate, LogicalStateLabel};
use qec422::noise::{insert_coherent_rotation, Engine, NoiseParams, NoisySimulator};

pub fn run_example() -> qec422::Result<()> {
    let mut circuit = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant)?;
    circuit.extend(coded_gate_circuit(LogicalGate::HhSwap))?;
    let params = NoiseParams { eps1: 0.01, eps2: 0.05, p_meas: 0.01, p_prep: 0.005, ..Default::default() };

    let sim = NoisySimulator::new(&circuit, params)?;
    let a = sim.run(20_000, 1)?;
    let b = sim.clone().engine(Engine::Statevector).run(20_000, 1)?;
    println!("frame engine, top outcomes:");
    let mut top: Vec<_> = a.iter().collect();
    top.sort_by_key(|(_, n)| std::cmp::Reverse(*n));
    for (bits, n) in top.iter().take(5) {
        println!("  {bits}: {n}");
    }
    println!("statevector engine saw {} distinct outcomes", b.iter().count());

    let rotated = insert_coherent_rotation(&circuit, 0.3)?;
    assert!(!rotated.is_clifford());
    let c = NoisySimulator::new(&rotated, params)?.run(5_000, 2)?;
    assert_eq!(c, NoisySimulator::new(&rotated, params)?.run(5_000, 2)?);
    println!("rotated circuit: {} shots", c.total());
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
