// The plain-text circuit format: parse, simulate, sample and print back.

use qec422::sim::{ideal_distribution, parse_circuit, sample_counts};

const BELL_WITH_PHASE: &str = "\
# two qubits, a Bell pair and a small phase kick
qubits 2
H 0
CNOT 0 1
RZ 1 0.25   # invisible in the computational basis
MEASURE 0 1
";

pub fn run_example() -> qec422::Result<()> {
    let circuit = parse_circuit(BELL_WITH_PHASE)?;
    let dist = ideal_distribution(&circuit);
    println!("{dist}");
    let counts = sample_counts(&dist, 1000, 7)?;
    for (b, n) in counts.iter() {
        println!("{b}: {n}");
    }

    let text = circuit.to_text();
    assert_eq!(parse_circuit(&text)?, circuit);
    print!("{text}");

    match parse_circuit("qubits 2\nCNOT 0 0\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("repeated target"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
