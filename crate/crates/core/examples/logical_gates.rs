// Runs one logical sequence both ways: bare two-qubit gates, and the
// transversal four-qubit versions on an encoded `|00>`. Decoding the coded
// output recovers the uncoded distribution.

use qec422::code422::{decoded_distribution, GateSetId, LogicalGate};
use qec422::experiments::{build_pair, random_sequence, SequenceSpec};
use qec422::sim::ideal_distribution;

pub fn run_example() -> qec422::Result<()> {
    let fixed = [LogicalGate::HhSwap, LogicalGate::Czzz, LogicalGate::X1, LogicalGate::HhSwap];
    let (uncoded, coded) = build_pair(&fixed)?;
    println!("uncoded circuit:\n{uncoded}");
    println!("coded circuit has {} gates", coded.gates().len());

    let u = ideal_distribution(&uncoded);
    let c = ideal_distribution(&coded);
    let decoded = decoded_distribution(&c)?;
    println!("uncoded {u}\ncoded   {c}\ndecoded {decoded}");
    assert!(decoded.approx_eq(&u, 1e-12));

    let spec = SequenceSpec::new(GateSetId::Full, 12, 42)?;
    let seq = random_sequence(&spec);
    let names: Vec<_> = seq.iter().map(|g| g.name()).collect();
    println!("random full-set sequence: {}", names.join(" "));
    let (uncoded, coded) = build_pair(&seq)?;
    assert!(decoded_distribution(&ideal_distribution(&coded))?.approx_eq(&ideal_distribution(&uncoded), 1e-12));
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
