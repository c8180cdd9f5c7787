// How far a fully scrambled output can sit from the ideal one depends on how
// many outcomes the ideal circuit has. Mixing toward `I/d` makes this
// visible: sequences of `HHSWAP` alternate between one and four outcomes.

use qec422::analytics::{trace_distance, worst_case_bound};
use qec422::code422::LogicalGate;
use qec422::experiments::{run_pair_with, PairMode};
use qec422::noise::NoiseParams;
use qec422::sim::OutcomeDistribution;

pub fn run_example() -> qec422::Result<()> {
    for support in [&["00"][..], &["00", "11"], &["00", "01", "10", "11"]] {
        let w = 1.0 / support.len() as f64;
        let pairs: Vec<_> = support.iter().map(|s| (*s, w)).collect();
        let ideal = OutcomeDistribution::from_strs(&pairs)?;
        println!(
            "{} outcome(s): worst case {:.3}, vs uniform {:.3}",
            support.len(),
            worst_case_bound(&ideal),
            trace_distance(&ideal, &OutcomeDistribution::uniform(2))?
        );
    }

    println!("L    xi=0.25  xi=0.5  xi=1");
    for l in 1..=4 {
        let seq = vec![LogicalGate::HhSwap; l];
        let mut row = format!("{l:<4}");
        for xi in [0.25, 0.5, 1.0] {
            let params = NoiseParams { xi, ..Default::default() };
            let pair = run_pair_with(&seq, &params, 1, 0, PairMode::Exact)?;
            row.push_str(&format!(" {:<8.4}", pair.uncoded.d));
        }
        println!("{row}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
