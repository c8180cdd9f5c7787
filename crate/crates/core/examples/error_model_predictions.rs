// Closed-form error curves for the three schemes, the length from which the
// coded scheme stays ahead, and the per-gate averages behind them.

use qec422::analytics::{
    crossover_length, gate_set_average_table, write_curves_csv, PredictionCurve, PredictionMode, Scheme,
};
use qec422::code422::GateSetId;
use qec422::noise::NoiseParams;

pub fn run_example() -> qec422::Result<()> {
    let eps1 = 4e-3;
    let params = NoiseParams { eps1, eps2: 40.0 * eps1, p_meas: 0.02, ..Default::default() };
    let lengths: Vec<u32> = vec![1, 2, 5, 10, 20, 50, 100];

    let curves = Scheme::ALL
        .iter()
        .map(|&s| PredictionCurve::evaluate(s, GateSetId::Reduced, PredictionMode::Truncated, &lengths, &params))
        .collect::<qec422::Result<Vec<_>>>()?;
    write_curves_csv(&curves, std::io::stdout().lock())?;

    for avg in gate_set_average_table() {
        println!("{avg:?}");
    }

    let low = NoiseParams { eps1: 1e-3, eps2: 1e-2, p_meas: 0.01, ..Default::default() };
    match crossover_length(Scheme::CodedPs, GateSetId::Reduced, PredictionMode::FullPolynomial, &low, 1000) {
        Some(l) => println!("post-selected coding stays ahead from L = {l} through 1000"),
        None => println!("post-selected coding is behind at L = 1000"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
