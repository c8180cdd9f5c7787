// Readout noise on an encoded state: odd-parity results are thrown away and
// the surviving fraction is reported next to the logical error rate.

use qec422::code422::{build_encoder, decode, post_select, EncoderVariant, LogicalStateLabel, LogicalValue};
use qec422::noise::{NoiseParams, NoisySimulator};

pub fn run_example() -> qec422::Result<()> {
    let enc = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant)?;
    let p_meas = 0.05;
    let params = NoiseParams { p_meas, ..Default::default() };
    let shots = 50_000;
    let counts = NoisySimulator::new(&enc, params)?.run(shots, 17)?;

    let ps = post_select(&counts, false)?;
    println!("kept {} of {} shots, r = {:.4}", ps.gamma, ps.total, ps.r);

    let wrong: u64 = ps
        .retained
        .iter()
        .filter(|(b, _)| decode(*b).ok().flatten() != Some(LogicalValue::V00))
        .map(|(_, n)| n)
        .sum();
    let rate = wrong as f64 / shots as f64;
    let law = 6.0 * p_meas.powi(2) * (1.0 - p_meas).powi(2);
    println!("undetected logical errors: {rate:.2e} (two-flip law {law:.2e})");
    println!("an uncoded pair would be wrong {:.2e} of the time", 2.0 * p_meas - p_meas * p_meas);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
