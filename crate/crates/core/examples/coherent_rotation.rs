// A deliberate `RZ(theta)` after the encoder's Hadamard. Followed by
// `HHSWAP` it turns into a bit flip with probability `sin^2(theta/2)`, which
// post-selection removes; the kept shots still match the ideal output.

use std::f64::consts::PI;

use qec422::analytics::Scheme;
use qec422::code422::GateSetId;
use qec422::experiments::{sweep_theta, SweepConfig};
use qec422::noise::NoiseParams;

pub fn run_example() -> qec422::Result<()> {
    let mut cfg = SweepConfig::new("theta-demo", GateSetId::SingleHhSwap, NoiseParams::noiseless());
    cfg.shots = 20_000;
    let thetas: Vec<f64> = (0..=8).map(|k| k as f64 * PI / 8.0).collect();
    let records = sweep_theta(&cfg, &thetas, 1, 1)?;

    println!("{:>7} {:>8} {:>10} {:>8}", "theta", "r", "cos^2", "D_ps");
    for rec in records.iter().filter(|r| r.scheme == Scheme::CodedPs) {
        println!(
            "{:>7.4} {:>8.4} {:>10.4} {:>8.4}",
            rec.theta,
            rec.r,
            (rec.theta / 2.0).cos().powi(2),
            rec.d
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
