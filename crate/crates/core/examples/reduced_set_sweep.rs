// A small length sweep over random reduced-set sequences under gate and
// readout noise. Records go to CSV plus a JSON sidecar, and the mean trace
// distance per scheme is printed.

use qec422::analytics::predict;
use qec422::analytics::PredictionMode;
use qec422::code422::GateSetId;
use qec422::experiments::{
    read_records, summarize, sweep_l, write_sidecar, RecordWriter, Sidecar, SweepConfig, SEQUENCE_SAMPLING,
};
use qec422::noise::NoiseParams;

pub fn run_example() -> qec422::Result<()> {
    let eps1 = 4e-3;
    let params = NoiseParams { eps1, eps2: 40.0 * eps1, p_meas: 0.02, ..Default::default() };
    let mut cfg = SweepConfig::new("reduced-demo", GateSetId::Reduced, params);
    cfg.shots = 2048;
    cfg.master_seed = 3;

    let lengths = [1, 5, 10, 20];
    let records = sweep_l(&cfg, &lengths, 4)?;

    let dir = std::env::temp_dir().join(format!("qec422-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("reduced-demo.csv");
    let _ = std::fs::remove_file(&csv);
    let mut w = RecordWriter::append_to(&csv)?;
    w.write_all(&records)?;
    w.flush()?;
    write_sidecar(
        dir.join("reduced-demo.json"),
        &Sidecar {
            experiment_id: cfg.experiment_id.clone(),
            params,
            shots: cfg.shots,
            master_seed: cfg.master_seed,
            sequence_sampling: SEQUENCE_SAMPLING.into(),
            records: records.clone(),
        },
    )?;
    assert_eq!(read_records(&csv)?, records);
    println!("wrote {} records to {}", records.len(), csv.display());

    println!("{:<4} {:<10} {:>8} {:>8} {:>8}", "L", "scheme", "mean D", "mean r", "model");
    for row in summarize(&records) {
        let model = predict(row.scheme, GateSetId::Reduced, PredictionMode::Truncated, row.l, &params);
        println!("{:<4} {:<10} {:>8.4} {:>8.4} {:>8.4}", row.l, row.scheme, row.mean_d, row.mean_r, model);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
