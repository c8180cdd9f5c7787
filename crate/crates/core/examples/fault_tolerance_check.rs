// Injects every single Pauli fault into the two `L00` encoders and lists
// the ones that slip past post-selection.

use qec422::code422::{build_encoder, EncoderVariant, LogicalStateLabel};
use qec422::ftcheck::{verify_definition1, verify_with, Detection, VerifyOptions};

pub fn run_example() -> qec422::Result<()> {
    let plain = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant)?;
    let report = verify_with(
        &plain,
        Detection::PostSelect,
        &VerifyOptions {
            circuit_id: "L00".into(),
            include_preparation: true,
            ..Default::default()
        },
    )?;
    for s in report.undetected_sites() {
        println!("undetected: {}", s.site);
    }
    let eps2 = 0.01;
    println!(
        "residual at eps2 = {eps2}: {:.3e}; fault tolerant: {}",
        report.undetected_weight(0.0, eps2, 0.0),
        report.fault_tolerant
    );

    let checked = build_encoder(LogicalStateLabel::L00, EncoderVariant::AncillaChecked)?;
    let report = verify_definition1(&checked, Detection::PostSelectAncilla)?;
    println!("{report}");
    assert!(report.fault_tolerant);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qec422::Result<()> {
    run_example()
}
