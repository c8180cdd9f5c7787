//! Exhaustive single-fault verification of the fault-tolerance criterion:
//! no single faulty component may change the post-selected output.
//!
//! Every non-identity Pauli after every gate is injected in turn, the exact
//! output distribution is recomputed, and the outcome is classified against
//! the ideal run under the chosen detection rule. The `[4,2,2]` code only
//! detects, so any undetected change to the retained distribution counts as
//! a failure.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::trace_distance;
use crate::code422::CODE_QUBITS;
use crate::noise::{faulty_distribution, PauliString};
use crate::sim::{Bitstring, Circuit, OutcomeDistribution};
use crate::{Error, Result};

const TOL: f64 = 1e-9;

/// One injectable fault.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaultSite {
    /// `pauli` on the gate's targets right after gate `gate_index`.
    Gate { gate_index: usize, pauli: PauliString },
    /// `X` on `qubit` before the first gate.
    Preparation { qubit: usize },
}

impl fmt::Display for FaultSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gate { gate_index, pauli } => write!(f, "{pauli} after gate {gate_index}"),
            Self::Preparation { qubit } => write!(f, "X on q{qubit} before gate 0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultClassification {
    /// Retained output and retention both unchanged.
    Harmless,
    /// Some or all of the faulty branch fails the parity check.
    DetectedPostSelection,
    /// The faulty branch passes the parity check but trips the ancilla.
    DetectedAncilla,
    /// The retained output differs from the ideal one.
    UndetectedLogicalError,
}

impl FaultClassification {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Harmless => "harmless",
            Self::DetectedPostSelection => "detected_postselection",
            Self::DetectedAncilla => "detected_ancilla",
            Self::UndetectedLogicalError => "undetected_logical_error",
        }
    }
}

impl fmt::Display for FaultClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which measured bits decide acceptance. The first four measured bits are
/// the data block; with an ancilla the fifth must read 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detection {
    PostSelect,
    PostSelectAncilla,
}

impl Detection {
    fn required_width(self) -> usize {
        match self {
            Self::PostSelect => CODE_QUBITS,
            Self::PostSelectAncilla => CODE_QUBITS + 1,
        }
    }

    fn data_even(b: Bitstring) -> bool {
        b.truncate(CODE_QUBITS).has_even_parity()
    }

    fn accepts(self, b: Bitstring) -> bool {
        Self::data_even(b) && !(self == Self::PostSelectAncilla && b.bit(CODE_QUBITS))
    }
}

/// All single faults on the gates in `gates` (every gate when `None`): three
/// per single-qubit gate and fifteen per two-qubit gate, in gate order.
pub fn enumerate_single_faults(circuit: &Circuit) -> Vec<FaultSite> {
    enumerate_faults_in(circuit, 0..circuit.gates().len(), false)
}

/// Sites on the gates in `gates`, optionally preceded by one preparation
/// pseudo-site per qubit.
pub fn enumerate_faults_in(circuit: &Circuit, gates: Range<usize>, include_preparation: bool) -> Vec<FaultSite> {
    let prep = (0..circuit.n_qubits())
        .filter(|_| include_preparation)
        .map(|qubit| FaultSite::Preparation { qubit });
    let gate_sites = circuit.gates()[gates.clone()]
        .iter()
        .zip(gates)
        .flat_map(|(g, gate_index)| {
            PauliString::all_non_identity(g.arity()).map(move |pauli| FaultSite::Gate { gate_index, pauli })
        });
    prep.chain(gate_sites).collect()
}

fn check_site(circuit: &Circuit, site: &FaultSite) -> Result<()> {
    match site {
        FaultSite::Gate { gate_index, pauli } => {
            let gate = circuit.gates().get(*gate_index).ok_or_else(|| {
                Error::InvalidArgument(format!("gate index {gate_index} out of range"))
            })?;
            if pauli.len() != gate.arity() || pauli.is_identity() {
                return Err(Error::InvalidArgument(format!(
                    "Pauli `{pauli}` does not fit gate {gate_index}"
                )));
            }
        }
        FaultSite::Preparation { qubit } => {
            if *qubit >= circuit.n_qubits() {
                return Err(Error::QubitIndex {
                    index: *qubit,
                    n_qubits: circuit.n_qubits(),
                });
            }
        }
    }
    Ok(())
}

fn output_with(circuit: &Circuit, sites: &[&FaultSite]) -> OutcomeDistribution {
    let prep: Vec<usize> = sites
        .iter()
        .filter_map(|s| match s {
            FaultSite::Preparation { qubit } => Some(*qubit),
            FaultSite::Gate { .. } => None,
        })
        .collect();
    let mut faults: Vec<(usize, PauliString)> = sites
        .iter()
        .filter_map(|s| match s {
            FaultSite::Gate { gate_index, pauli } => Some((*gate_index, pauli.clone())),
            FaultSite::Preparation { .. } => None,
        })
        .collect();
    faults.sort_by_key(|f| f.0);
    faulty_distribution(circuit, &prep, &faults)
}

// Reference data computed once per circuit.
struct Baseline {
    kept: Option<OutcomeDistribution>,
    mass: f64,
}

fn baseline(circuit: &Circuit, detection: Detection) -> Result<Baseline> {
    if circuit.measured().len() < detection.required_width() {
        return Err(Error::Width {
            expected: detection.required_width(),
            got: circuit.measured().len(),
        });
    }
    let (kept, mass) = output_with(circuit, &[]).condition(|b| detection.accepts(b));
    let kept = kept.map(|d| d.marginal(&[0, 1, 2, 3])).transpose()?;
    Ok(Baseline { kept, mass })
}

fn classify_against(
    circuit: &Circuit,
    sites: &[&FaultSite],
    detection: Detection,
    base: &Baseline,
) -> Result<FaultClassification> {
    let out = output_with(circuit, sites);
    let (kept, mass) = out.condition(|b| detection.accepts(b));
    let even_mass: f64 = out.iter().filter(|(b, _)| Detection::data_even(*b)).map(|(_, p)| p).sum();
    let detected_by = || {
        if detection == Detection::PostSelectAncilla && (even_mass - base.mass).abs() < TOL {
            FaultClassification::DetectedAncilla
        } else {
            FaultClassification::DetectedPostSelection
        }
    };
    if mass < TOL {
        return Ok(if even_mass < TOL {
            FaultClassification::DetectedPostSelection
        } else {
            detected_by()
        });
    }
    let kept = kept.expect("positive mass").marginal(&[0, 1, 2, 3])?;
    let differs = match &base.kept {
        Some(ideal) => trace_distance(&kept, ideal)? > TOL,
        None => true,
    };
    if differs {
        Ok(FaultClassification::UndetectedLogicalError)
    } else if (mass - base.mass).abs() < TOL {
        Ok(FaultClassification::Harmless)
    } else {
        Ok(detected_by())
    }
}

/// Classifies one site by exact propagation.
pub fn classify_fault(circuit: &Circuit, site: &FaultSite, detection: Detection) -> Result<FaultClassification> {
    check_site(circuit, site)?;
    classify_against(circuit, &[site], detection, &baseline(circuit, detection)?)
}

/// One classified site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteReport {
    pub site: FaultSite,
    /// Gate name and targets, or `PREP q` for preparation sites.
    pub location: String,
    pub classification: FaultClassification,
}

/// Result of exhaustive single-fault verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FTReport {
    pub circuit_id: String,
    pub detection: Detection,
    pub sites: Vec<SiteReport>,
    pub fault_tolerant: bool,
    /// Undetected single-qubit-gate sites; each carries weight `eps1/3`.
    pub undetected_1q: usize,
    /// Undetected two-qubit-gate sites; each carries weight `eps2/15`.
    pub undetected_2q: usize,
    /// Undetected preparation sites; each carries weight `p_prep`.
    pub undetected_prep: usize,
    /// Undetected fault pairs, when requested. Informational only.
    pub undetected_pairs: Option<usize>,
}

impl FTReport {
    /// First-order probability of an undetected logical error.
    pub fn undetected_weight(&self, eps1: f64, eps2: f64, p_prep: f64) -> f64 {
        self.undetected_1q as f64 * eps1 / 3.0 + self.undetected_2q as f64 * eps2 / 15.0 + self.undetected_prep as f64 * p_prep
    }

    pub fn undetected_sites(&self) -> impl Iterator<Item = &SiteReport> {
        self.sites
            .iter()
            .filter(|s| s.classification == FaultClassification::UndetectedLogicalError)
    }

    pub fn count(&self, classification: FaultClassification) -> usize {
        self.sites.iter().filter(|s| s.classification == classification).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for FTReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit: {}", self.circuit_id)?;
        writeln!(f, "{:<14} {:<6} {}", "location", "pauli", "classification")?;
        for s in &self.sites {
            let pauli = match &s.site {
                FaultSite::Gate { pauli, .. } => pauli.to_string(),
                FaultSite::Preparation { .. } => "X".into(),
            };
            writeln!(f, "{:<14} {:<6} {}", s.location, pauli, s.classification)?;
        }
        for c in [
            FaultClassification::Harmless,
            FaultClassification::DetectedPostSelection,
            FaultClassification::DetectedAncilla,
            FaultClassification::UndetectedLogicalError,
        ] {
            writeln!(f, "{c}: {}", self.count(c))?;
        }
        writeln!(
            f,
            "undetected weight: {}*eps1/3 + {}*eps2/15 + {}*p_prep",
            self.undetected_1q, self.undetected_2q, self.undetected_prep
        )?;
        if let Some(p) = self.undetected_pairs {
            writeln!(f, "undetected fault pairs: {p}")?;
        }
        write!(f, "fault tolerant: {}", if self.fault_tolerant { "yes" } else { "no" })
    }
}

/// Knobs for [`verify_with`].
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub circuit_id: String,
    /// Restrict gate faults to this range; all gates when `None`.
    pub gates: Option<Range<usize>>,
    pub include_preparation: bool,
    /// Also count undetected pairs of faults on distinct locations.
    pub count_pairs: bool,
}

/// Verifies every single gate fault under `detection`.
pub fn verify_definition1(circuit: &Circuit, detection: Detection) -> Result<FTReport> {
    verify_with(circuit, detection, &VerifyOptions::default())
}

pub fn verify_with(circuit: &Circuit, detection: Detection, options: &VerifyOptions) -> Result<FTReport> {
    let base = baseline(circuit, detection)?;
    let range = options.gates.clone().unwrap_or(0..circuit.gates().len());
    if range.end > circuit.gates().len() {
        return Err(Error::InvalidArgument(format!(
            "gate range {range:?} exceeds {} gates",
            circuit.gates().len()
        )));
    }
    let sites = enumerate_faults_in(circuit, range, options.include_preparation);
    let classes = sites
        .par_iter()
        .map(|s| classify_against(circuit, &[s], detection, &base))
        .collect::<Result<Vec<_>>>()?;

    let mut report = FTReport {
        circuit_id: options.circuit_id.clone(),
        detection,
        sites: Vec::with_capacity(sites.len()),
        fault_tolerant: true,
        undetected_1q: 0,
        undetected_2q: 0,
        undetected_prep: 0,
        undetected_pairs: None,
    };
    for (site, classification) in sites.iter().zip(classes) {
        let location = match site {
            FaultSite::Gate { gate_index, .. } => {
                let g = &circuit.gates()[*gate_index];
                if classification == FaultClassification::UndetectedLogicalError {
                    if g.arity() == 1 {
                        report.undetected_1q += 1;
                    } else {
                        report.undetected_2q += 1;
                    }
                }
                format!("{gate_index}:{g}")
            }
            FaultSite::Preparation { qubit } => {
                if classification == FaultClassification::UndetectedLogicalError {
                    report.undetected_prep += 1;
                }
                format!("PREP {qubit}")
            }
        };
        report.sites.push(SiteReport {
            site: site.clone(),
            location,
            classification,
        });
    }
    report.fault_tolerant = report.undetected_1q + report.undetected_2q + report.undetected_prep == 0;

    if options.count_pairs {
        let location_of = |s: &FaultSite| match s {
            FaultSite::Gate { gate_index, .. } => (0, *gate_index),
            FaultSite::Preparation { qubit } => (1, *qubit),
        };
        let pairs: Vec<(usize, usize)> = (0..sites.len())
            .flat_map(|i| (i + 1..sites.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| location_of(&sites[i]) != location_of(&sites[j]))
            .collect();
        let undetected = pairs
            .par_iter()
            .map(|&(i, j)| classify_against(circuit, &[&sites[i], &sites[j]], detection, &base))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|c| *c == FaultClassification::UndetectedLogicalError)
            .count();
        report.undetected_pairs = Some(undetected);
    }
    Ok(report)
}
