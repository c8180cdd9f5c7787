//! Trace distance, closed-form error-model predictions and worst-case bounds.
//!
//! The truncated predictions keep only the leading terms, exactly as the
//! model curves are usually drawn. [`PredictionMode::FullPolynomial`]
//! recomputes them from untruncated block errors through
//! `1 - (1 - P)^L`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code422::{coded_gate_circuit, uncoded_gate_circuit, GateSetId, LogicalGate};
use crate::noise::NoiseParams;
use crate::sim::{GateInstance, OutcomeDistribution};
use crate::{Error, Result};

/// `D = 1/2 sum_i |p_i - q_i|` over the shared alphabet; absent outcomes
/// count as zero.
pub fn trace_distance(p: &OutcomeDistribution, q: &OutcomeDistribution) -> Result<f64> {
    if p.width() != q.width() {
        return Err(Error::Width {
            expected: p.width(),
            got: q.width(),
        });
    }
    let mut sum = 0.0;
    for (k, pk) in p.iter() {
        sum += (pk - q.get(&k)).abs();
    }
    for (k, qk) in q.iter() {
        if p.get(&k) == 0.0 {
            sum += qk;
        }
    }
    Ok((0.5 * sum).clamp(0.0, 1.0))
}

/// Probability that a two-bit readout is wrong: `2 P_m - P_m^2`.
pub fn measurement_error_uncoded(p_meas: f64) -> f64 {
    2.0 * p_meas - p_meas * p_meas
}

/// Probability that a four-bit readout survives the parity check but
/// decodes wrongly: exactly two flips, `6 P_m^2 (1 - P_m)^2`.
pub fn measurement_error_coded_ps(p_meas: f64) -> f64 {
    6.0 * p_meas * p_meas * (1.0 - p_meas).powi(2)
}

/// Probability of at least one faulty block among `l`.
pub fn sequence_error(p_block: f64, l: u32) -> f64 {
    1.0 - (1.0 - p_block).powi(l as i32)
}

/// Per-block error probabilities from the physical gate counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockError {
    pub eps1_tilde: f64,
    pub eps2_tilde: f64,
    pub p_block: f64,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

// sum_{i=1}^{n} C(n, i) eps^i
fn binomial_tail(n: u32, eps: f64) -> f64 {
    (1..=n).map(|i| binomial(n, i) * eps.powi(i as i32)).sum()
}

pub fn block_error(n1: u32, n2: u32, eps1: f64, eps2: f64) -> BlockError {
    let eps1_tilde = binomial_tail(n1, eps1);
    let eps2_tilde = binomial_tail(n2, eps2);
    BlockError {
        eps1_tilde,
        eps2_tilde,
        p_block: eps1_tilde + eps2_tilde + eps1_tilde * eps2_tilde,
    }
}

/// Physical gate counts of one logical gate in both schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockErrorModel {
    pub gate: LogicalGate,
    pub n1_uncoded: u32,
    pub n2_uncoded: u32,
    pub n1_coded: u32,
    pub n2_coded: u32,
}

fn count_by_arity(gates: &[GateInstance]) -> (u32, u32) {
    gates.iter().fold((0, 0), |(a, b), g| match g.arity() {
        1 => (a + 1, b),
        _ => (a, b + 1),
    })
}

impl BlockErrorModel {
    /// Counts taken from the circuits the library actually builds.
    pub fn for_gate(gate: LogicalGate) -> Self {
        let (n1_uncoded, n2_uncoded) = count_by_arity(&uncoded_gate_circuit(gate));
        let (n1_coded, n2_coded) = count_by_arity(&coded_gate_circuit(gate));
        Self {
            gate,
            n1_uncoded,
            n2_uncoded,
            n1_coded,
            n2_coded,
        }
    }

    pub fn uncoded(&self, eps1: f64, eps2: f64) -> BlockError {
        block_error(self.n1_uncoded, self.n2_uncoded, eps1, eps2)
    }

    pub fn coded(&self, eps1: f64, eps2: f64) -> BlockError {
        block_error(self.n1_coded, self.n2_coded, eps1, eps2)
    }

    /// Coded block error surviving post-selection: only even numbers of
    /// single-qubit faults pass the parity check. Coded blocks contain no
    /// two-qubit gates.
    pub fn coded_post_selected(&self, eps1: f64) -> f64 {
        (2..=self.n1_coded)
            .step_by(2)
            .map(|i| binomial(self.n1_coded, i) * eps1.powi(i as i32))
            .sum()
    }
}

/// Leading-order coefficients of the block error averaged over a gate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSetAverage {
    pub gate_set: GateSetId,
    /// Uncoded `P ~ a1 eps1 + a2 eps2`.
    pub uncoded_eps1: f64,
    pub uncoded_eps2: f64,
    /// Coded, no post-selection: `P ~ c1 eps1 + c11 eps1^2`.
    pub coded_eps1: f64,
    pub coded_eps1_sq: f64,
}

impl GateSetAverage {
    pub fn for_set(gate_set: GateSetId) -> Self {
        let gates = gate_set.gates();
        let k = gates.len() as f64;
        let mean = |f: &dyn Fn(&BlockErrorModel) -> f64| {
            gates.iter().map(|&g| f(&BlockErrorModel::for_gate(g))).sum::<f64>() / k
        };
        Self {
            gate_set,
            uncoded_eps1: mean(&|m| f64::from(m.n1_uncoded)),
            uncoded_eps2: mean(&|m| f64::from(m.n2_uncoded)),
            coded_eps1: mean(&|m| f64::from(m.n1_coded)),
            coded_eps1_sq: mean(&|m| binomial(m.n1_coded, 2)),
        }
    }
}

/// Gate-set averages for every known set, computed once per call.
pub fn gate_set_average_table() -> Vec<GateSetAverage> {
    GateSetId::ALL.iter().map(|&g| GateSetAverage::for_set(g)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    Uncoded,
    /// Coded, every shot kept (`r = 1`).
    CodedRaw,
    /// Coded after post-selection.
    CodedPs,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Self::Uncoded, Self::CodedRaw, Self::CodedPs];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Uncoded => "uncoded",
            Self::CodedRaw => "coded_raw",
            Self::CodedPs => "coded_ps",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scheme `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictionMode {
    /// Leading terms only.
    #[default]
    Truncated,
    /// Untruncated block errors and `1 - (1 - P)^L`.
    FullPolynomial,
}

/// `(L/5)(6 eps1 + eps2) + 2 P_m - P_m^2` for the reduced set, clamped.
pub fn predict_uncoded(l: u32, params: &NoiseParams) -> f64 {
    predict(Scheme::Uncoded, GateSetId::Reduced, PredictionMode::Truncated, l, params)
}

/// `eps1 + 3 eps2 + L(12 eps1/5 + 2 eps1^2) + 4 P_m - 6 P_m^2`, clamped.
pub fn predict_coded_raw(l: u32, params: &NoiseParams) -> f64 {
    predict(Scheme::CodedRaw, GateSetId::Reduced, PredictionMode::Truncated, l, params)
}

/// `8 eps2/15 + 2 L eps1^2 + 6 P_m^2`, clamped.
pub fn predict_coded_ps(l: u32, params: &NoiseParams) -> f64 {
    predict(Scheme::CodedPs, GateSetId::Reduced, PredictionMode::Truncated, l, params)
}

// Encoder: one H and three CNOTs.
const ENCODER_N1: u32 = 1;
const ENCODER_N2: u32 = 3;
// Undetected encoder faults: 8 of the 15 Paulis on two of the CNOTs.
const ENCODER_RESIDUAL: f64 = 8.0 / 15.0;

/// Model prediction for any scheme, gate set and mode. With the reduced set
/// and truncated mode this is exactly the three closed forms above.
pub fn predict(scheme: Scheme, gate_set: GateSetId, mode: PredictionMode, l: u32, params: &NoiseParams) -> f64 {
    let (e1, e2, pm) = (params.eps1, params.eps2, params.p_meas);
    let lf = f64::from(l);
    let d = match mode {
        PredictionMode::Truncated => {
            let avg = GateSetAverage::for_set(gate_set);
            match scheme {
                Scheme::Uncoded => {
                    lf * (avg.uncoded_eps1 * e1 + avg.uncoded_eps2 * e2) + measurement_error_uncoded(pm)
                }
                Scheme::CodedRaw => {
                    e1 + 3.0 * e2
                        + lf * (avg.coded_eps1 * e1 + avg.coded_eps1_sq * e1 * e1)
                        + 4.0 * pm
                        - 6.0 * pm * pm
                }
                Scheme::CodedPs => ENCODER_RESIDUAL * e2 + lf * avg.coded_eps1_sq * e1 * e1 + 6.0 * pm * pm,
            }
        }
        PredictionMode::FullPolynomial => {
            let gates = gate_set.gates();
            let k = gates.len() as f64;
            let mean = |f: &dyn Fn(&BlockErrorModel) -> f64| {
                gates.iter().map(|&g| f(&BlockErrorModel::for_gate(g))).sum::<f64>() / k
            };
            match scheme {
                Scheme::Uncoded => {
                    let p = mean(&|m| m.uncoded(e1, e2).p_block);
                    sequence_error(p, l) + measurement_error_uncoded(pm)
                }
                Scheme::CodedRaw => {
                    let enc = block_error(ENCODER_N1, ENCODER_N2, e1, e2).p_block;
                    let p = mean(&|m| m.coded(e1, e2).p_block);
                    enc + sequence_error(p, l) + 1.0 - (1.0 - pm).powi(4)
                }
                Scheme::CodedPs => {
                    let p = mean(&|m| m.coded_post_selected(e1));
                    ENCODER_RESIDUAL * e2 + sequence_error(p, l) + measurement_error_coded_ps(pm)
                }
            }
        }
    };
    d.clamp(0.0, 1.0)
}

/// Distance from `ideal` to the totally mixed output on the same alphabet;
/// `1 - k/d` for a uniform ideal with `k` outcomes out of `d`.
pub fn worst_case_bound(ideal: &OutcomeDistribution) -> f64 {
    trace_distance(ideal, &OutcomeDistribution::uniform(ideal.width())).expect("same width")
}

/// Predicted `D` against sequence length for one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionCurve {
    pub scheme: Scheme,
    points: Vec<(u32, f64)>,
}

impl PredictionCurve {
    pub fn new(scheme: Scheme, points: Vec<(u32, f64)>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("curve lengths must be strictly increasing".into()));
        }
        let points = points.into_iter().map(|(l, d)| (l, d.clamp(0.0, 1.0))).collect();
        Ok(Self { scheme, points })
    }

    /// Evaluates [`predict`] at every length in `lengths`.
    pub fn evaluate(
        scheme: Scheme,
        gate_set: GateSetId,
        mode: PredictionMode,
        lengths: &[u32],
        params: &NoiseParams,
    ) -> Result<Self> {
        let points = lengths
            .iter()
            .map(|&l| (l, predict(scheme, gate_set, mode, l, params)))
            .collect();
        Self::new(scheme, points)
    }

    pub fn points(&self) -> &[(u32, f64)] {
        &self.points
    }

    pub fn get(&self, l: u32) -> Option<f64> {
        self.points.iter().find(|p| p.0 == l).map(|p| p.1)
    }
}

/// Writes curves as `scheme,L,D_pred` rows under one header.
pub fn write_curves_csv<W: Write>(curves: &[PredictionCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["scheme", "L", "D_pred"])?;
    for c in curves {
        for &(l, d) in &c.points {
            w.write_record([c.scheme.name().to_string(), l.to_string(), format!("{d:.16e}")])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Smallest `L` in `1..=max_l` from which `coded` stays strictly below
/// `uncoded` through `max_l`.
pub fn crossover_length(
    coded: Scheme,
    gate_set: GateSetId,
    mode: PredictionMode,
    params: &NoiseParams,
    max_l: u32,
) -> Option<u32> {
    let below = |l| predict(coded, gate_set, mode, l, params) < predict(Scheme::Uncoded, gate_set, mode, l, params);
    if max_l == 0 || !below(max_l) {
        return None;
    }
    let mut first = max_l;
    while first > 1 && below(first - 1) {
        first -= 1;
    }
    Some(first)
}
