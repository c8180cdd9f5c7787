//! The paired uncoded/coded experiment pipeline: random logical sequences,
//! noisy execution of both schemes, trace distances against the ideal
//! outputs, and sweeps over sequence length and coherent angle.

mod record;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytics::{trace_distance, Scheme};
use crate::code422::{
    build_encoder, coded_gate_circuit, decode_aggregate, decoded_distribution, post_select, post_select_distribution,
    uncoded_gate_circuit, EncoderVariant, GateSetId, LogicalGate, LogicalStateLabel,
};
use crate::noise::{depolarize, insert_coherent_rotation, noisy_counts, NoiseParams};
use crate::sim::{ideal_distribution, Circuit, OutcomeDistribution, ShotCounts};
use crate::{Error, Result};

pub use record::{
    read_records, read_records_from, read_sidecar, utc_timestamp, write_sidecar, ExperimentRecord, RecordWriter,
    Sidecar, CSV_HEADER,
};

/// Longest supported sequence.
pub const MAX_SEQUENCE_LENGTH: u32 = 1000;
/// Shots per circuit when none are given.
pub const DEFAULT_SHOTS: u64 = 8192;
/// Recorded in sidecars: sequences are drawn afresh for every `(L, seed)`.
pub const SEQUENCE_SAMPLING: &str = "independent per (L, seed)";

/// Which gates, how many, and the seed that picks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceSpec {
    pub gate_set: GateSetId,
    pub l: u32,
    pub seed: u64,
}

impl SequenceSpec {
    pub fn new(gate_set: GateSetId, l: u32, seed: u64) -> Result<Self> {
        if !(1..=MAX_SEQUENCE_LENGTH).contains(&l) {
            return Err(Error::InvalidArgument(format!(
                "sequence length {l} outside 1..={MAX_SEQUENCE_LENGTH}"
            )));
        }
        Ok(Self { gate_set, l, seed })
    }
}

/// I.i.d. uniform draws from the gate set, reproducible per seed.
pub fn random_sequence(spec: &SequenceSpec) -> Vec<LogicalGate> {
    let gates = spec.gate_set.gates();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.l).map(|_| gates[rng.gen_range(0..gates.len())]).collect()
}

/// Deterministic child seed for coordinates `(a, b)` under `master`.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(a);
    rng.set_word_pos(u128::from(b) * 2);
    rng.next_u64()
}

/// Uncoded circuit on `Q0, Q1` and coded circuit on `q0..q3` (non-fault-
/// tolerant `L00` encoder first). Gates are never cancelled or merged.
pub fn build_pair(sequence: &[LogicalGate]) -> Result<(Circuit, Circuit)> {
    let mut uncoded = Circuit::empty(2)?.measure_all();
    let mut coded = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant)?;
    for &g in sequence {
        uncoded.extend(uncoded_gate_circuit(g))?;
        coded.extend(coded_gate_circuit(g))?;
    }
    Ok((uncoded, coded))
}

/// Support size of an ideal output after pruning.
pub fn output_dimension(ideal: &OutcomeDistribution) -> usize {
    ideal.support_size()
}

/// How the experimental distributions are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairMode {
    /// Monte-Carlo shots, then `xi` mixing of the empirical frequencies.
    #[default]
    Sampled,
    /// No sampling: the ideal output mixed with `xi`. Needs zero per-shot
    /// noise.
    Exact,
}

/// Figures for one scheme of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeResult {
    pub scheme: Scheme,
    pub shots: u64,
    pub gamma: u64,
    pub r: f64,
    pub d: f64,
    pub d_decoded: f64,
}

/// All three schemes of one sequence plus the pair-level verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub uncoded: SchemeResult,
    pub coded_raw: SchemeResult,
    pub coded_ps: SchemeResult,
    /// Support size of the logical ideal output.
    pub output_dimension: usize,
    /// `D_c < D_u` with `D_c` taken after post-selection.
    pub fault_tolerant: bool,
}

impl PairResult {
    pub fn schemes(&self) -> [SchemeResult; 3] {
        [self.uncoded, self.coded_raw, self.coded_ps]
    }

    /// Records for all three schemes under one experiment id.
    pub fn records(&self, experiment_id: &str, spec: &SequenceSpec, params: &NoiseParams) -> Vec<ExperimentRecord> {
        let timestamp = utc_timestamp();
        self.schemes()
            .iter()
            .map(|s| ExperimentRecord {
                experiment_id: experiment_id.to_string(),
                gate_set: spec.gate_set,
                l: spec.l,
                seed: spec.seed,
                scheme: s.scheme,
                shots: s.shots,
                gamma: s.gamma,
                r: s.r,
                d: s.d,
                d_decoded: s.d_decoded,
                output_dimension: self.output_dimension,
                eps1: params.eps1,
                eps2: params.eps2,
                p_meas: params.p_meas,
                p_prep: params.p_prep,
                theta: if s.scheme == Scheme::Uncoded { 0.0 } else { params.theta },
                timestamp: timestamp.clone(),
            })
            .collect()
    }
}

// Experimental distribution of one circuit under the chosen mode.
fn experimental(
    circuit: &Circuit,
    params: &NoiseParams,
    shots: u64,
    seed: u64,
    mode: PairMode,
) -> Result<(OutcomeDistribution, Option<ShotCounts>)> {
    let (base, counts) = match mode {
        PairMode::Sampled => {
            let counts = noisy_counts(circuit, params, shots, seed)?;
            (counts.to_distribution().expect("at least one shot"), Some(counts))
        }
        PairMode::Exact => (ideal_distribution(circuit), None),
    };
    let dist = if params.xi > 0.0 {
        depolarize(&base, params.xi)?
    } else {
        base
    };
    Ok((dist, counts))
}

/// `D` over the four logical values plus one reject bucket.
fn decoded_with_rejects(experimental: &OutcomeDistribution, ideal_logical: &OutcomeDistribution) -> Result<f64> {
    let (sums, rejected) = decode_aggregate(experimental)?;
    let logical: f64 = sums
        .iter()
        .map(|(v, p)| (p - ideal_logical.get(&v.to_bitstring())).abs())
        .sum();
    Ok(0.5 * (logical + rejected))
}

/// Runs both schemes of `sequence` once.
///
/// The uncoded and coded circuits draw from independent seeds derived from
/// `seed`. The coded run is scored twice: raw over all sixteen outcomes, and
/// after post-selection with the retained frequencies renormalised. A
/// non-zero `theta` rotates the coded encoder only.
pub fn run_pair(sequence: &[LogicalGate], params: &NoiseParams, shots: u64, seed: u64) -> Result<PairResult> {
    run_pair_with(sequence, params, shots, seed, PairMode::Sampled)
}

pub fn run_pair_with(
    sequence: &[LogicalGate],
    params: &NoiseParams,
    shots: u64,
    seed: u64,
    mode: PairMode,
) -> Result<PairResult> {
    params.validate()?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    if mode == PairMode::Exact && !params.is_shot_noiseless() {
        return Err(Error::Unsupported("exact mode needs eps1 = eps2 = p_meas = p_prep = 0".into()));
    }
    let (uncoded, coded_plain) = build_pair(sequence)?;
    let coded = if params.theta != 0.0 {
        insert_coherent_rotation(&coded_plain, params.theta)?
    } else {
        coded_plain.clone()
    };
    // the logical reference ignores the deliberate coherent error
    let ideal_u = ideal_distribution(&uncoded);
    let ideal_c = ideal_distribution(&coded_plain);
    let (ideal_c_kept, _) = post_select_distribution(&ideal_c, false)?;
    let ideal_c_kept = ideal_c_kept.expect("codewords pass the parity check");

    let (exp_u, _) = experimental(&uncoded, params, shots, derive_seed(seed, 0, 0), mode)?;
    let d_u = trace_distance(&ideal_u, &exp_u)?;
    let uncoded_result = SchemeResult {
        scheme: Scheme::Uncoded,
        shots,
        gamma: shots,
        r: 1.0,
        d: d_u,
        d_decoded: d_u,
    };

    let (exp_c, counts_c) = experimental(&coded, params, shots, derive_seed(seed, 1, 0), mode)?;
    let coded_raw = SchemeResult {
        scheme: Scheme::CodedRaw,
        shots,
        gamma: shots,
        r: 1.0,
        d: trace_distance(&ideal_c, &exp_c)?,
        d_decoded: decoded_with_rejects(&exp_c, &ideal_u)?,
    };

    let (kept, mass) = post_select_distribution(&exp_c, false)?;
    // gamma counts actual shots; r follows the (possibly mixed) distribution
    let gamma = match &counts_c {
        Some(c) => post_select(c, false)?.gamma,
        None => (mass * shots as f64).round() as u64,
    };
    let (d_ps, d_ps_decoded) = match kept {
        Some(k) => (trace_distance(&ideal_c_kept, &k)?, trace_distance(&ideal_u, &decoded_distribution(&k)?)?),
        // nothing survives: report the worst case
        None => (1.0, 1.0),
    };
    let coded_ps = SchemeResult {
        scheme: Scheme::CodedPs,
        shots,
        gamma,
        r: mass,
        d: d_ps,
        d_decoded: d_ps_decoded,
    };

    Ok(PairResult {
        uncoded: uncoded_result,
        coded_raw,
        coded_ps,
        output_dimension: output_dimension(&ideal_u),
        fault_tolerant: d_ps < d_u,
    })
}

/// Sweep settings shared by [`sweep_l`] and [`sweep_theta`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub experiment_id: String,
    pub gate_set: GateSetId,
    pub params: NoiseParams,
    pub shots: u64,
    pub master_seed: u64,
    pub mode: PairMode,
}

impl SweepConfig {
    pub fn new(experiment_id: impl Into<String>, gate_set: GateSetId, params: NoiseParams) -> Self {
        Self {
            experiment_id: experiment_id.into(),
            gate_set,
            params,
            shots: DEFAULT_SHOTS,
            master_seed: 0,
            mode: PairMode::Sampled,
        }
    }
}

/// Runs `seeds_per_l` random sequences at every length. Sequence `i` at
/// length `L` uses seed `derive_seed(master_seed, L, i)`. Records come back
/// ordered by `(L, i, scheme)` whatever the scheduling.
pub fn sweep_l(config: &SweepConfig, lengths: &[u32], seeds_per_l: u32) -> Result<Vec<ExperimentRecord>> {
    let jobs: Vec<SequenceSpec> = lengths
        .iter()
        .flat_map(|&l| {
            (0..seeds_per_l).map(move |i| (l, i))
        })
        .map(|(l, i)| SequenceSpec::new(config.gate_set, l, derive_seed(config.master_seed, u64::from(l), u64::from(i))))
        .collect::<Result<_>>()?;
    let per_job = jobs
        .par_iter()
        .map(|spec| {
            let seq = random_sequence(spec);
            let pair = run_pair_with(&seq, &config.params, config.shots, spec.seed, config.mode)?;
            Ok(pair.records(&config.experiment_id, spec, &config.params))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// One fixed sequence per seed, rerun at every angle with the rotation
/// inserted after the coded encoder's Hadamard. `theta = 0` leaves the coded
/// circuit untouched.
pub fn sweep_theta(config: &SweepConfig, thetas: &[f64], l: u32, seeds: u32) -> Result<Vec<ExperimentRecord>> {
    let specs: Vec<SequenceSpec> = (0..seeds)
        .map(|i| SequenceSpec::new(config.gate_set, l, derive_seed(config.master_seed, u64::from(l), u64::from(i))))
        .collect::<Result<_>>()?;
    let jobs: Vec<(f64, SequenceSpec)> = thetas
        .iter()
        .flat_map(|&t| specs.iter().map(move |s| (t, *s)))
        .collect();
    let per_job = jobs
        .par_iter()
        .map(|(theta, spec)| {
            let params = NoiseParams {
                theta: *theta,
                ..config.params
            };
            let seq = random_sequence(spec);
            let pair = run_pair_with(&seq, &params, config.shots, spec.seed, config.mode)?;
            Ok(pair.records(&config.experiment_id, spec, &params))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// Mean `D` of one scheme at one length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub l: u32,
    pub scheme: Scheme,
    pub mean_d: f64,
    pub mean_r: f64,
    pub samples: usize,
}

/// Averages records by `(L, scheme)`, ordered by length then scheme.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(u32, Scheme), (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let e = groups.entry((r.l, r.scheme)).or_insert((0.0, 0.0, 0));
        e.0 += r.d;
        e.1 += r.r;
        e.2 += 1;
    }
    groups
        .into_iter()
        .map(|((l, scheme), (d, r, n))| SummaryRow {
            l,
            scheme,
            mean_d: d / n as f64,
            mean_r: r / n as f64,
            samples: n,
        })
        .collect()
}

/// Qubit pairs on which two-qubit gates are allowed (undirected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    n_qubits: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(n_qubits: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::DuplicateQubit(a));
            }
            if let Some(&q) = [a, b].iter().find(|&&q| q >= n_qubits) {
                return Err(Error::QubitIndex { index: q, n_qubits });
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { n_qubits, pairs: set })
    }

    /// Chain `0 - 1 - ... - (n-1)`.
    pub fn linear(n_qubits: usize) -> Self {
        let pairs: Vec<_> = (1..n_qubits).map(|q| (q - 1, q)).collect();
        Self::new(n_qubits, &pairs).expect("chain pairs are valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

/// A two-qubit gate placed on a pair the map does not allow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingViolation {
    pub gate_index: usize,
    pub targets: (usize, usize),
}

/// Every two-qubit gate whose pair is missing from `map`.
pub fn validate_coupling(circuit: &Circuit, map: &CouplingMap) -> Result<Vec<CouplingViolation>> {
    if circuit.n_qubits() > map.n_qubits() {
        return Err(Error::InvalidArgument(format!(
            "{}-qubit circuit does not fit a {}-qubit coupling map",
            circuit.n_qubits(),
            map.n_qubits()
        )));
    }
    Ok(circuit
        .gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.arity() == 2 && !map.allows(g.targets[0], g.targets[1]))
        .map(|(gate_index, g)| CouplingViolation {
            gate_index,
            targets: (g.targets[0], g.targets[1]),
        })
        .collect())
}
