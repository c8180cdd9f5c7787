//! The `[4,2,2]` code: two logical qubits `Q0 Q1` on four physical qubits
//! `q0..q3`, distance 2, detection only.
//!
//! | logical | codeword strings (q0 leftmost) |
//! |---------|--------------------------------|
//! | `00`    | `0000`, `1111`                 |
//! | `01`    | `1100`, `0011`                 |
//! | `10`    | `1010`, `0101`                 |
//! | `11`    | `0110`, `1001`                 |
//!
//! Any odd-parity readout is discarded by post-selection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sim::{Bitstring, Circuit, GateInstance, OutcomeDistribution, ShotCounts};
use crate::{Error, Result};

/// Number of data qubits in a codeword.
pub const CODE_QUBITS: usize = 4;
/// Register position of the parity-check ancilla in the checked encoder.
pub const ANCILLA_QUBIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogicalStateLabel {
    L00,
    L01,
    L10,
    L11,
    /// `(|00> + |01>)/sqrt(2)` on the logical pair.
    L0Plus,
    /// `(|00> + |11>)/sqrt(2)` on the logical pair.
    LPhiPlus,
}

impl LogicalStateLabel {
    pub const ALL: [LogicalStateLabel; 6] = [
        Self::L00,
        Self::L01,
        Self::L10,
        Self::L11,
        Self::L0Plus,
        Self::LPhiPlus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::L00 => "L00",
            Self::L01 => "L01",
            Self::L10 => "L10",
            Self::L11 => "L11",
            Self::L0Plus => "L0plus",
            Self::LPhiPlus => "LPhiPlus",
        }
    }

    /// Logical basis values in the superposition, equally weighted.
    pub fn logical_support(&self) -> &'static [LogicalValue] {
        use LogicalValue::*;
        match self {
            Self::L00 => &[V00],
            Self::L01 => &[V01],
            Self::L10 => &[V10],
            Self::L11 => &[V11],
            Self::L0Plus => &[V00, V01],
            Self::LPhiPlus => &[V00, V11],
        }
    }
}

impl fmt::Display for LogicalStateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicalStateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown logical state `{s}`")))
    }
}

/// A decoded two-bit logical value, printed `Q0Q1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicalValue {
    V00,
    V01,
    V10,
    V11,
}

impl LogicalValue {
    pub const ALL: [LogicalValue; 4] = [Self::V00, Self::V01, Self::V10, Self::V11];

    /// As a 2-bit outcome with `Q0` at position 0.
    pub fn to_bitstring(self) -> Bitstring {
        let (q0, q1) = self.bits();
        Bitstring::new(u32::from(q0) | (u32::from(q1) << 1), 2)
    }

    pub fn from_bitstring(b: Bitstring) -> Self {
        match (b.bit(0), b.bit(1)) {
            (false, false) => Self::V00,
            (false, true) => Self::V01,
            (true, false) => Self::V10,
            (true, true) => Self::V11,
        }
    }

    /// `(Q0, Q1)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Self::V00 => (false, false),
            Self::V01 => (false, true),
            Self::V10 => (true, false),
            Self::V11 => (true, true),
        }
    }

    /// The two physical strings of this codeword; the first has `q0 = 0`.
    pub fn codeword_strings(self) -> [Bitstring; 2] {
        let (q0, q1) = self.bits();
        // X1 -> X on q0,q1 ; X0 -> X on q0,q2
        let mut mask = 0u32;
        if q1 {
            mask ^= 0b0011;
        }
        if q0 {
            mask ^= 0b0101;
        }
        let a = Bitstring::new(mask, 4);
        let b = a.xor_mask(0b1111);
        if a.bit(0) {
            [b, a]
        } else {
            [a, b]
        }
    }
}

impl fmt::Display for LogicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_bitstring().fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogicalGate {
    X0,
    X1,
    Z0,
    Z1,
    /// `cz(0,1)` followed by `Z0 Z1`.
    Czzz,
    /// `H0 H1` followed by `SWAP(0,1)`.
    HhSwap,
}

impl LogicalGate {
    pub const ALL: [LogicalGate; 6] = [
        Self::X0,
        Self::X1,
        Self::Z0,
        Self::Z1,
        Self::Czzz,
        Self::HhSwap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::X0 => "X0",
            Self::X1 => "X1",
            Self::Z0 => "Z0",
            Self::Z1 => "Z1",
            Self::Czzz => "CZZZ",
            Self::HhSwap => "HHSWAP",
        }
    }
}

impl fmt::Display for LogicalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicalGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown logical gate `{s}`")))
    }
}

/// The gate sets random sequences are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateSetId {
    /// `X0, X1, Z0, Z1, CZZZ`.
    Reduced,
    /// The reduced set plus `HHSWAP`.
    Full,
    /// `HHSWAP` only.
    SingleHhSwap,
}

impl GateSetId {
    pub const ALL: [GateSetId; 3] = [Self::Reduced, Self::Full, Self::SingleHhSwap];

    pub fn gates(&self) -> &'static [LogicalGate] {
        use LogicalGate::*;
        match self {
            Self::Reduced => &[X0, X1, Z0, Z1, Czzz],
            Self::Full => &[X0, X1, Z0, Z1, Czzz, HhSwap],
            Self::SingleHhSwap => &[HhSwap],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Reduced => "reduced",
            Self::Full => "full",
            Self::SingleHhSwap => "single_hhswap",
        }
    }
}

impl fmt::Display for GateSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateSetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|g| g.name() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown gate set `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EncoderVariant {
    /// Four qubits, no parity check.
    NonFaultTolerant,
    /// Five qubits; the ancilla on `q4` measures the parity of `q0, q3`.
    AncillaChecked,
}

impl FromStr for EncoderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonft" | "non_fault_tolerant" | "nonfaulttolerant" => Ok(Self::NonFaultTolerant),
            "ancilla" | "ancilla_checked" | "ancillachecked" | "ft" => Ok(Self::AncillaChecked),
            _ => Err(Error::InvalidArgument(format!("unknown encoder variant `{s}`"))),
        }
    }
}

/// Exact measurement distribution of a codeword over `q0..q3`.
pub fn codeword_distribution(label: LogicalStateLabel) -> OutcomeDistribution {
    let support: Vec<Bitstring> = label
        .logical_support()
        .iter()
        .flat_map(|v| v.codeword_strings())
        .collect();
    OutcomeDistribution::uniform_over(CODE_QUBITS, &support).expect("non-empty support")
}

fn l00_encoder_gates() -> [GateInstance; 4] {
    [
        GateInstance::h(1),
        GateInstance::cnot(1, 0),
        GateInstance::cnot(1, 2),
        GateInstance::cnot(2, 3),
    ]
}

/// Encoder circuit for `label`. Only `L00` has an ancilla-checked form.
pub fn build_encoder(label: LogicalStateLabel, variant: EncoderVariant) -> Result<Circuit> {
    use LogicalStateLabel::*;
    if variant == EncoderVariant::AncillaChecked {
        if label != L00 {
            return Err(Error::Unsupported(format!(
                "ancilla-checked encoder is only defined for L00, not {label}"
            )));
        }
        let mut c = Circuit::empty(CODE_QUBITS + 1)?;
        c.extend(l00_encoder_gates())?;
        c.push(GateInstance::cnot(0, ANCILLA_QUBIT))?;
        c.push(GateInstance::cnot(3, ANCILLA_QUBIT))?;
        return Ok(c.measure_all());
    }

    let mut c = Circuit::empty(CODE_QUBITS)?;
    match label {
        L00 | L01 | L10 | L11 => {
            c.extend(l00_encoder_gates())?;
            let (q0, q1) = label.logical_support()[0].bits();
            if q0 {
                c.extend(coded_gate_circuit(LogicalGate::X0))?;
            }
            if q1 {
                c.extend(coded_gate_circuit(LogicalGate::X1))?;
            }
        }
        // Bell pairs on (q0,q1) and (q2,q3)
        L0Plus => {
            c.extend([
                GateInstance::h(0),
                GateInstance::cnot(0, 1),
                GateInstance::h(2),
                GateInstance::cnot(2, 3),
            ])?;
        }
        // Bell pairs on (q0,q3) and (q1,q2)
        LPhiPlus => {
            c.extend([
                GateInstance::h(0),
                GateInstance::cnot(0, 3),
                GateInstance::h(1),
                GateInstance::cnot(1, 2),
            ])?;
        }
    }
    Ok(c.measure_all())
}

/// Physical gates on `q0..q3` implementing `gate` on encoded data.
pub fn coded_gate_circuit(gate: LogicalGate) -> Vec<GateInstance> {
    match gate {
        LogicalGate::X0 => vec![GateInstance::x(0), GateInstance::x(2)],
        LogicalGate::X1 => vec![GateInstance::x(0), GateInstance::x(1)],
        LogicalGate::Z0 => vec![GateInstance::z(0), GateInstance::z(1)],
        LogicalGate::Z1 => vec![GateInstance::z(0), GateInstance::z(2)],
        LogicalGate::Czzz => (0..4).map(GateInstance::s).collect(),
        LogicalGate::HhSwap => (0..4).map(GateInstance::h).collect(),
    }
}

/// Encoded `cz(0,1)` alone: `S` on all four qubits followed by `Z1 Z2`. Not
/// part of any experiment gate set.
pub fn coded_cz_only_circuit() -> Vec<GateInstance> {
    let mut gates: Vec<_> = (0..4).map(GateInstance::s).collect();
    gates.push(GateInstance::z(1));
    gates.push(GateInstance::z(2));
    gates
}

/// Physical gates on the bare pair `Q0, Q1`. `SWAP` is always three CNOTs.
pub fn uncoded_gate_circuit(gate: LogicalGate) -> Vec<GateInstance> {
    match gate {
        LogicalGate::X0 => vec![GateInstance::x(0)],
        LogicalGate::X1 => vec![GateInstance::x(1)],
        LogicalGate::Z0 => vec![GateInstance::z(0)],
        LogicalGate::Z1 => vec![GateInstance::z(1)],
        LogicalGate::Czzz => vec![GateInstance::cz(0, 1), GateInstance::z(0), GateInstance::z(1)],
        LogicalGate::HhSwap => vec![
            GateInstance::h(0),
            GateInstance::h(1),
            GateInstance::cnot(0, 1),
            GateInstance::cnot(1, 0),
            GateInstance::cnot(0, 1),
        ],
    }
}

/// Decode-time options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Relabel `q0 <-> q1` before decoding. Swapping those physical qubits
    /// acts as a logical CNOT, so this realises it in post-processing.
    pub virtual_swap_01: bool,
}

/// Maps an even-parity 4-bit readout to its logical value; odd parity is
/// `None` (reject).
pub fn decode(bitstring: Bitstring) -> Result<Option<LogicalValue>> {
    decode_with(bitstring, DecodeOptions::default())
}

pub fn decode_with(bitstring: Bitstring, options: DecodeOptions) -> Result<Option<LogicalValue>> {
    if bitstring.len() != CODE_QUBITS {
        return Err(Error::Width {
            expected: CODE_QUBITS,
            got: bitstring.len(),
        });
    }
    let b = if options.virtual_swap_01 {
        bitstring.swap_bits(0, 1)
    } else {
        bitstring
    };
    if !b.has_even_parity() {
        return Ok(None);
    }
    // representative with q0 = 0: q1 carries Q0 and q2 carries Q1
    let rep = if b.bit(0) { b.xor_mask(0b1111) } else { b };
    let q0 = rep.bit(1);
    let q1 = rep.bit(2);
    Ok(Some(LogicalValue::from_bitstring(Bitstring::new(
        u32::from(q0) | (u32::from(q1) << 1),
        2,
    ))))
}

fn decode_valid(b: Bitstring) -> Option<LogicalValue> {
    decode(b).expect("width checked by caller")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PostSelectionResult {
    /// Even-parity data strings that passed; width 4 (the ancilla bit is
    /// stripped).
    pub retained: ShotCounts,
    /// Accepted count `gamma`.
    pub gamma: u64,
    /// Total shots `R`.
    pub total: u64,
    /// Retention ratio `gamma / R`.
    pub r: f64,
    /// Even-parity shots discarded only because the ancilla read 1.
    pub ancilla_rejections: u64,
}

/// Discards odd-parity data strings and, with an ancilla, strings whose
/// fifth bit is 1.
pub fn post_select(raw: &ShotCounts, ancilla_present: bool) -> Result<PostSelectionResult> {
    let expected = CODE_QUBITS + usize::from(ancilla_present);
    if raw.width() != expected {
        return Err(Error::Width {
            expected,
            got: raw.width(),
        });
    }
    let mut retained = ShotCounts::new(CODE_QUBITS);
    let mut ancilla_rejections = 0;
    for (outcome, n) in raw.iter() {
        let data = outcome.truncate(CODE_QUBITS);
        if !data.has_even_parity() {
            continue;
        }
        if ancilla_present && outcome.bit(CODE_QUBITS) {
            ancilla_rejections += n;
            continue;
        }
        retained.add(data, n)?;
    }
    let gamma = retained.total();
    let total = raw.total();
    let r = if total == 0 {
        0.0
    } else {
        gamma as f64 / total as f64
    };
    Ok(PostSelectionResult {
        retained,
        gamma,
        total,
        r,
        ancilla_rejections,
    })
}

/// Distribution-level post-selection: the retained data distribution
/// (renormalized, `None` if nothing survives) and the retained mass.
pub fn post_select_distribution(
    dist: &OutcomeDistribution,
    ancilla_present: bool,
) -> Result<(Option<OutcomeDistribution>, f64)> {
    let expected = CODE_QUBITS + usize::from(ancilla_present);
    if dist.width() != expected {
        return Err(Error::Width {
            expected,
            got: dist.width(),
        });
    }
    let (kept, mass) = dist.condition(|b| {
        b.truncate(CODE_QUBITS).has_even_parity() && !(ancilla_present && b.bit(CODE_QUBITS))
    });
    let kept = match kept {
        Some(d) if ancilla_present => Some(d.marginal(&[0, 1, 2, 3])?),
        other => other,
    };
    Ok((kept, mass))
}

/// Sums even-parity mass per logical value. Odd-parity mass is returned
/// separately and left out of the (unnormalized) result.
pub fn decode_aggregate(dist: &OutcomeDistribution) -> Result<(Vec<(LogicalValue, f64)>, f64)> {
    if dist.width() != CODE_QUBITS {
        return Err(Error::Width {
            expected: CODE_QUBITS,
            got: dist.width(),
        });
    }
    let mut sums = [0.0f64; 4];
    let mut rejected = 0.0;
    for (b, p) in dist.iter() {
        match decode_valid(b) {
            Some(v) => sums[v as usize] += p,
            None => rejected += p,
        }
    }
    Ok((
        LogicalValue::ALL.iter().map(|&v| (v, sums[v as usize])).collect(),
        rejected,
    ))
}

/// The 2-bit logical distribution of an even-parity-only codeword
/// distribution; errors if any odd-parity mass is present.
pub fn decoded_distribution(dist: &OutcomeDistribution) -> Result<OutcomeDistribution> {
    let (sums, rejected) = decode_aggregate(dist)?;
    if rejected > 1e-12 {
        return Err(Error::Distribution(format!(
            "{rejected} probability mass on odd-parity strings"
        )));
    }
    OutcomeDistribution::from_pairs(2, sums.into_iter().map(|(v, p)| (v.to_bitstring(), p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ideal_distribution;

    fn bs(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    #[test]
    fn codeword_tables() {
        let l00 = codeword_distribution(LogicalStateLabel::L00);
        assert_eq!(l00, OutcomeDistribution::from_strs(&[("0000", 0.5), ("1111", 0.5)]).unwrap());
        let l11 = codeword_distribution(LogicalStateLabel::L11);
        assert_eq!(l11, OutcomeDistribution::from_strs(&[("0110", 0.5), ("1001", 0.5)]).unwrap());
        let l0p = codeword_distribution(LogicalStateLabel::L0Plus);
        for s in ["0000", "1111", "1100", "0011"] {
            assert_eq!(l0p.prob(s), 0.25);
        }
        assert_eq!(
            LogicalValue::V01.codeword_strings(),
            [bs("0011"), bs("1100")]
        );
        assert_eq!(
            LogicalValue::V10.codeword_strings(),
            [bs("0101"), bs("1010")]
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(bs("0011")).unwrap(), Some(LogicalValue::V01));
        assert_eq!(decode(bs("0111")).unwrap(), None);
        assert_eq!(decode(bs("0000")).unwrap(), Some(LogicalValue::V00));
        assert_eq!(decode(bs("1010")).unwrap(), Some(LogicalValue::V10));
        assert_eq!(decode(bs("1001")).unwrap(), Some(LogicalValue::V11));
        assert!(matches!(decode(bs("001")), Err(Error::Width { .. })));
    }

    #[test]
    fn odd_parity_list_rejected() {
        for s in ["1000", "0111", "0100", "1011", "0010", "1101", "1110", "0001"] {
            assert_eq!(decode(bs(s)).unwrap(), None, "{s}");
        }
    }

    #[test]
    fn virtual_swap_exchanges_10_and_11() {
        let opt = DecodeOptions {
            virtual_swap_01: true,
        };
        assert_eq!(decode_with(bs("1010"), opt).unwrap(), Some(LogicalValue::V11));
        assert_eq!(decode_with(bs("0000"), opt).unwrap(), Some(LogicalValue::V00));
        assert_eq!(decode_with(bs("1100"), opt).unwrap(), Some(LogicalValue::V01));
    }

    #[test]
    fn encoder_outputs() {
        for label in LogicalStateLabel::ALL {
            let c = build_encoder(label, EncoderVariant::NonFaultTolerant).unwrap();
            assert_eq!(c.n_qubits(), 4);
            assert!(ideal_distribution(&c).approx_eq(&codeword_distribution(label), 1e-12), "{label}");
        }
        let c = build_encoder(LogicalStateLabel::L00, EncoderVariant::AncillaChecked).unwrap();
        assert_eq!(c.n_qubits(), 5);
        let d = ideal_distribution(&c);
        assert!(d.approx_eq(
            &OutcomeDistribution::from_strs(&[("00000", 0.5), ("11110", 0.5)]).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn ancilla_encoder_only_for_l00() {
        assert!(matches!(
            build_encoder(LogicalStateLabel::L01, EncoderVariant::AncillaChecked),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn l00_encoder_gate_list() {
        let c = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant).unwrap();
        assert_eq!(
            c.gates(),
            &[
                GateInstance::h(1),
                GateInstance::cnot(1, 0),
                GateInstance::cnot(1, 2),
                GateInstance::cnot(2, 3)
            ]
        );
    }

    #[test]
    fn post_select_by_hand() {
        let raw = ShotCounts::from_strs(&[("0000", 500), ("1111", 300), ("0111", 100), ("0001", 100)]).unwrap();
        let ps = post_select(&raw, false).unwrap();
        assert_eq!(ps.gamma, 800);
        assert_eq!(ps.total, 1000);
        assert_eq!(ps.r, 0.8);
        assert_eq!(ps.retained, ShotCounts::from_strs(&[("0000", 500), ("1111", 300)]).unwrap());
        assert_eq!(ps.ancilla_rejections, 0);
    }

    #[test]
    fn post_select_uniform_halves() {
        let raw = ShotCounts::from_dense(4, &[10; 16]);
        let ps = post_select(&raw, false).unwrap();
        assert_eq!(ps.r, 0.5);
        assert_eq!(ps.retained.iter().count(), 8);
        assert!(ps.retained.iter().all(|(b, n)| b.has_even_parity() && n == 10));
    }

    #[test]
    fn post_select_with_ancilla() {
        let raw = ShotCounts::from_strs(&[("00000", 5), ("11110", 3), ("00110", 1), ("00111", 4), ("10000", 2)]).unwrap();
        let ps = post_select(&raw, true).unwrap();
        assert_eq!(ps.gamma, 9);
        assert_eq!(ps.ancilla_rejections, 4);
        assert_eq!(ps.retained.width(), 4);
        assert!(post_select(&raw, false).is_err());
    }

    #[test]
    fn post_select_all_even_keeps_everything() {
        let raw = ShotCounts::from_strs(&[("0000", 3), ("0110", 4)]).unwrap();
        assert_eq!(post_select(&raw, false).unwrap().r, 1.0);
    }

    #[test]
    fn uncoded_gate_examples() {
        let run = |g: LogicalGate| {
            let mut c = Circuit::empty(2).unwrap().measure_all();
            c.extend(uncoded_gate_circuit(g)).unwrap();
            ideal_distribution(&c)
        };
        assert!(run(LogicalGate::HhSwap).approx_eq(&OutcomeDistribution::uniform(2), 1e-12));
        assert_eq!(run(LogicalGate::X1), OutcomeDistribution::from_strs(&[("01", 1.0)]).unwrap());
        assert_eq!(run(LogicalGate::Czzz), OutcomeDistribution::from_strs(&[("00", 1.0)]).unwrap());
        let hh = uncoded_gate_circuit(LogicalGate::HhSwap);
        assert_eq!(hh.iter().filter(|g| g.arity() == 2).count(), 3);
    }

    #[test]
    fn coded_gate_examples() {
        let on_l00 = |gates: Vec<GateInstance>| {
            let mut c = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant).unwrap();
            c.extend(gates).unwrap();
            ideal_distribution(&c)
        };
        assert!(on_l00(coded_gate_circuit(LogicalGate::X1))
            .approx_eq(&codeword_distribution(LogicalStateLabel::L01), 1e-12));
        assert!(on_l00(coded_gate_circuit(LogicalGate::Czzz))
            .approx_eq(&codeword_distribution(LogicalStateLabel::L00), 1e-12));
        let even: Vec<Bitstring> = (0..16u32)
            .map(|b| Bitstring::new(b, 4))
            .filter(|b| b.has_even_parity())
            .collect();
        assert!(on_l00(coded_gate_circuit(LogicalGate::HhSwap))
            .approx_eq(&OutcomeDistribution::uniform_over(4, &even).unwrap(), 1e-12));
    }

    #[test]
    fn cz_only_variant_matches_bare_cz_logically() {
        // cz on |11> flips sign; check on the L0Plus-like superposition via HHSWAP interference
        let mut coded = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant).unwrap();
        coded.extend(coded_gate_circuit(LogicalGate::HhSwap)).unwrap();
        coded.extend(coded_cz_only_circuit()).unwrap();
        coded.extend(coded_gate_circuit(LogicalGate::HhSwap)).unwrap();
        let mut bare = Circuit::empty(2).unwrap().measure_all();
        bare.extend(uncoded_gate_circuit(LogicalGate::HhSwap)).unwrap();
        bare.push(GateInstance::cz(0, 1)).unwrap();
        bare.extend(uncoded_gate_circuit(LogicalGate::HhSwap)).unwrap();
        let decoded = decoded_distribution(&ideal_distribution(&coded)).unwrap();
        assert!(decoded.approx_eq(&ideal_distribution(&bare), 1e-12));
    }

    #[test]
    fn names_round_trip() {
        for g in LogicalGate::ALL {
            assert_eq!(g.name().parse::<LogicalGate>().unwrap(), g);
        }
        for l in LogicalStateLabel::ALL {
            assert_eq!(l.name().parse::<LogicalStateLabel>().unwrap(), l);
        }
        for s in GateSetId::ALL {
            assert_eq!(s.name().parse::<GateSetId>().unwrap(), s);
        }
        assert!("FOO".parse::<LogicalGate>().is_err());
    }
}
