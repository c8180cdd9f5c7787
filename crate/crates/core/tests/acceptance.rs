//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qec422::analytics::{predict_coded_ps, predict_uncoded, trace_distance, Scheme};
use qec422::code422::{
    build_encoder, codeword_distribution, decode, decode_aggregate, post_select_distribution, EncoderVariant,
    GateSetId, LogicalGate, LogicalStateLabel, LogicalValue,
};
use qec422::experiments::{
    build_pair, random_sequence, read_records_from, run_pair, run_pair_with, summarize, sweep_l, ExperimentRecord,
    PairMode, RecordWriter, SequenceSpec, SweepConfig,
};
use qec422::ftcheck::{verify_definition1, Detection, FaultSite};
use qec422::noise::{noisy_counts, NoiseParams};
use qec422::sim::{ideal_distribution, parse_circuit, Bitstring, Circuit, GateInstance, OutcomeDistribution, ShotCounts};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail.into())
    }
}

fn sigma(p: f64, n: f64) -> f64 {
    (p * (1.0 - p) / n).sqrt()
}

fn uniform_over(strs: &[&str]) -> OutcomeDistribution {
    let w = 1.0 / strs.len() as f64;
    OutcomeDistribution::from_strs(&strs.iter().map(|s| (*s, w)).collect::<Vec<_>>()).unwrap()
}

fn worst_case_bounds() -> Outcome {
    let u4 = OutcomeDistribution::uniform(2);
    let cases = [
        (uniform_over(&["00"]), 0.75),
        (uniform_over(&["00", "11"]), 0.5),
        (uniform_over(&["00", "01", "10", "11"]), 0.0),
    ];
    for (ideal, want) in &cases {
        let d = trace_distance(ideal, &u4).map_err(|e| e.to_string())?;
        if (d - want).abs() > 1e-12 {
            return Err(format!("support {}: D = {d}, want {want}", ideal.support_size()));
        }
    }
    let (kept, r) = post_select_distribution(&OutcomeDistribution::uniform(4), false).map_err(|e| e.to_string())?;
    let kept = kept.ok_or("nothing retained")?;
    let d = trace_distance(&codeword_distribution(LogicalStateLabel::L00), &kept).map_err(|e| e.to_string())?;
    check(
        (r - 0.5).abs() < 1e-12 && (d - 0.75).abs() < 1e-12,
        format!("0.75 / 0.5 / 0; coded r = {r}, D = {d}"),
        format!("coded analog r = {r}, D = {d}"),
    )
}

fn encoder_residual_floor() -> Outcome {
    let enc = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant).map_err(|e| e.to_string())?;
    let report = verify_definition1(&enc, Detection::PostSelect).map_err(|e| e.to_string())?;
    let mut found: Vec<(usize, String)> = report
        .undetected_sites()
        .map(|s| match &s.site {
            FaultSite::Gate { gate_index, pauli } => (*gate_index, pauli.to_string()),
            FaultSite::Preparation { qubit } => (usize::MAX, format!("prep {qubit}")),
        })
        .collect();
    found.sort();
    // CNOT(1,2) leaks IX, IY, ZX, ZY; CNOT(2,3) leaks the pairs flipping both q2 and q3
    let want: Vec<(usize, String)> = [(2, "IX"), (2, "IY"), (2, "ZX"), (2, "ZY"), (3, "XX"), (3, "XY"), (3, "YX"), (3, "YY")]
        .iter()
        .map(|(g, p)| (*g, p.to_string()))
        .collect();
    if found != want {
        return Err(format!("undetected sites {found:?}"));
    }
    let eps2 = 0.01;
    let weight = report.undetected_weight(0.0, eps2, 0.0);
    if (weight - 8.0 * eps2 / 15.0).abs() > 1e-15 {
        return Err(format!("weight {weight}"));
    }

    let shots = 1_000_000u64;
    let params = NoiseParams { eps2, ..Default::default() };
    let counts = noisy_counts(&enc, &params, shots, 2024).map_err(|e| e.to_string())?;
    let wrong: u64 = counts
        .iter()
        .filter(|(b, _)| matches!(decode(*b), Ok(Some(v)) if v != LogicalValue::V00))
        .map(|(_, n)| n)
        .sum();
    let rate = wrong as f64 / shots as f64;
    let tol = 3.0 * sigma(weight, shots as f64);
    check(
        (rate - weight).abs() < tol,
        format!("8 sites, weight {weight:.4e}; Monte-Carlo {rate:.4e} (3 sigma {tol:.1e})"),
        format!("Monte-Carlo {rate:.4e} vs {weight:.4e}, 3 sigma {tol:.1e}"),
    )
}

fn ancilla_encoder() -> Outcome {
    let enc = build_encoder(LogicalStateLabel::L00, EncoderVariant::AncillaChecked).map_err(|e| e.to_string())?;
    let report = verify_definition1(&enc, Detection::PostSelectAncilla).map_err(|e| e.to_string())?;
    let n = report.undetected_sites().count();
    check(
        report.fault_tolerant && n == 0,
        format!("fault tolerant over {} sites", report.sites.len()),
        format!("{n} undetected sites"),
    )
}

fn wrong_fraction(counts: &ShotCounts, accept: impl Fn(Bitstring) -> Option<bool>) -> f64 {
    let wrong: u64 = counts.iter().filter(|(b, _)| accept(*b) == Some(true)).map(|(_, n)| n).sum();
    wrong as f64 / counts.total() as f64
}

fn measurement_laws() -> Outcome {
    let p = 0.02;
    let shots = 1_000_000u64;
    let n = shots as f64;
    let params = NoiseParams { p_meas: p, ..Default::default() };

    let bare = Circuit::empty(2).map_err(|e| e.to_string())?.measure_all();
    let counts = noisy_counts(&bare, &params, shots, 7).map_err(|e| e.to_string())?;
    let u = wrong_fraction(&counts, |b| Some(b.bits() != 0));
    let u_want = 2.0 * p - p * p;

    let enc = build_encoder(LogicalStateLabel::L00, EncoderVariant::NonFaultTolerant).map_err(|e| e.to_string())?;
    let counts = noisy_counts(&enc, &params, shots, 8).map_err(|e| e.to_string())?;
    let c = wrong_fraction(&counts, |b| decode(b).ok().flatten().map(|v| v != LogicalValue::V00));
    let c_want = 6.0 * p * p * (1.0 - p) * (1.0 - p);

    let (tu, tc) = (3.0 * sigma(u_want, n), 3.0 * sigma(c_want, n));
    check(
        (u - u_want).abs() < tu && (c - c_want).abs() < tc,
        format!("uncoded {u:.5} (want {u_want:.5}), coded {c:.3e} (want {c_want:.3e})"),
        format!("uncoded {u:.5} vs {u_want:.5} (3 sigma {tu:.1e}); coded {c:.3e} vs {c_want:.3e} (3 sigma {tc:.1e})"),
    )
}

fn criterion_regime() -> Outcome {
    let eps1 = 4e-3;
    let params = NoiseParams { eps1, eps2: 40.0 * eps1, p_meas: 0.02, ..Default::default() };
    let mut cfg = SweepConfig::new("acceptance", GateSetId::Reduced, params);
    cfg.shots = 8192;
    cfg.master_seed = 5;
    let lengths = [20, 50, 100];
    let records = sweep_l(&cfg, &lengths, 20).map_err(|e| e.to_string())?;
    let rows = summarize(&records);
    let mut notes = Vec::new();
    for l in lengths {
        let mean = |s: Scheme| rows.iter().find(|r| r.l == l && r.scheme == s).map(|r| r.mean_d);
        let (du, dc) = (mean(Scheme::Uncoded).ok_or("missing row")?, mean(Scheme::CodedPs).ok_or("missing row")?);
        if dc >= du {
            return Err(format!("L={l}: D_c,ps {dc:.4} >= D_u {du:.4}"));
        }
        notes.push(format!("L={l}: {dc:.3} < {du:.3}"));
    }
    if let Some(l) = (10..=1000).find(|&l| predict_coded_ps(l, &params) >= predict_uncoded(l, &params)) {
        return Err(format!("prediction ordering fails at L={l}"));
    }
    Ok(notes.join(", "))
}

fn output_dimension_anomaly() -> Outcome {
    let d_u = |l: usize, xi: f64| -> Result<f64, String> {
        let seq = vec![LogicalGate::HhSwap; l];
        let params = NoiseParams { xi, ..Default::default() };
        run_pair_with(&seq, &params, 8192, 1, PairMode::Exact)
            .map(|p| p.uncoded.d)
            .map_err(|e| e.to_string())
    };
    for l in [2usize, 4, 10, 1, 3, 9] {
        let even = l % 2 == 0;
        let (full, half) = (d_u(l, 1.0)?, d_u(l, 0.5)?);
        let (want_full, want_half) = if even { (0.75, 0.375) } else { (0.0, 0.0) };
        if (full - want_full).abs() > 1e-12 || (half - want_half).abs() > 1e-12 {
            return Err(format!("L={l}: D_u(1) = {full}, D_u(0.5) = {half}"));
        }
        let mut last = -1.0;
        for k in 0..=20 {
            let d = d_u(l, k as f64 / 20.0)?;
            if d < last - 1e-15 {
                return Err(format!("L={l}: D_u decreases in xi"));
            }
            last = d;
        }
    }
    Ok("even L: 0.75 / 0.375, odd L: 0 / 0".into())
}

fn coherent_insertion() -> Outcome {
    let shots = 100_000u64;
    let n = shots as f64;
    let mut notes = Vec::new();
    for (name, theta) in [("0", 0.0), ("pi/2", PI / 2.0), ("pi", PI)] {
        let params = NoiseParams { theta, ..Default::default() };
        let pair = run_pair(&[LogicalGate::HhSwap], &params, shots, 99).map_err(|e| e.to_string())?;
        let want = (theta / 2.0).cos().powi(2);
        let r = pair.coded_ps.gamma as f64 / n;
        if (r - want).abs() > 3.0 * sigma(want, n) {
            return Err(format!("theta={name}: r = {r}, want {want}"));
        }
        if pair.coded_ps.gamma > 0 {
            // 3 sigma per outcome over the eight retained strings
            let gamma = pair.coded_ps.gamma as f64;
            let bound = 0.5 * 8.0 * 3.0 * sigma(1.0 / 8.0, gamma);
            if pair.coded_ps.d >= bound {
                return Err(format!("theta={name}: retained D = {} >= {bound}", pair.coded_ps.d));
            }
        }
        notes.push(format!("theta={name}: r={r:.4}"));
    }
    Ok(notes.join(", "))
}

fn logical_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..200 {
        let l = rng.gen_range(1..=8);
        let spec = SequenceSpec::new(GateSetId::Full, l, rng.gen()).map_err(|e| e.to_string())?;
        let seq = random_sequence(&spec);
        let (u, c) = build_pair(&seq).map_err(|e| e.to_string())?;
        let ideal_u = ideal_distribution(&u).to_dense();
        let (per_value, odd) = decode_aggregate(&ideal_distribution(&c)).map_err(|e| e.to_string())?;
        let mut coded = [0.0; 4];
        for (v, p) in per_value {
            coded[v.to_bitstring().bits() as usize] += p;
        }
        let diff = ideal_u.iter().zip(coded).map(|(a, b)| (a - b).abs()).fold(odd, f64::max);
        // equal up to floating-point rounding
        if diff > 1e-12 {
            return Err(format!("sequence {i} {seq:?}: max difference {diff}"));
        }
    }
    Ok("200 sequences agree".into())
}

fn random_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..=8);
    let mut c = Circuit::empty(n).unwrap();
    for _ in 0..rng.gen_range(0..40) {
        let q = rng.gen_range(0..n);
        let g = match rng.gen_range(0..9) {
            0 => GateInstance::x(q),
            1 => GateInstance::y(q),
            2 => GateInstance::z(q),
            3 => GateInstance::h(q),
            4 => GateInstance::s(q),
            5 => GateInstance::rz(q, rng.gen_range(-10.0..10.0)),
            k if n > 1 => {
                let b = (q + rng.gen_range(1..n)) % n;
                match k {
                    6 => GateInstance::cnot(q, b),
                    7 => GateInstance::cz(q, b),
                    _ => GateInstance::swap(q, b),
                }
            }
            _ => GateInstance::h(q),
        };
        c.push(g).unwrap();
    }
    let mut measured: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
    if measured.is_empty() {
        measured.push(0);
    }
    c.set_measured(measured).unwrap();
    c
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..100 {
        let c = random_circuit(&mut rng);
        let back = parse_circuit(&c.to_text()).map_err(|e| format!("circuit {i}: {e}"))?;
        if back != c {
            return Err(format!("circuit {i} changed:\n{c}"));
        }
    }

    let records: Vec<ExperimentRecord> = (0..1000)
        .map(|i| {
            let mut f = || f64::from_bits(rng.gen::<u64>() >> 2) * if rng.gen() { -1.0 } else { 1.0 };
            ExperimentRecord {
                experiment_id: format!("rt-{i}"),
                gate_set: GateSetId::ALL[i % 3],
                l: 1 + (i as u32 % 1000),
                seed: i as u64 * 7919,
                scheme: Scheme::ALL[i % 3],
                shots: 8192,
                gamma: i as u64,
                r: f(),
                d: f(),
                d_decoded: f(),
                output_dimension: 1 + i % 4,
                eps1: f(),
                eps2: f(),
                p_meas: f(),
                p_prep: f(),
                theta: f(),
                timestamp: "2026-10-18T00:00:00Z".into(),
            }
        })
        .collect();
    let mut buf = Vec::new();
    {
        let mut w = RecordWriter::with_header(&mut buf, true).map_err(|e| e.to_string())?;
        w.write_all(&records).map_err(|e| e.to_string())?;
        w.flush().map_err(|e| e.to_string())?;
    }
    let back = read_records_from(buf.as_slice()).map_err(|e| e.to_string())?;
    let bits = |r: &ExperimentRecord| [r.r, r.d, r.d_decoded, r.eps1, r.eps2, r.p_meas, r.p_prep, r.theta].map(f64::to_bits);
    let exact = back.len() == records.len()
        && records.iter().zip(&back).all(|(a, b)| a == b && bits(a) == bits(b));
    check(exact, "100 circuits, 1000 records", "records differ after CSV round trip")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 worst-case bounds", worst_case_bounds, Duration::from_secs(1)),
        ("2 encoder residual floor", encoder_residual_floor, Duration::from_secs(30)),
        ("3 ancilla-checked encoder", ancilla_encoder, Duration::from_secs(1)),
        ("4 measurement-error laws", measurement_laws, Duration::from_secs(60)),
        ("5 fault-tolerance criterion regime", criterion_regime, Duration::from_secs(600)),
        ("6 output-dimension anomaly", output_dimension_anomaly, Duration::from_secs(60)),
        ("7 coherent insertion", coherent_insertion, Duration::from_secs(60)),
        ("8 logical equivalence", logical_equivalence, Duration::from_secs(60)),
        ("9 parser/persistence round trips", round_trips, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{took:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
