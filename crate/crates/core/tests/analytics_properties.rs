mod common;

use proptest::prelude::*;
use qec422::analytics::{
    predict, predict_coded_ps, predict_coded_raw, predict_uncoded, sequence_error, trace_distance, worst_case_bound,
    PredictionMode, Scheme,
};
use qec422::code422::GateSetId;
use qec422::noise::NoiseParams;
use qec422::sim::OutcomeDistribution;

fn arb_dist(width: usize) -> impl Strategy<Value = OutcomeDistribution> {
    proptest::collection::vec(0.0f64..1.0, 1 << width)
        .prop_filter("non-zero mass", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(move |w| {
            let total: f64 = w.iter().sum();
            let dense: Vec<f64> = w.iter().map(|x| x / total).collect();
            OutcomeDistribution::from_dense(width, &dense).unwrap()
        })
}

fn arb_params() -> impl Strategy<Value = NoiseParams> {
    (0.0f64..0.05, 0.0f64..0.2, 0.0f64..0.1).prop_map(|(eps1, eps2, p_meas)| NoiseParams {
        eps1,
        eps2,
        p_meas,
        ..Default::default()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn trace_distance_is_a_metric(p in arb_dist(3), q in arb_dist(3), r in arb_dist(3)) {
        let pq = trace_distance(&p, &q).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
        prop_assert!((pq - trace_distance(&q, &p).unwrap()).abs() < 1e-15);
        prop_assert!(trace_distance(&p, &p).unwrap() < 1e-15);
        let pr = trace_distance(&p, &r).unwrap();
        let rq = trace_distance(&r, &q).unwrap();
        prop_assert!(pq <= pr + rq + 1e-12);
    }

    #[test]
    fn trace_distance_against_direct_sum(p in arb_dist(2), q in arb_dist(2)) {
        let direct: f64 = p.to_dense().iter().zip(q.to_dense()).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
        prop_assert!((trace_distance(&p, &q).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn worst_case_bound_dominates_uniform(p in arb_dist(2)) {
        let u = OutcomeDistribution::uniform(2);
        prop_assert!(trace_distance(&p, &u).unwrap() <= worst_case_bound(&p).max(trace_distance(&p, &u).unwrap()) + 1e-12);
    }

    #[test]
    fn predictions_are_probabilities(l in 1u32..1000, params in arb_params()) {
        for scheme in Scheme::ALL {
            for set in GateSetId::ALL {
                for mode in [PredictionMode::Truncated, PredictionMode::FullPolynomial] {
                    let v = predict(scheme, set, mode, l, &params);
                    prop_assert!((0.0..=1.0).contains(&v), "{scheme} {set} {mode:?} {l}: {v}");
                }
            }
        }
    }

    #[test]
    fn predictions_grow_with_length(l in 1u32..500, params in arb_params()) {
        prop_assert!(predict_uncoded(l + 1, &params) >= predict_uncoded(l, &params));
        prop_assert!(predict_coded_raw(l + 1, &params) >= predict_coded_raw(l, &params));
        prop_assert!(predict_coded_ps(l + 1, &params) >= predict_coded_ps(l, &params));
    }

    #[test]
    fn sequence_error_bounds(p in 0.0f64..=1.0, l in 1u32..200) {
        let s = sequence_error(p, l);
        prop_assert!(s >= p - 1e-15 && s <= 1.0);
        prop_assert!(s <= (l as f64 * p).min(1.0) + 1e-12);
    }
}

#[test]
fn uncoded_closed_form_independent_evaluation() {
    let params = NoiseParams { eps1: 1e-3, eps2: 2e-2, p_meas: 0.01, ..Default::default() };
    // reduced set: X0 X1 Z0 Z1 cost one 1q gate each, CZZZ is one CZ plus two 1q gates
    let per_gate_1q = (1.0 + 1.0 + 1.0 + 1.0 + 2.0) / 5.0;
    let per_gate_2q = 1.0 / 5.0;
    for l in [1u32, 7, 40] {
        let want = l as f64 * (per_gate_1q * params.eps1 + per_gate_2q * params.eps2) + 2.0 * 0.01 - 0.01 * 0.01;
        assert!((predict_uncoded(l, &params) - want).abs() < 1e-15);
    }
}
