#![allow(dead_code)]

pub mod oracle;

use proptest::prelude::*;
use qec422::sim::{Circuit, GateInstance, GateKind};

/// Any gate on an `n`-qubit register.
pub fn arb_gate(n: usize) -> impl Strategy<Value = GateInstance> {
    let single = (0..n, 0u8..6, -10.0f64..10.0).prop_map(|(q, k, theta)| match k {
        0 => GateInstance::x(q),
        1 => GateInstance::y(q),
        2 => GateInstance::z(q),
        3 => GateInstance::h(q),
        4 => GateInstance::s(q),
        _ => GateInstance::rz(q, theta),
    });
    if n < 2 {
        return single.boxed();
    }
    let pair = (0..n, 1..n, 0u8..3).prop_map(move |(a, off, k)| {
        let b = (a + off) % n;
        match k {
            0 => GateInstance::cnot(a, b),
            1 => GateInstance::cz(a, b),
            _ => GateInstance::swap(a, b),
        }
    });
    prop_oneof![single, pair].boxed()
}

/// Clifford-only gates.
pub fn arb_clifford_gate(n: usize) -> impl Strategy<Value = GateInstance> {
    arb_gate(n).prop_filter("Clifford only", |g| g.kind.is_clifford())
}

pub fn arb_circuit(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits).prop_flat_map(move |n| {
        (
            proptest::collection::vec(arb_gate(n), 0..=max_gates),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n).prop_shuffle(),
        )
            .prop_map(move |(gates, measured)| Circuit::new(n, gates, measured).unwrap())
    })
}

pub fn arb_clifford_circuit(n: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(arb_clifford_gate(n), 1..=max_gates)
        .prop_map(move |gates| Circuit::new(n, gates, (0..n).collect()).unwrap())
}

pub fn is_involution(kind: &GateKind) -> bool {
    !matches!(kind, GateKind::S | GateKind::Rz(_))
}

/// Three-sigma half-width of a binomial proportion.
pub fn three_sigma(p: f64, n: f64) -> f64 {
    3.0 * (p * (1.0 - p) / n).sqrt()
}
