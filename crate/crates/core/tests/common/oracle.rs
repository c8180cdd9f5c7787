//! Reference simulator built from full `2^n x 2^n` matrices. Each gate is a
//! Kronecker product of single-qubit factors (sums of them for two-qubit
//! gates), applied by dense matrix-vector multiplication. Slow, but shares no
//! code with the library's in-place kernels.

use num_complex::Complex64 as C;
use qec422::sim::{Circuit, GateInstance, GateKind};

pub type Matrix = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn identity2() -> [[C; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

fn single(kind: &GateKind) -> [[C; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let o = c(0.0, 0.0);
    match kind {
        GateKind::X => [[o, c(1.0, 0.0)], [c(1.0, 0.0), o]],
        GateKind::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        GateKind::Z => [[c(1.0, 0.0), o], [o, c(-1.0, 0.0)]],
        GateKind::H => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        GateKind::S => [[c(1.0, 0.0), o], [o, c(0.0, 1.0)]],
        GateKind::Rz(t) => [[C::from_polar(1.0, -t / 2.0), o], [o, C::from_polar(1.0, t / 2.0)]],
        _ => unreachable!("two-qubit gate"),
    }
}

fn p0() -> [[C; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]
}

fn p1() -> [[C; 2]; 2] {
    [[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// `factors[q]` acts on qubit `q`; qubit `q` is bit `q` of the index, so the
/// highest qubit is the leftmost Kronecker factor and each new factor is
/// prepended.
pub fn kron_all(factors: &[[[C; 2]; 2]]) -> Matrix {
    let mut m: Matrix = vec![vec![c(1.0, 0.0)]];
    for f in factors {
        let d = m.len();
        let mut out = vec![vec![c(0.0, 0.0); 2 * d]; 2 * d];
        for (a, row) in f.iter().enumerate() {
            for (b, &fab) in row.iter().enumerate() {
                for i in 0..d {
                    for j in 0..d {
                        out[a * d + i][b * d + j] = fab * m[i][j];
                    }
                }
            }
        }
        m = out;
    }
    m
}

fn embed(n: usize, ops: &[(usize, [[C; 2]; 2])]) -> Matrix {
    let mut factors = vec![identity2(); n];
    for (q, op) in ops {
        factors[*q] = *op;
    }
    kron_all(&factors)
}

fn add(a: &Matrix, b: &Matrix, scale: f64) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * scale).collect())
        .collect()
}

/// Full-register unitary of one gate.
pub fn gate_matrix(n: usize, g: &GateInstance) -> Matrix {
    let t = &g.targets;
    match g.kind {
        GateKind::Cnot => add(
            &embed(n, &[(t[0], p0())]),
            &embed(n, &[(t[0], p1()), (t[1], single(&GateKind::X))]),
            1.0,
        ),
        GateKind::Cz => add(
            &embed(n, &[(t[0], p0())]),
            &embed(n, &[(t[0], p1()), (t[1], single(&GateKind::Z))]),
            1.0,
        ),
        GateKind::Swap => {
            // (II + XX + YY + ZZ) / 2
            let mut m = embed(n, &[]);
            for p in [GateKind::X, GateKind::Y, GateKind::Z] {
                m = add(&m, &embed(n, &[(t[0], single(&p)), (t[1], single(&p))]), 1.0);
            }
            m.iter().map(|r| r.iter().map(|x| x * 0.5).collect()).collect()
        }
        ref k => embed(n, &[(t[0], single(k))]),
    }
}

pub fn mat_vec(m: &Matrix, v: &[C]) -> Vec<C> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Final statevector from `|0...0>`.
pub fn final_state(circuit: &Circuit) -> Vec<C> {
    let n = circuit.n_qubits();
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    for g in circuit.gates() {
        v = mat_vec(&gate_matrix(n, g), &v);
    }
    v
}

/// Dense marginal over the measured qubits; bit `k` of the index is
/// `measured[k]`.
pub fn distribution(circuit: &Circuit) -> Vec<f64> {
    let v = final_state(circuit);
    let m = circuit.measured();
    let mut out = vec![0.0; 1 << m.len()];
    for (idx, a) in v.iter().enumerate() {
        let key = m.iter().enumerate().fold(0, |acc, (k, &q)| acc | (((idx >> q) & 1) << k));
        out[key] += a.norm_sqr();
    }
    out
}
