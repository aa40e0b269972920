//! Independent matrix oracles shared by the integration tests.
#![allow(dead_code)]

use braidsim::pauli::{Pauli, PauliOperator};
use braidsim::statevec::{Gate, StateVector};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(p: Pauli) -> CMat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m = match p {
        Pauli::I => [o, z, z, o],
        Pauli::X => [z, o, o, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [o, z, z, -o],
    };
    CMat::from_row_slice(2, 2, &m)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Dense matrix of `op`; qubit 0 is the least significant tensor factor.
pub fn operator_matrix(op: &PauliOperator) -> CMat {
    let n = op.num_qubits();
    let mut m = CMat::identity(1, 1);
    for q in (0..n).rev() {
        m = kron(&m, &pauli_matrix(op.get(q)));
    }
    let phase = c(0.0, 1.0).powu(op.phase_power() as u32);
    m * phase
}

fn single_matrix(g: &Gate) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m = match g {
        Gate::X(_) => [z, o, o, z],
        Gate::Y(_) => [z, -i, i, z],
        Gate::Z(_) => [o, z, z, -o],
        Gate::H(_) => [c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
        Gate::S(_) => [o, z, z, i],
        Gate::Sdg(_) => [o, z, z, -i],
        Gate::Cx { .. } => unreachable!(),
    };
    CMat::from_row_slice(2, 2, &m)
}

/// Full `2^n x 2^n` unitary of `g`.
pub fn gate_matrix(g: &Gate, n: usize) -> CMat {
    let dim = 1 << n;
    match *g {
        Gate::Cx { control, target } => {
            let mut m = CMat::zeros(dim, dim);
            for k in 0..dim {
                let out = if (k >> control) & 1 == 1 {
                    k ^ (1 << target)
                } else {
                    k
                };
                m[(out, k)] = c(1.0, 0.0);
            }
            m
        }
        _ => {
            let q = g.qubits()[0];
            let mut m = CMat::identity(1, 1);
            for k in (0..n).rev() {
                let f = if k == q {
                    single_matrix(g)
                } else {
                    CMat::identity(2, 2)
                };
                m = kron(&m, &f);
            }
            m
        }
    }
}

pub fn circuit_unitary(gates: &[Gate], n: usize) -> CMat {
    gates
        .iter()
        .fold(CMat::identity(1 << n, 1 << n), |acc, g| gate_matrix(g, n) * acc)
}

pub fn to_vector(s: &StateVector) -> CVec {
    CVec::from_column_slice(s.amplitudes())
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let amps = (0..1 << n)
        .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn fidelity_vec(a: &CVec, b: &CVec) -> f64 {
    (a.dotc(b).norm_sqr()) / (a.norm_squared() * b.norm_squared())
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// All `4^n` Pauli strings on `n` qubits with `+` sign.
pub fn all_paulis(n: usize) -> Vec<PauliOperator> {
    const P: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let terms: Vec<(usize, Pauli)> = (0..n)
                .map(|q| {
                    let p = P[k % 4];
                    k /= 4;
                    (q, p)
                })
                .collect();
            PauliOperator::from_terms(n, &terms).unwrap()
        })
        .collect()
}

pub fn density(s: &StateVector) -> CMat {
    let v = to_vector(s);
    &v * v.adjoint()
}

/// `m` acting on qubit `q` of `n`.
pub fn embed(m: &CMat, q: usize, n: usize) -> CMat {
    let mut out = CMat::identity(1, 1);
    for k in (0..n).rev() {
        let f = if k == q { m.clone() } else { CMat::identity(2, 2) };
        out = kron(&out, &f);
    }
    out
}

pub fn kraus(rho: &CMat, ops: &[CMat]) -> CMat {
    ops.iter().fold(CMat::zeros(rho.nrows(), rho.ncols()), |acc, k| {
        acc + k * rho * k.adjoint()
    })
}

pub fn unitary(rho: &CMat, u: &CMat) -> CMat {
    u * rho * u.adjoint()
}

/// Exact amplitude damping followed by pure dephasing.
pub fn idle_channel(rho: &CMat, q: usize, n: usize, t: f64, noise: &braidsim::noise::QubitNoise) -> CMat {
    if t == 0.0 {
        return rho.clone();
    }
    let gamma = 1.0 - (-t / noise.t1).exp();
    let k0 = CMat::from_row_slice(
        2,
        2,
        &[
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c((1.0 - gamma).sqrt(), 0.0),
        ],
    );
    let k1 = CMat::from_row_slice(
        2,
        2,
        &[c(0.0, 0.0), c(gamma.sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0)],
    );
    let damped = kraus(rho, &[embed(&k0, q, n), embed(&k1, q, n)]);
    let p = (1.0 - (-t * noise.dephasing_rate()).exp()) / 2.0;
    let z = embed(&pauli_matrix(Pauli::Z), q, n);
    damped.clone() * c(1.0 - p, 0.0) + unitary(&damped, &z) * c(p, 0.0)
}

/// Exact depolarizing channel on `qubits` with uniform non-identity Paulis.
pub fn depolarizing_channel(rho: &CMat, qubits: &[usize], n: usize, p: f64) -> CMat {
    let paulis = all_paulis(qubits.len());
    let count = (paulis.len() - 1) as f64;
    let mut out = rho.clone() * c(1.0 - p, 0.0);
    for local in &paulis[1..] {
        let terms: Vec<_> = qubits
            .iter()
            .enumerate()
            .map(|(i, &q)| (q, local.get(i)))
            .collect();
        let m = operator_matrix(&PauliOperator::from_terms(n, &terms).unwrap());
        out += unitary(rho, &m) * c(p / count, 0.0);
    }
    out
}

pub fn expectation_of(rho: &CMat, op: &PauliOperator) -> f64 {
    (operator_matrix(op) * rho).trace().re
}
