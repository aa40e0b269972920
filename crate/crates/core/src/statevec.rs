//! Dense state-vector simulation.
//!
//! Qubit 0 is the least significant bit of the basis-state index, so the
//! amplitude of `|q2 q1 q0>` lives at index `q0 + 2 q1 + 4 q2`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Largest register simulated densely.
pub const MAX_QUBITS: usize = 24;

/// Probabilities at or below this are treated as impossible outcomes.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    Cx,
}

impl GateKind {
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Cx => "cx",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "h" => GateKind::H,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "cx" => GateKind::Cx,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        if self == GateKind::Cx {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    /// Flips `target` when `control` is 1.
    Cx {
        control: usize,
        target: usize,
    },
}

impl Gate {
    /// Builds a gate from its kind and operand list (`[control, target]` for CNOT).
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::Construction(format!(
                "{} takes {} operand(s), got {}",
                kind.mnemonic(),
                kind.arity(),
                qubits.len()
            )));
        }
        let q = qubits[0];
        let gate = match kind {
            GateKind::X => Gate::X(q),
            GateKind::Y => Gate::Y(q),
            GateKind::Z => Gate::Z(q),
            GateKind::H => Gate::H(q),
            GateKind::S => Gate::S(q),
            GateKind::Sdg => Gate::Sdg(q),
            GateKind::Cx => {
                if qubits[0] == qubits[1] {
                    return Err(Error::Construction("cx control and target must differ".into()));
                }
                Gate::Cx {
                    control: qubits[0],
                    target: qubits[1],
                }
            }
        };
        Ok(gate)
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::Cx { .. } => GateKind::Cx,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => {
                vec![q]
            }
            Gate::Cx { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. })
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    /// Relabel operands through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::X(q) => Gate::X(f(q)),
            Gate::Y(q) => Gate::Y(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::Cx { control, target } => Gate::Cx {
                control: f(control),
                target: f(target),
            },
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
        }
        if let Gate::Cx { control, target } = *self {
            if control == target {
                return Err(Error::Construction("cx control and target must differ".into()));
            }
        }
        Ok(())
    }

    /// Row-major 2x2 unitary of a single-qubit gate.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Some(match self {
            Gate::X(_) => [[ZERO, ONE], [ONE, ZERO]],
            Gate::Y(_) => [[ZERO, -I], [I, ZERO]],
            Gate::Z(_) => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::H(_) => [[h, h], [h, -h]],
            Gate::S(_) => [[ONE, ZERO], [ZERO, I]],
            Gate::Sdg(_) => [[ONE, ZERO], [ZERO, -I]],
            Gate::Cx { .. } => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zero state on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity(num_qubits));
        }
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[0] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::new(num_qubits)?;
        if index >= s.amps.len() {
            return Err(Error::InvalidState);
        }
        s.amps[0] = ZERO;
        s.amps[index] = ONE;
        Ok(s)
    }

    /// Wraps raw amplitudes, normalising them. The length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidState);
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity(num_qubits));
        }
        let mut s = StateVector { num_qubits, amps };
        let norm = s.norm_sqr();
        if !norm.is_finite() || norm <= PROBABILITY_FLOOR {
            return Err(Error::InvalidState);
        }
        s.scale(1.0 / norm.sqrt());
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Tensor product with `other` placed on the higher-order qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.num_qubits + other.num_qubits;
        if n > MAX_QUBITS {
            return Err(Error::Capacity(n));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for hi in &other.amps {
            for lo in &self.amps {
                amps.push(lo * hi);
            }
        }
        Ok(StateVector { num_qubits: n, amps })
    }

    /// Relabels qubits so that old qubit `i` becomes qubit `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StateVector> {
        let n = self.num_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Construction("permutation length mismatch".into()));
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Construction("not a permutation".into()));
            }
        }
        let mut amps = vec![ZERO; self.amps.len()];
        for (idx, a) in self.amps.iter().enumerate() {
            let mut out = 0;
            for (q, &p) in perm.iter().enumerate() {
                out |= ((idx >> q) & 1) << p;
            }
            amps[out] = *a;
        }
        Ok(StateVector { num_qubits: n, amps })
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }

    fn scale(&mut self, factor: f64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            Gate::Cx { control, target } => {
                let cm = 1 << control;
                let tm = 1 << target;
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
            Gate::X(q) => {
                let m = 1 << q;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        self.amps.swap(i, i | m);
                    }
                }
            }
            Gate::Z(q) => {
                let m = 1 << q;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a = -*a;
                    }
                }
            }
            _ => {
                let u = gate.single_qubit_matrix().expect("single-qubit gate");
                let q = gate.qubits()[0];
                self.apply_single(q, &u);
            }
        }
        Ok(())
    }

    /// Applies an arbitrary 2x2 matrix to `qubit` (not necessarily unitary).
    pub fn apply_single(&mut self, qubit: usize, u: &[[Complex64; 2]; 2]) {
        let m = 1 << qubit;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | m];
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i | m] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }

    /// Rescales to unit norm, e.g. after a non-unitary Kraus factor.
    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr();
        if !norm.is_finite() || norm <= PROBABILITY_FLOOR {
            return Err(Error::InvalidState);
        }
        self.scale(1.0 / norm.sqrt());
        Ok(())
    }

    /// Probability that a Z measurement of `qubit` returns 1.
    pub fn prob_one(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let m = 1 << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects `qubit` onto the Z outcome `outcome` and renormalises.
    /// Returns the probability of that outcome.
    pub fn collapse(&mut self, qubit: usize, outcome: bool) -> Result<f64> {
        let p1 = self.prob_one(qubit)?;
        let p = if outcome { p1 } else { 1.0 - p1 };
        if p <= PROBABILITY_FLOOR {
            return Err(Error::ImpossibleOutcome(p));
        }
        let m = 1 << qubit;
        let norm = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & m != 0) == outcome {
                *a *= norm;
            } else {
                *a = ZERO;
            }
        }
        Ok(p)
    }

    /// Z measurement with Born-rule sampling; returns the outcome bit.
    pub fn measure_z<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<bool> {
        let norm = self.norm_sqr();
        if norm.is_nan() || norm <= PROBABILITY_FLOOR {
            return Err(Error::InvalidState);
        }
        let p1 = self.prob_one(qubit)? / norm;
        let outcome = if p1 <= PROBABILITY_FLOOR {
            false
        } else if p1 >= 1.0 - PROBABILITY_FLOOR {
            true
        } else {
            rng.random::<f64>() < p1
        };
        self.collapse(qubit, outcome)?;
        Ok(outcome)
    }

    /// Measures `qubit` and flips it back to `|0>` if needed.
    pub fn reset<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<()> {
        if self.measure_z(qubit, rng)? {
            self.apply_gate(&Gate::X(qubit))?;
        }
        Ok(())
    }

    fn check_width(&self, op: &PauliOperator) -> Result<()> {
        if op.num_qubits() != self.num_qubits {
            Err(Error::WidthMismatch {
                op: op.num_qubits(),
                state: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Returns `op |self>` without modifying `self`.
    pub fn pauli_image(&self, op: &PauliOperator) -> Result<StateVector> {
        self.check_width(op)?;
        let (xm, zm) = op.masks();
        let ys = (xm & zm).count_ones() as u8;
        let base = I.powu(((op.phase_power() + ys) % 4) as u32);
        let mut amps = vec![ZERO; self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let sign = if (k & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            amps[k ^ xm] = base * a * sign;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    pub fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        *self = self.pauli_image(op)?;
        Ok(())
    }

    /// `<self| op |self>`; real for Hermitian operators.
    pub fn expectation(&self, op: &PauliOperator) -> Result<f64> {
        let image = self.pauli_image(op)?;
        let value = self.inner(&image);
        debug_assert!(
            !op.is_hermitian() || value.im.abs() < 1e-9,
            "non-real expectation {value}"
        );
        Ok(value.re)
    }

    /// Applies the projector `(I + (-1)^sign op) / 2` and renormalises.
    /// Returns the probability of the projected branch.
    pub fn project(&mut self, op: &PauliOperator, sign: bool) -> Result<f64> {
        if !op.is_hermitian() {
            return Err(Error::Construction(format!(
                "cannot project onto non-Hermitian {op}"
            )));
        }
        let image = self.pauli_image(op)?;
        let s = if sign { -0.5 } else { 0.5 };
        for (a, b) in self.amps.iter_mut().zip(&image.amps) {
            *a = *a * 0.5 + b * s;
        }
        let p = self.norm_sqr();
        if p <= PROBABILITY_FLOOR {
            return Err(Error::ImpossibleOutcome(p));
        }
        self.scale(1.0 / p.sqrt());
        Ok(p)
    }
}
