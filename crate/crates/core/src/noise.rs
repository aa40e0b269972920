//! Monte-Carlo trajectory noise and the shot executor.
//!
//! Every qubit keeps its own clock. An op starts once all its qubits are
//! free; qubits that wait accumulate idle noise for the gap, and every
//! operand also idles for the op's duration. Gates are followed by a
//! depolarizing kick. Measurements idle for the readout duration, sample
//! the Born rule, then flip the classical bit with the readout error.
//! Resets are instantaneous and noiseless. A barrier brings every clock up
//! to the latest one.
//!
//! Idle noise is amplitude damping unravelled into Kraus jumps with
//! `gamma = 1 - exp(-t / T1)`, followed by a `Z` flip with probability
//! `(1 - exp(-t / T_phi)) / 2` where `1 / T_phi = 1 / T2 - 1 / (2 T1)`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuit::{set_bit, Circuit, Op};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};
use crate::statevec::{Gate, StateVector};

/// Op durations in seconds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Durations {
    pub single: f64,
    pub cnot: f64,
    pub measure: f64,
}

impl Durations {
    pub fn zero() -> Self {
        Durations {
            single: 0.0,
            cnot: 0.0,
            measure: 0.0,
        }
    }

    pub fn of(&self, op: &Op) -> f64 {
        match op {
            Op::Gate(g) if g.is_two_qubit() => self.cnot,
            Op::Gate(_) => self.single,
            Op::Measure { .. } => self.measure,
            Op::Reset(_) | Op::Barrier => 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, d) in [
            ("single", self.single),
            ("cnot", self.cnot),
            ("measure", self.measure),
        ] {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::Config(format!(
                    "{name} duration must be finite and non-negative"
                )));
            }
        }
        Ok(())
    }
}

/// Per-qubit noise parameters. Times in seconds; `f64::INFINITY` disables
/// the corresponding channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitNoise {
    pub t1: f64,
    pub t2: f64,
    pub readout_err: f64,
    pub single_err: f64,
}

impl QubitNoise {
    pub fn ideal() -> Self {
        QubitNoise {
            t1: f64::INFINITY,
            t2: f64::INFINITY,
            readout_err: 0.0,
            single_err: 0.0,
        }
    }

    /// Pure-dephasing rate `1/T2 - 1/(2 T1)`.
    pub fn dephasing_rate(&self) -> f64 {
        (1.0 / self.t2 - 0.5 / self.t1).max(0.0)
    }
}

/// Depolarizing probability of the CNOT between `pair[0]` and `pair[1]`
/// (either orientation).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairError {
    pub pair: [usize; 2],
    pub err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub qubits: Vec<QubitNoise>,
    pub pair_errors: Vec<PairError>,
    /// Used for CNOT pairs missing from `pair_errors`.
    pub default_pair_err: f64,
    pub durations: Durations,
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

impl NoiseConfig {
    pub fn noiseless(num_qubits: usize) -> Self {
        NoiseConfig {
            qubits: vec![QubitNoise::ideal(); num_qubits],
            pair_errors: Vec::new(),
            default_pair_err: 0.0,
            durations: Durations::zero(),
        }
    }

    /// Depolarizing probability `p` after every gate and nothing else.
    pub fn depolarizing(num_qubits: usize, p: f64) -> Self {
        let mut cfg = Self::noiseless(num_qubits);
        for q in &mut cfg.qubits {
            q.single_err = p;
        }
        cfg.default_pair_err = p;
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        for (i, q) in self.qubits.iter().enumerate() {
            if q.t1.is_nan() || q.t2.is_nan() || q.t1 <= 0.0 || q.t2 <= 0.0 {
                return Err(Error::Config(format!("qubit {i}: T1 and T2 must be positive")));
            }
            if q.t2 > 2.0 * q.t1 {
                return Err(Error::Config(format!(
                    "qubit {i}: T2 = {} exceeds 2 T1 = {}",
                    q.t2,
                    2.0 * q.t1
                )));
            }
            check_probability(&format!("qubit {i} readout error"), q.readout_err)?;
            check_probability(&format!("qubit {i} gate error"), q.single_err)?;
        }
        for pe in &self.pair_errors {
            check_probability(&format!("cnot {:?} error", pe.pair), pe.err)?;
        }
        check_probability("default pair error", self.default_pair_err)?;
        self.durations.validate()
    }

    pub fn pair_error(&self, a: usize, b: usize) -> f64 {
        self.pair_errors
            .iter()
            .find(|pe| pe.pair == [a, b] || pe.pair == [b, a])
            .map_or(self.default_pair_err, |pe| pe.err)
    }

    /// Gate error of `gate`: the pair error for CNOTs, the qubit's
    /// single-gate error otherwise.
    pub fn gate_error(&self, gate: &Gate) -> f64 {
        match *gate {
            Gate::Cx { control, target } => self.pair_error(control, target),
            _ => self.qubits[gate.qubits()[0]].single_err,
        }
    }

    /// Short content hash recorded in reports.
    pub fn id(&self) -> String {
        let json = serde_json::to_vec(self).expect("noise config serialises");
        hex::encode(&Sha256::digest(&json)[..8])
    }
}

/// Amplitude damping then pure dephasing on `qubit` for `duration` seconds.
pub fn apply_idle_noise<R: Rng + ?Sized>(
    state: &mut StateVector,
    qubit: usize,
    duration: f64,
    noise: &QubitNoise,
    rng: &mut R,
) -> Result<()> {
    if duration < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "negative idle duration {duration}"
        )));
    }
    if duration == 0.0 {
        return Ok(());
    }
    let gamma = 1.0 - (-duration / noise.t1).exp();
    if gamma > 0.0 {
        let p_jump = gamma * state.prob_one(qubit)?;
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let kraus = if rng.random::<f64>() < p_jump {
            [[zero, one], [zero, zero]]
        } else {
            [[one, zero], [zero, Complex64::new((1.0 - gamma).sqrt(), 0.0)]]
        };
        state.apply_single(qubit, &kraus);
        state.normalize()?;
    }
    let rate = noise.dephasing_rate();
    if rate > 0.0 {
        let p_z = (1.0 - (-duration * rate).exp()) / 2.0;
        if rng.random::<f64>() < p_z {
            state.apply_gate(&Gate::Z(qubit))?;
        }
    }
    Ok(())
}

/// With probability `p` applies a uniformly random non-identity Pauli on
/// the operands of `gate`.
pub fn apply_depolarizing<R: Rng + ?Sized>(
    state: &mut StateVector,
    qubits: &[usize],
    p: f64,
    rng: &mut R,
) -> Result<()> {
    if p <= 0.0 || rng.random::<f64>() >= p {
        return Ok(());
    }
    const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let choices = 4usize.pow(qubits.len() as u32) - 1;
    let mut k = rng.random_range(1..=choices);
    let mut terms = Vec::with_capacity(qubits.len());
    for &q in qubits {
        terms.push((q, PAULIS[k % 4]));
        k /= 4;
    }
    let op = PauliOperator::from_terms(state.num_qubits(), &terms)?;
    state.apply_pauli(&op)
}

pub fn apply_gate_noise<R: Rng + ?Sized>(
    state: &mut StateVector,
    gate: &Gate,
    config: &NoiseConfig,
    rng: &mut R,
) -> Result<()> {
    apply_depolarizing(state, &gate.qubits(), config.gate_error(gate), rng)
}

/// Classical readout flip.
pub fn flip_readout<R: Rng + ?Sized>(bit: bool, p: f64, rng: &mut R) -> bool {
    if p > 0.0 && rng.random::<f64>() < p {
        !bit
    } else {
        bit
    }
}

/// One shot of `circuit` from `|0...0>`; returns the classical record.
pub fn execute<R: Rng + ?Sized>(circuit: &Circuit, noise: Option<&NoiseConfig>, rng: &mut R) -> Result<u64> {
    let n = circuit.num_qubits();
    let mut state = StateVector::new(n)?;
    let mut bits = 0u64;

    let Some(cfg) = noise else {
        for op in circuit.ops() {
            match op {
                Op::Gate(g) => state.apply_gate(g)?,
                Op::Measure { qubit, clbit } => {
                    bits = set_bit(bits, *clbit, state.measure_z(*qubit, rng)?);
                }
                Op::Reset(q) => state.reset(*q, rng)?,
                Op::Barrier => {}
            }
        }
        return Ok(bits);
    };

    if cfg.qubits.len() < n {
        return Err(Error::Config(format!(
            "noise config covers {} qubits, circuit has {n}",
            cfg.qubits.len()
        )));
    }
    let mut clock = vec![0.0f64; n];
    for op in circuit.ops() {
        match op {
            Op::Gate(g) => {
                let qs = g.qubits();
                let start = qs.iter().map(|&q| clock[q]).fold(0.0, f64::max);
                let dur = cfg.durations.of(op);
                for &q in &qs {
                    apply_idle_noise(&mut state, q, start - clock[q], &cfg.qubits[q], rng)?;
                }
                state.apply_gate(g)?;
                apply_gate_noise(&mut state, g, cfg, rng)?;
                for &q in &qs {
                    apply_idle_noise(&mut state, q, dur, &cfg.qubits[q], rng)?;
                    clock[q] = start + dur;
                }
            }
            Op::Measure { qubit, clbit } => {
                let q = *qubit;
                let dur = cfg.durations.of(op);
                apply_idle_noise(&mut state, q, dur, &cfg.qubits[q], rng)?;
                let b = state.measure_z(q, rng)?;
                bits = set_bit(bits, *clbit, flip_readout(b, cfg.qubits[q].readout_err, rng));
                clock[q] += dur;
            }
            Op::Reset(q) => state.reset(*q, rng)?,
            Op::Barrier => {
                let t = clock.iter().copied().fold(0.0, f64::max);
                for (q, c) in clock.iter_mut().enumerate() {
                    apply_idle_noise(&mut state, q, t - *c, &cfg.qubits[q], rng)?;
                    *c = t;
                }
            }
        }
    }
    Ok(bits)
}
