//! Circuit IR: gates, Z measurements into classical bits, resets and barriers.
//!
//! Classical outcomes are packed into a `u64`, bit `c` holding classical
//! register `c`, so circuits carry at most 64 classical bits.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::statevec::{Gate, StateVector, PROBABILITY_FLOOR};

pub const MAX_CLBITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    Gate(Gate),
    Measure {
        qubit: usize,
        clbit: usize,
    },
    Reset(usize),
    /// Scheduling fence across every qubit.
    Barrier,
}

impl Op {
    pub fn qubits(&self, num_qubits: usize) -> Vec<usize> {
        match self {
            Op::Gate(g) => g.qubits(),
            Op::Measure { qubit, .. } => vec![*qubit],
            Op::Reset(q) => vec![*q],
            Op::Barrier => (0..num_qubits).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    num_clbits: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Result<Self> {
        if num_clbits > MAX_CLBITS {
            return Err(Error::Construction(format!(
                "at most {MAX_CLBITS} classical bits are supported"
            )));
        }
        Ok(Circuit {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        match &op {
            Op::Gate(g) => g.validate(self.num_qubits)?,
            Op::Measure { qubit, clbit } => {
                self.check_qubit(*qubit)?;
                if *clbit >= self.num_clbits {
                    return Err(Error::ClbitOutOfRange {
                        index: *clbit,
                        num_clbits: self.num_clbits,
                    });
                }
            }
            Op::Reset(q) => self.check_qubit(*q)?,
            Op::Barrier => {}
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn gate(&mut self, gate: Gate) -> Result<&mut Self> {
        self.push(Op::Gate(gate))?;
        Ok(self)
    }

    pub fn gates(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gates {
            self.push(Op::Gate(g))?;
        }
        Ok(self)
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) -> Result<&mut Self> {
        self.push(Op::Measure { qubit, clbit })?;
        Ok(self)
    }

    pub fn reset(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Op::Reset(qubit))?;
        Ok(self)
    }

    pub fn barrier(&mut self) -> Result<&mut Self> {
        self.push(Op::Barrier)?;
        Ok(self)
    }

    /// Appends every op of `other`, which must fit in this circuit's registers.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        for op in &other.ops {
            self.push(op.clone())?;
        }
        Ok(())
    }

    /// Renames qubit `q` to `map[q]` in a register of `num_qubits`.
    pub fn remap_qubits(&self, map: &[usize], num_qubits: usize) -> Result<Circuit> {
        if map.len() < self.num_qubits {
            return Err(Error::Construction("qubit map is too short".into()));
        }
        let mut out = Circuit::new(num_qubits, self.num_clbits)?;
        for op in &self.ops {
            let mapped = match op {
                Op::Gate(g) => Op::Gate(g.map_qubits(|q| map[q])),
                Op::Measure { qubit, clbit } => Op::Measure {
                    qubit: map[*qubit],
                    clbit: *clbit,
                },
                Op::Reset(q) => Op::Reset(map[*q]),
                Op::Barrier => Op::Barrier,
            };
            out.push(mapped)?;
        }
        Ok(out)
    }

    pub fn two_qubit_gates(&self) -> impl Iterator<Item = &Gate> {
        self.ops.iter().filter_map(|op| match op {
            Op::Gate(g) if g.is_two_qubit() => Some(g),
            _ => None,
        })
    }

    /// Stable content hash used to tag results.
    pub fn id(&self) -> String {
        let json = serde_json::to_vec(self).expect("circuit serialises");
        hex::encode(&Sha256::digest(&json)[..8])
    }

    /// One noiseless shot from `|0...0>`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        crate::noise::execute(self, None, rng)
    }

    /// Exact distribution over classical records, branching at every
    /// measurement and reset. Records with probability below `1e-12` are
    /// pruned.
    pub fn outcome_distribution(&self, initial: &StateVector) -> Result<BTreeMap<u64, f64>> {
        if initial.num_qubits() != self.num_qubits {
            return Err(Error::WidthMismatch {
                op: self.num_qubits,
                state: initial.num_qubits(),
            });
        }
        let mut out = BTreeMap::new();
        let mut stack = vec![(0usize, initial.clone(), 0u64, 1.0f64)];
        while let Some((mut pc, mut state, bits, prob)) = stack.pop() {
            let mut done = true;
            while pc < self.ops.len() {
                match &self.ops[pc] {
                    Op::Gate(g) => state.apply_gate(g)?,
                    Op::Barrier => {}
                    Op::Measure { qubit, clbit } => {
                        let p1 = state.prob_one(*qubit)?;
                        for outcome in [false, true] {
                            let p = if outcome { p1 } else { 1.0 - p1 };
                            if p * prob <= PROBABILITY_FLOOR {
                                continue;
                            }
                            let mut branch = state.clone();
                            branch.collapse(*qubit, outcome)?;
                            let b = set_bit(bits, *clbit, outcome);
                            stack.push((pc + 1, branch, b, prob * p));
                        }
                        done = false;
                        break;
                    }
                    Op::Reset(q) => {
                        let p1 = state.prob_one(*q)?;
                        for outcome in [false, true] {
                            let p = if outcome { p1 } else { 1.0 - p1 };
                            if p * prob <= PROBABILITY_FLOOR {
                                continue;
                            }
                            let mut branch = state.clone();
                            branch.collapse(*q, outcome)?;
                            if outcome {
                                branch.apply_gate(&Gate::X(*q))?;
                            }
                            stack.push((pc + 1, branch, bits, prob * p));
                        }
                        done = false;
                        break;
                    }
                }
                pc += 1;
            }
            if done {
                *out.entry(bits).or_insert(0.0) += prob;
            }
        }
        Ok(out)
    }
}

pub fn set_bit(word: u64, bit: usize, value: bool) -> u64 {
    if value {
        word | (1 << bit)
    } else {
        word & !(1 << bit)
    }
}

pub fn get_bit(word: u64, bit: usize) -> bool {
    (word >> bit) & 1 == 1
}
