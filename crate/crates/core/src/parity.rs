//! Ancilla-mediated two-qubit parity measurements (`XX`, `YY`, `ZZ`).
//!
//! Each data qubit is rotated so the chosen basis maps onto Z, both are
//! copied onto the ancilla with CNOTs, the rotation is undone and the
//! ancilla is read out. Outcome 0 means even parity, i.e. the `+1`
//! eigenspace of the two-body operator.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};
use crate::statevec::Gate;

/// Parity basis, one per edge colour of the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParityBasis {
    XX,
    YY,
    ZZ,
}

impl ParityBasis {
    pub fn pauli(self) -> Pauli {
        match self {
            ParityBasis::XX => Pauli::X,
            ParityBasis::YY => Pauli::Y,
            ParityBasis::ZZ => Pauli::Z,
        }
    }

    pub fn from_pauli(p: Pauli) -> Option<Self> {
        match p {
            Pauli::X => Some(ParityBasis::XX),
            Pauli::Y => Some(ParityBasis::YY),
            Pauli::Z => Some(ParityBasis::ZZ),
            Pauli::I => None,
        }
    }

    /// The two-body operator measured on `(a, b)`.
    pub fn operator(self, num_qubits: usize, a: usize, b: usize) -> Result<PauliOperator> {
        PauliOperator::two_body(num_qubits, a, b, self.pauli())
    }
}

/// Gates mapping the eigenbasis of `pauli` on `qubit` onto the Z basis.
pub fn to_z_basis(pauli: Pauli, qubit: usize) -> Vec<Gate> {
    match pauli {
        Pauli::I | Pauli::Z => vec![],
        Pauli::X => vec![Gate::H(qubit)],
        Pauli::Y => vec![Gate::Sdg(qubit), Gate::H(qubit)],
    }
}

/// Inverse of [`to_z_basis`].
pub fn from_z_basis(pauli: Pauli, qubit: usize) -> Vec<Gate> {
    to_z_basis(pauli, qubit).iter().rev().map(Gate::inverse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityMeasurement {
    pub basis: ParityBasis,
    /// `(v_i, v_j)`; `v_j` is copied onto the ancilla first.
    pub data: (usize, usize),
    pub ancilla: usize,
    pub clbit: usize,
}

impl ParityMeasurement {
    pub fn new(basis: ParityBasis, data: (usize, usize), ancilla: usize, clbit: usize) -> Result<Self> {
        let (a, b) = data;
        if a == b || a == ancilla || b == ancilla {
            return Err(Error::Construction(format!(
                "parity measurement qubits must be distinct, got data ({a}, {b}) ancilla {ancilla}"
            )));
        }
        Ok(ParityMeasurement {
            basis,
            data,
            ancilla,
            clbit,
        })
    }

    pub fn operator(&self, num_qubits: usize) -> Result<PauliOperator> {
        self.basis.operator(num_qubits, self.data.0, self.data.1)
    }

    /// Basis change, the two CNOTs onto the ancilla, and the inverse basis
    /// change; leaves the parity bit in the ancilla's Z value.
    pub fn interaction(&self) -> Vec<Gate> {
        let p = self.basis.pauli();
        let (vi, vj) = self.data;
        let mut gates = to_z_basis(p, vi);
        gates.extend(to_z_basis(p, vj));
        gates.push(Gate::Cx {
            control: vj,
            target: self.ancilla,
        });
        gates.push(Gate::Cx {
            control: vi,
            target: self.ancilla,
        });
        gates.extend(from_z_basis(p, vi));
        gates.extend(from_z_basis(p, vj));
        gates
    }

    /// Appends the interaction, the ancilla readout and its reset.
    pub fn append_to(&self, circuit: &mut Circuit) -> Result<()> {
        circuit.gates(self.interaction())?;
        circuit.measure(self.ancilla, self.clbit)?;
        circuit.reset(self.ancilla)?;
        Ok(())
    }
}

/// Standalone circuit for one parity measurement on the given registers.
pub fn parity_circuit(m: &ParityMeasurement, num_qubits: usize, num_clbits: usize) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits, num_clbits)?;
    m.append_to(&mut c)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::StateVector;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn rejects_duplicate_qubits() {
        assert!(ParityMeasurement::new(ParityBasis::ZZ, (0, 0), 2, 0).is_err());
        assert!(ParityMeasurement::new(ParityBasis::XX, (0, 1), 1, 0).is_err());
    }

    #[test]
    fn zz_on_zero_state_is_even() {
        let m = ParityMeasurement::new(ParityBasis::ZZ, (0, 1), 2, 0).unwrap();
        let c = parity_circuit(&m, 3, 1).unwrap();
        let dist = c.outcome_distribution(&StateVector::new(3).unwrap()).unwrap();
        assert_eq!(dist.len(), 1);
        assert!((dist[&0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zz_preserves_even_superposition() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let bell = StateVector::from_amplitudes(vec![h, z, z, h]).unwrap();
        let input = bell.tensor(&StateVector::new(1).unwrap()).unwrap();
        let m = ParityMeasurement::new(ParityBasis::ZZ, (0, 1), 2, 0).unwrap();
        let c = parity_circuit(&m, 3, 1).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        let mut s = input.clone();
        for op in c.ops() {
            match op {
                crate::circuit::Op::Gate(g) => s.apply_gate(g).unwrap(),
                crate::circuit::Op::Measure { qubit, .. } => {
                    assert!(!s.measure_z(*qubit, &mut rng).unwrap())
                }
                crate::circuit::Op::Reset(q) => s.reset(*q, &mut rng).unwrap(),
                crate::circuit::Op::Barrier => {}
            }
        }
        assert!((s.fidelity(&input) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotations_conjugate_onto_z() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            // U P U^dag = Z  <=>  U applied to the +1 eigenstate of P gives |0>
            let mut s = StateVector::new(1).unwrap();
            for g in from_z_basis(p, 0) {
                s.apply_gate(&g).unwrap();
            }
            let op = PauliOperator::single(1, 0, p).unwrap();
            assert!((s.expectation(&op).unwrap() - 1.0).abs() < 1e-12, "{p:?}");
            for g in to_z_basis(p, 0) {
                s.apply_gate(&g).unwrap();
            }
            assert!((s.probability(0) - 1.0).abs() < 1e-12);
        }
    }
}
