//! Multi-qubit Pauli operators in the symplectic (x, z) bit representation.
//!
//! Qubit `i` carries `X` when only its x bit is set, `Z` when only its z bit
//! is set and `Y` when both are set. The overall phase is stored as a power
//! of `i`, so products of anticommuting operators stay representable; the
//! Hermitian operators used as measurements always carry phase `+1` or `-1`.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Product `self * other` as `(i^k, P)`.
    fn mul_phase(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    /// Power of `i` multiplying the tensor product.
    phase: u8,
    x: BitVec<u64, Lsb0>,
    z: BitVec<u64, Lsb0>,
}

impl PauliOperator {
    pub fn identity(num_qubits: usize) -> Self {
        PauliOperator {
            phase: 0,
            x: bitvec![u64, Lsb0; 0; num_qubits],
            z: bitvec![u64, Lsb0; 0; num_qubits],
        }
    }

    /// Operator with the given single-qubit factors and identity elsewhere.
    pub fn from_terms(num_qubits: usize, terms: &[(usize, Pauli)]) -> Result<Self> {
        let mut op = Self::identity(num_qubits);
        for &(q, p) in terms {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
            op.set(q, p);
        }
        Ok(op)
    }

    pub fn single(num_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        Self::from_terms(num_qubits, &[(qubit, pauli)])
    }

    /// `pauli` on both `a` and `b`, e.g. the `XX`, `YY`, `ZZ` edge checks.
    pub fn two_body(num_qubits: usize, a: usize, b: usize, pauli: Pauli) -> Result<Self> {
        Self::from_terms(num_qubits, &[(a, pauli), (b, pauli)])
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x[qubit], self.z[qubit])
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        let (x, z) = pauli.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn x_bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.x
    }

    pub fn z_bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.z
    }

    /// Phase as a power of `i` (0..4).
    pub fn phase_power(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// `+1` or `-1` for Hermitian operators, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.phase = (out.phase + 2) % 4;
        out
    }

    pub fn with_sign(mut self, negative: bool) -> Self {
        self.phase = if negative { 2 } else { 0 };
        self
    }

    pub fn is_identity(&self) -> bool {
        self.x.not_any() && self.z.not_any()
    }

    /// Qubits acted on non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_qubits())
            .filter(|&q| self.x[q] || self.z[q])
            .collect()
    }

    pub fn weight(&self) -> usize {
        (self.x.clone() | self.z.clone()).count_ones()
    }

    /// Symplectic inner product parity: `true` iff the operators commute.
    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        let a = (self.x.clone() & other.z.clone()).count_ones();
        let b = (self.z.clone() & other.x.clone()).count_ones();
        (a + b).is_multiple_of(2)
    }

    /// Operator product `self * other` (self applied last).
    pub fn compose(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::WidthMismatch {
                op: other.num_qubits(),
                state: self.num_qubits(),
            });
        }
        let mut phase = self.phase + other.phase;
        let mut out = Self::identity(self.num_qubits());
        for q in 0..self.num_qubits() {
            let (k, p) = self.get(q).mul_phase(other.get(q));
            phase += k;
            out.set(q, p);
        }
        out.phase = phase % 4;
        Ok(out)
    }

    /// Restrict to the listed qubits, which become qubits `0..qubits.len()`
    /// of the result in the given order. The phase is kept.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let mut out = Self::identity(qubits.len());
        out.phase = self.phase;
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out
    }

    /// Embed into a wider register: qubit `i` of `self` lands on `map[i]`.
    pub fn embed(&self, num_qubits: usize, map: &[usize]) -> Result<PauliOperator> {
        let mut out = Self::identity(num_qubits);
        out.phase = self.phase;
        for (i, &q) in map.iter().enumerate().take(self.num_qubits()) {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
            out.set(q, self.get(i));
        }
        Ok(out)
    }

    /// Bit masks `(x, z)` for registers of at most 64 qubits.
    pub(crate) fn masks(&self) -> (usize, usize) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..self.num_qubits() {
            if self.x[q] {
                xm |= 1 << q;
            }
            if self.z[q] {
                zm |= 1 << q;
            }
        }
        (xm, zm)
    }
}

impl fmt::Display for PauliOperator {
    /// Sign followed by one letter per qubit, qubit 0 first: `+YZX`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let mut op = Self::identity(body.chars().count());
        op.phase = phase;
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::Construction(format!(
                        "unexpected character {other:?} in Pauli string {s:?}"
                    )))
                }
            };
            op.set(q, p);
        }
        Ok(op)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
