// Copyright 2026 The qproc Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Dense state vectors over small qubit registers.
//!
//! Registers hold at most [`MAX_QUBITS`] qubits, so every state fits in a
//! fixed 64-amplitude buffer and all operations are exact dense arithmetic.
//!
//! # Bit convention
//!
//! The qubit at register position 0 is the **most significant** bit of the
//! amplitude index, matching the left-to-right ket notation: for a 3-qubit
//! register `|q0 q1 q2⟩`, the ket `|011⟩` lives at index `0b011 = 3`.

use crate::error::{Error, Result};
use crate::gate::SingleQubitGate;
use crate::{MAX_QUBITS, NORM_TOL};
use num_complex::Complex64;

/// A pure quantum state over an ordered register of up to [`MAX_QUBITS`] qubits.
///
/// Values are immutable after construction; every operation returns a new
/// state, so states are safe to share across threads.
#[derive(Clone, Debug)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
    labels: Vec<String>,
}

fn default_labels(num_qubits: usize) -> Vec<String> {
    (0..num_qubits).map(|i| format!("q{i}")).collect()
}

impl StateVector {
    /// Builds a state from raw amplitudes, which must form a normalized
    /// vector of power-of-two length.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::BadAmplitudeCount { len });
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            num_qubits,
            amps,
            labels: default_labels(num_qubits),
        })
    }

    /// Builds the computational basis state `|basis_index⟩` on `num_qubits` qubits.
    pub fn computational(num_qubits: usize, basis_index: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if basis_index >= dim {
            return Err(Error::QubitOutOfRange {
                index: basis_index,
                num_qubits,
            });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[basis_index] = Complex64::ONE;
        Ok(Self {
            num_qubits,
            amps,
            labels: default_labels(num_qubits),
        })
    }

    /// Builds the single-qubit state `a|0⟩ + b|1⟩`.
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        Self::from_amplitudes(vec![a, b])
    }

    /// Internal constructor for amplitudes already known to be normalized.
    pub(crate) fn from_parts_unchecked(amps: Vec<Complex64>, labels: Vec<String>) -> Self {
        debug_assert!(amps.len().is_power_of_two());
        let num_qubits = amps.len().trailing_zeros() as usize;
        debug_assert_eq!(labels.len(), num_qubits);
        Self {
            num_qubits,
            amps,
            labels,
        }
    }

    /// Replaces the register labels (one per qubit position).
    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        if labels.len() != self.num_qubits {
            return Err(Error::BadLabelCount {
                count: labels.len(),
                num_qubits: self.num_qubits,
            });
        }
        self.labels = labels.into_iter().map(Into::into).collect();
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index mask selecting the bit for the qubit at `position`.
    ///
    /// Position 0 is the most significant bit of the amplitude index.
    pub fn position_mask(&self, position: usize) -> usize {
        1 << (self.num_qubits - 1 - position)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Kronecker product `self ⊗ rhs`; `self` occupies the high index bits
    /// and labels are concatenated left to right.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        let combined = self.num_qubits + rhs.num_qubits;
        if combined > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                requested: combined,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::ZERO; 1 << combined];
        for (i, &a) in self.amps.iter().enumerate() {
            for (j, &b) in rhs.amps.iter().enumerate() {
                amps[(i << rhs.num_qubits) | j] = a * b;
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&rhs.labels);
        Ok(Self::from_parts_unchecked(amps, labels))
    }

    /// Applies a single-qubit gate to the qubit at `target`.
    pub fn apply_single_qubit(&self, gate: &SingleQubitGate, target: usize) -> Result<Self> {
        if target >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: target,
                num_qubits: self.num_qubits,
            });
        }
        let mask = self.position_mask(target);
        let mut amps = self.amps.clone();
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (a0, a1) = gate.apply_to_amplitudes(self.amps[i], self.amps[j]);
                amps[i] = a0;
                amps[j] = a1;
            }
        }
        Ok(Self::from_parts_unchecked(amps, self.labels.clone()))
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, the overlap magnitude ignoring global phase.
    pub fn overlap_modulus(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Largest entrywise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::SingleQubitGate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn computational_basis_tensor() {
        // |0> ⊗ |1> = |01>
        let zero = StateVector::computational(1, 0).unwrap();
        let one = StateVector::computational(1, 1).unwrap();
        let prod = zero.tensor(&one).unwrap();
        assert_eq!(prod.num_qubits(), 2);
        assert_eq!(prod.amplitude(0b01), Complex64::ONE);
        assert_eq!(prod.amplitude(0b00), Complex64::ZERO);
    }

    #[test]
    fn plus_tensor_zero() {
        // |+> ⊗ |0> = (|00> + |10>)/sqrt(2)
        let s = 1.0 / 2f64.sqrt();
        let plus = StateVector::qubit(c(s, 0.0), c(s, 0.0)).unwrap();
        let zero = StateVector::computational(1, 0).unwrap();
        let prod = plus.tensor(&zero).unwrap();
        assert!((prod.amplitude(0b00).re - s).abs() < 1e-15);
        assert!((prod.amplitude(0b10).re - s).abs() < 1e-15);
        assert_eq!(prod.amplitude(0b01), Complex64::ZERO);
        assert_eq!(prod.amplitude(0b11), Complex64::ZERO);
    }

    #[test]
    fn data_tensor_bell_hand_kronecker() {
        // (3/5 |0> + 4/5 |1>) ⊗ (|00> + |11>)/sqrt(2), frozen by direct
        // Kronecker product by hand.
        let s = 1.0 / 2f64.sqrt();
        let d = StateVector::qubit(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let bell = StateVector::from_amplitudes(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
            .unwrap();
        let total = d.tensor(&bell).unwrap();
        let expect = [
            (0b000, 0.6 * s),
            (0b011, 0.6 * s),
            (0b100, 0.8 * s),
            (0b111, 0.8 * s),
        ];
        for (idx, val) in expect {
            assert!((total.amplitude(idx).re - val).abs() < 1e-15, "index {idx}");
        }
        assert_eq!(total.amplitude(0b001), Complex64::ZERO);
        assert_eq!(total.amplitude(0b010), Complex64::ZERO);
    }

    #[test]
    fn tensor_labels_concatenate() {
        let a = StateVector::computational(1, 0)
            .unwrap()
            .with_labels(vec!["D"])
            .unwrap();
        let b = StateVector::computational(2, 0)
            .unwrap()
            .with_labels(vec!["P", "A"])
            .unwrap();
        let prod = a.tensor(&b).unwrap();
        assert_eq!(prod.labels(), ["D", "P", "A"]);
    }

    #[test]
    fn tensor_overflow_rejected() {
        let a = StateVector::computational(4, 0).unwrap();
        let b = StateVector::computational(3, 0).unwrap();
        assert!(matches!(
            a.tensor(&b),
            Err(Error::RegisterTooLarge { requested: 7, .. })
        ));
    }

    #[test]
    fn pauli_x_flips_basis_state() {
        let zero = StateVector::computational(1, 0).unwrap();
        let flipped = zero.apply_single_qubit(&SingleQubitGate::pauli_x(), 0).unwrap();
        assert_eq!(flipped.amplitude(1), Complex64::ONE);
    }

    #[test]
    fn pauli_z_phases_superposition() {
        let s = 1.0 / 2f64.sqrt();
        let plus = StateVector::qubit(c(s, 0.0), c(s, 0.0)).unwrap();
        let minus = plus.apply_single_qubit(&SingleQubitGate::pauli_z(), 0).unwrap();
        assert!((minus.amplitude(0).re - s).abs() < 1e-15);
        assert!((minus.amplitude(1).re + s).abs() < 1e-15);
    }

    #[test]
    fn identity_returns_input_exactly() {
        let s = 1.0 / 2f64.sqrt();
        let psi = StateVector::qubit(c(s, 0.0), c(0.0, s)).unwrap();
        let out = psi.apply_single_qubit(&SingleQubitGate::identity(), 0).unwrap();
        assert_eq!(out.amplitudes(), psi.amplitudes());
    }

    #[test]
    fn target_out_of_range() {
        let psi = StateVector::computational(2, 0).unwrap();
        assert!(matches!(
            psi.apply_single_qubit(&SingleQubitGate::pauli_x(), 2),
            Err(Error::QubitOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn unnormalized_rejected() {
        let err = StateVector::qubit(c(1.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn non_finite_rejected() {
        let err = StateVector::qubit(c(f64::NAN, 0.0), c(0.0, 0.0)).unwrap_err();
        assert_eq!(err, Error::NonFinite);
    }
}
