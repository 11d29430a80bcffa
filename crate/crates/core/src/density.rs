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

//! Density matrices, partial trace, fidelity and purity.

use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::{EIGENVALUE_FLOOR, HERMITICITY_TOL, NORM_TOL};
use num_complex::Complex64;

/// A Hermitian, positive-semidefinite, unit-trace matrix on a small register.
///
/// Stored dense in row-major order; the index convention matches
/// [`StateVector`] (register position 0 is the most significant index bit).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Outer product `|ψ⟩⟨ψ|` of a pure state.
    pub fn from_pure(state: &StateVector) -> Self {
        let dim = state.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (r, &a) in state.amplitudes().iter().enumerate() {
            for (c, &b) in state.amplitudes().iter().enumerate() {
                entries[r * dim + c] = a * b.conj();
            }
        }
        Self {
            num_qubits: state.num_qubits(),
            entries,
        }
    }

    /// Builds a density matrix from raw entries, enforcing Hermiticity,
    /// unit trace and positivity.
    pub fn from_entries(num_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let rho = Self {
            num_qubits,
            entries,
        };
        let herm = rho.hermiticity_deviation();
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let min_eig = rho.min_eigenvalue();
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::NotPositive {
                eigenvalue: min_eig,
            });
        }
        Ok(rho)
    }

    pub(crate) fn new_unchecked(num_qubits: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), (1 << num_qubits) * (1 << num_qubits));
        Self {
            num_qubits,
            entries,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// Largest deviation `|ρ[r][c] − ρ[c][r]*|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                worst = worst.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        worst
    }

    /// `Tr(ρ²)`; 1 for pure states, `1/dim` for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        let dim = self.dim();
        let mut total = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            for c in 0..dim {
                total += self.entry(r, c) * self.entry(c, r);
            }
        }
        total.re
    }

    /// Traces out every qubit not listed in `keep`. Kept qubits stay in
    /// register order; keeping everything returns the matrix unchanged.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let n = self.num_qubits;
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateQubit { index: pair[0] });
            }
        }
        if let Some(&worst) = sorted.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange {
                index: worst,
                num_qubits: n,
            });
        }
        if sorted.len() == n {
            return Ok(self.clone());
        }

        let dim = self.dim();
        let kept_dim = 1usize << sorted.len();
        // Masks in full-index space, most significant kept qubit first.
        let kept_masks: Vec<usize> = sorted.iter().map(|&q| 1 << (n - 1 - q)).collect();
        let traced_mask = (dim - 1) & !kept_masks.iter().fold(0, |acc, m| acc | m);

        let compress = |full: usize| -> usize {
            kept_masks
                .iter()
                .fold(0, |acc, &m| (acc << 1) | usize::from(full & m != 0))
        };

        let mut out = vec![Complex64::new(0.0, 0.0); kept_dim * kept_dim];
        for r in 0..dim {
            for c in 0..dim {
                if r & traced_mask == c & traced_mask {
                    out[compress(r) * kept_dim + compress(c)] += self.entry(r, c);
                }
            }
        }
        Ok(DensityMatrix::new_unchecked(sorted.len(), out))
    }

    /// Eigenvalues in ascending order, via a cyclic Jacobi sweep on the real
    /// symmetric embedding `[[Re ρ, −Im ρ], [Im ρ, Re ρ]]` (each eigenvalue
    /// of ρ appears twice in the embedding).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let dim = self.dim();
        let m = 2 * dim;
        let mut a = vec![0.0f64; m * m];
        for r in 0..dim {
            for c in 0..dim {
                let e = self.entry(r, c);
                a[r * m + c] = e.re;
                a[r * m + (c + dim)] = -e.im;
                a[(r + dim) * m + c] = e.im;
                a[(r + dim) * m + (c + dim)] = e.re;
            }
        }
        let mut eigs = jacobi_eigenvalues(&mut a, m);
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        // Collapse the doubled spectrum.
        (0..dim).map(|i| (eigs[2 * i] + eigs[2 * i + 1]) / 2.0).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Bloch vector `(x, y, z)` of a one-qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.num_qubits != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: self.dim(),
            });
        }
        let off = self.entry(0, 1);
        Ok([
            2.0 * off.re,
            -2.0 * off.im,
            self.entry(0, 0).re - self.entry(1, 1).re,
        ])
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .filter(|&&p| p > 1e-15)
            .map(|&p| -p * p.log2())
            .sum()
    }
}

/// Reduced density matrix of a pure state, computed directly from the
/// amplitudes without materializing the full outer product:
/// `ρ'[j,k] = Σ_t ψ[j⊕t] ψ*[k⊕t]` over traced-bit assignments `t`.
pub fn reduced_state(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let n = state.num_qubits();
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateQubit { index: pair[0] });
        }
    }
    if let Some(&worst) = sorted.iter().find(|&&q| q >= n) {
        return Err(Error::QubitOutOfRange {
            index: worst,
            num_qubits: n,
        });
    }

    let kept_masks: Vec<usize> = sorted.iter().map(|&q| 1 << (n - 1 - q)).collect();
    let traced: Vec<usize> = (0..n)
        .filter(|q| !sorted.contains(q))
        .map(|q| 1 << (n - 1 - q))
        .collect();
    let kept_dim = 1usize << sorted.len();

    // Expands a kept-space index into full-index space.
    let expand = |kept: usize| -> usize {
        kept_masks
            .iter()
            .enumerate()
            .fold(0, |acc, (bit, &mask)| {
                if kept & (1 << (sorted.len() - 1 - bit)) != 0 {
                    acc | mask
                } else {
                    acc
                }
            })
    };

    let amps = state.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); kept_dim * kept_dim];
    for j in 0..kept_dim {
        for k in 0..kept_dim {
            let (base_j, base_k) = (expand(j), expand(k));
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..(1usize << traced.len()) {
                let scatter: usize = traced
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| t & (1 << bit) != 0)
                    .map(|(_, &mask)| mask)
                    .sum();
                sum += amps[base_j | scatter] * amps[base_k | scatter].conj();
            }
            out[j * kept_dim + k] = sum;
        }
    }
    Ok(DensityMatrix::new_unchecked(sorted.len(), out))
}

/// Fidelity `⟨ref|ρ|ref⟩` of a mixed state against a pure reference,
/// clamped into `[0, 1]`.
pub fn fidelity(reference: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    if reference.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: reference.dim(),
            actual: rho.dim(),
        });
    }
    let dim = rho.dim();
    let amps = reference.amplitudes();
    let mut value = Complex64::new(0.0, 0.0);
    for r in 0..dim {
        for c in 0..dim {
            value += amps[r].conj() * rho.entry(r, c) * amps[c];
        }
    }
    Ok(value.re.clamp(0.0, 1.0))
}

/// Cyclic Jacobi eigenvalues of a dense real symmetric matrix (row-major).
fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let scale = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| a[r * n + c].abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::BellOutcome;
    use crate::program;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_pair_reduces_to_maximally_mixed() {
        let rho = DensityMatrix::from_pure(&program::bell(BellOutcome::PhiPlus));
        let reduced = rho.partial_trace(&[0]).unwrap();
        assert!((reduced.entry(0, 0).re - 0.5).abs() < 1e-15);
        assert!((reduced.entry(1, 1).re - 0.5).abs() < 1e-15);
        assert!(reduced.entry(0, 1).norm() < 1e-15);
    }

    #[test]
    fn product_state_reduces_to_factor() {
        // Tr over qubit 1 of |0⟩⟨0| ⊗ |1⟩⟨1| = |0⟩⟨0|
        let zero = StateVector::computational(1, 0).unwrap();
        let one = StateVector::computational(1, 1).unwrap();
        let rho = DensityMatrix::from_pure(&zero.tensor(&one).unwrap());
        let reduced = rho.partial_trace(&[0]).unwrap();
        assert!((reduced.entry(0, 0).re - 1.0).abs() < 1e-15);
        assert!(reduced.entry(1, 1).norm() < 1e-15);
    }

    #[test]
    fn keeping_everything_returns_input() {
        let rho = DensityMatrix::from_pure(&program::phi0());
        let kept = rho.partial_trace(&[0, 1, 2]).unwrap();
        assert!(rho.max_abs_diff(&kept).unwrap() == 0.0);
    }

    #[test]
    fn empty_keep_rejected() {
        let rho = DensityMatrix::from_pure(&program::phi0());
        assert!(matches!(rho.partial_trace(&[]), Err(Error::EmptyKeep)));
    }

    #[test]
    fn clone_state_reduction_is_five_sixths_diag() {
        // Keeping B of |Φ0⟩⟨Φ0| gives diag(5/6, 1/6).
        let rho_b = reduced_state(&program::phi0(), &[1]).unwrap();
        assert!((rho_b.entry(0, 0).re - 5.0 / 6.0).abs() < 1e-15);
        assert!((rho_b.entry(1, 1).re - 1.0 / 6.0).abs() < 1e-15);
        assert!(rho_b.entry(0, 1).norm() < 1e-15);
    }

    #[test]
    fn fidelity_of_pure_projector_is_one() {
        let zero = StateVector::computational(1, 0).unwrap();
        let rho = DensityMatrix::from_pure(&zero);
        assert!((fidelity(&zero, &rho).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_against_maximally_mixed_is_half() {
        let zero = StateVector::computational(1, 0).unwrap();
        let mixed = DensityMatrix::from_entries(
            1,
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!((fidelity(&zero, &mixed).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_dimension_mismatch() {
        let zero = StateVector::computational(2, 0).unwrap();
        let rho = DensityMatrix::from_pure(&StateVector::computational(1, 0).unwrap());
        assert!(matches!(
            fidelity(&zero, &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn purity_bounds() {
        let pure = DensityMatrix::from_pure(&StateVector::computational(1, 0).unwrap());
        assert!((pure.purity() - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::from_entries(
            1,
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!((mixed.purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_known_matrix() {
        // Closed form for a 2x2 Hermitian: 0.5 ± sqrt(((a-d)/2)^2 + |b|^2).
        let rho = DensityMatrix::from_entries(
            1,
            vec![c(0.75, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.25, 0.0)],
        )
        .unwrap();
        let eigs = rho.eigenvalues();
        let disc = (0.0625f64 + 0.05).sqrt();
        assert!((eigs[0] - (0.5 - disc)).abs() < 1e-12);
        assert!((eigs[1] - (0.5 + disc)).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_maximally_mixed_qubit_is_one_bit() {
        let mixed = DensityMatrix::from_entries(
            1,
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!((mixed.entropy_bits() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_state_matches_partial_trace_route() {
        let state = program::phi0();
        let direct = reduced_state(&state, &[0, 2]).unwrap();
        let via_trace = DensityMatrix::from_pure(&state).partial_trace(&[0, 2]).unwrap();
        assert!(direct.max_abs_diff(&via_trace).unwrap() < 1e-14);
    }
}
