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

//! 2×2 unitary gates and the Pauli group elements used for corrections.

use crate::error::{Error, Result};
use crate::UNITARITY_TOL;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// A single-qubit unitary, stored as a dense 2×2 complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitGate {
    entries: [[Complex64; 2]; 2],
}

impl SingleQubitGate {
    /// Builds a gate from matrix entries, rejecting non-unitary matrices.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let deviation = unitarity_deviation(&entries);
        if !deviation.is_finite() {
            return Err(Error::NonFinite);
        }
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { entries })
    }

    pub(crate) fn new_unchecked(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new_unchecked([[one, zero], [zero, one]])
    }

    pub fn pauli_x() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new_unchecked([[zero, one], [one, zero]])
    }

    pub fn pauli_y() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        Self::new_unchecked([[zero, -i], [i, zero]])
    }

    pub fn pauli_z() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new_unchecked([[one, zero], [zero, -one]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self::new_unchecked([
            [e[0][0].conj(), e[1][0].conj()],
            [e[0][1].conj(), e[1][1].conj()],
        ])
    }

    /// Transpose with respect to the computational basis.
    pub fn transpose(&self) -> Self {
        let e = &self.entries;
        Self::new_unchecked([[e[0][0], e[1][0]], [e[0][1], e[1][1]]])
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self::new_unchecked(out)
    }

    /// Applies the gate to the amplitude pair of one qubit.
    pub fn apply_to_amplitudes(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let e = &self.entries;
        (
            e[0][0] * a0 + e[0][1] * a1,
            e[1][0] * a0 + e[1][1] * a1,
        )
    }

    /// Max-norm deviation of `G†G` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        worst
    }

    /// Max-norm of the commutator `[self, other]`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        pair_norm(&self.compose(other), &other.compose(self), -1.0)
    }

    /// Max-norm of the anti-commutator `{self, other}`.
    pub fn anticommutator_norm(&self, other: &Self) -> f64 {
        pair_norm(&self.compose(other), &other.compose(self), 1.0)
    }

    /// Draws a Haar-distributed 2×2 unitary: two complex Gaussian columns,
    /// orthonormalized by Gram-Schmidt.
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut g = || {
                Complex64::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            };
            let (v0, v1) = (g(), g());
            let (mut w0, mut w1) = (g(), g());
            let n1 = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            if n1 < 1e-12 {
                continue;
            }
            let (u0, u1) = (v0 / n1, v1 / n1);
            let overlap = u0.conj() * w0 + u1.conj() * w1;
            w0 -= overlap * u0;
            w1 -= overlap * u1;
            let n2 = (w0.norm_sqr() + w1.norm_sqr()).sqrt();
            if n2 < 1e-12 {
                continue;
            }
            return Self::new_unchecked([[u0, w0 / n2], [u1, w1 / n2]]);
        }
    }
}

fn unitarity_deviation(e: &[[Complex64; 2]; 2]) -> f64 {
    // G†G entries
    let g00 = e[0][0].conj() * e[0][0] + e[1][0].conj() * e[1][0];
    let g01 = e[0][0].conj() * e[0][1] + e[1][0].conj() * e[1][1];
    let g10 = e[0][1].conj() * e[0][0] + e[1][1].conj() * e[1][0];
    let g11 = e[0][1].conj() * e[0][1] + e[1][1].conj() * e[1][1];
    let one = Complex64::new(1.0, 0.0);
    [(g00 - one).norm(), g01.norm(), g10.norm(), (g11 - one).norm()]
        .into_iter()
        .fold(0.0, f64::max)
}

fn pair_norm(ab: &SingleQubitGate, ba: &SingleQubitGate, sign: f64) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            worst = worst.max((ab.entries[r][c] + sign * ba.entries[r][c]).norm());
        }
    }
    worst
}

/// One element of the single-qubit Pauli group (phases dropped).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn gate(self) -> SingleQubitGate {
        match self {
            Pauli::I => SingleQubitGate::identity(),
            Pauli::X => SingleQubitGate::pauli_x(),
            Pauli::Y => SingleQubitGate::pauli_y(),
            Pauli::Z => SingleQubitGate::pauli_z(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        }
    }
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn paulis_are_unitary_and_self_inverse() {
        for p in Pauli::ALL {
            let g = p.gate();
            assert!(g.unitarity_deviation() < 1e-15);
            assert!(g.compose(&g).max_abs_diff(&SingleQubitGate::identity()) < 1e-15);
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let one = Complex64::new(1.0, 0.0);
        let err = SingleQubitGate::new([[one, one], [one, one]]).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }

    #[test]
    fn x_and_z_anticommute() {
        let x = SingleQubitGate::pauli_x();
        let z = SingleQubitGate::pauli_z();
        assert!(x.anticommutator_norm(&z) < 1e-15);
        assert!(x.commutator_norm(&z) > 1.0);
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let g = SingleQubitGate::haar_random(&mut rng);
            assert!(g.unitarity_deviation() < 1e-12);
        }
    }
}
