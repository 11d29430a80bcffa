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

//! Projective two-qubit measurement in the Bell basis.
//!
//! The basis is fixed as `Φ± = (|00⟩ ± |11⟩)/√2` and `Ψ± = (|01⟩ ± |10⟩)/√2`.
//! Measurement of a pair `(q1, q2)` yields an outcome, its Born probability,
//! and the renormalized residual state on the remaining qubits. Residuals are
//! rescaled by a positive real factor only, so branch-dependent signs survive
//! in the post-measurement state.

use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::BRANCH_CUTOFF;
use num_complex::Complex64;
use rand::Rng;

/// One of the four Bell-basis results of the joint measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    /// Two classical bits reported by the measurement. The low bit flags a
    /// needed phase (σ_z-type) correction, the high bit a bit flip:
    /// `Φ+ = 00`, `Φ− = 01`, `Ψ+ = 10`, `Ψ− = 11`.
    pub fn classical_bits(self) -> u8 {
        match self {
            BellOutcome::PhiPlus => 0b00,
            BellOutcome::PhiMinus => 0b01,
            BellOutcome::PsiPlus => 0b10,
            BellOutcome::PsiMinus => 0b11,
        }
    }

    /// Lossless inverse of [`classical_bits`](Self::classical_bits).
    pub fn from_classical_bits(bits: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.classical_bits() == bits)
    }

    /// ASCII identifier used in reports and CSV output.
    pub fn label(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "phi_plus",
            BellOutcome::PhiMinus => "phi_minus",
            BellOutcome::PsiPlus => "psi_plus",
            BellOutcome::PsiMinus => "psi_minus",
        }
    }

    /// Amplitudes of the Bell vector on two qubits (first qubit is the
    /// high index bit).
    pub fn amplitudes(self) -> [Complex64; 4] {
        let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            BellOutcome::PhiPlus => [s, z, z, s],
            BellOutcome::PhiMinus => [s, z, z, -s],
            BellOutcome::PsiPlus => [z, s, s, z],
            BellOutcome::PsiMinus => [z, s, -s, z],
        }
    }
}

impl std::fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let symbol = match self {
            BellOutcome::PhiPlus => "Φ+",
            BellOutcome::PhiMinus => "Φ−",
            BellOutcome::PsiPlus => "Ψ+",
            BellOutcome::PsiMinus => "Ψ−",
        };
        f.write_str(symbol)
    }
}

/// One branch of the exact Bell-measurement decomposition.
#[derive(Clone, Debug)]
pub struct BellBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Renormalized residual state; `None` when the branch has (numerically)
    /// zero probability.
    pub post: Option<StateVector>,
}

fn check_pair(state: &StateVector, q1: usize, q2: usize) -> Result<()> {
    let n = state.num_qubits();
    for q in [q1, q2] {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
    }
    if q1 == q2 {
        return Err(Error::DuplicateQubit { index: q1 });
    }
    Ok(())
}

/// Unnormalized residual `⟨bell(q1,q2)|state⟩` on the remaining qubits.
fn residual(
    state: &StateVector,
    q1: usize,
    q2: usize,
    outcome: BellOutcome,
) -> (Vec<Complex64>, Vec<String>) {
    let n = state.num_qubits();
    let bell = outcome.amplitudes();
    let m1 = state.position_mask(q1);
    let m2 = state.position_mask(q2);
    let rest: Vec<usize> = (0..n).filter(|&q| q != q1 && q != q2).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << rest.len()];
    for (i, &amp) in state.amplitudes().iter().enumerate() {
        let s = usize::from(i & m1 != 0);
        let t = usize::from(i & m2 != 0);
        // Compress the remaining bits, preserving register order.
        let mut j = 0usize;
        for &q in &rest {
            j = (j << 1) | usize::from(i & state.position_mask(q) != 0);
        }
        out[j] += bell[(s << 1) | t].conj() * amp;
    }
    let labels = rest.iter().map(|&q| state.labels()[q].clone()).collect();
    (out, labels)
}

/// Exact branch decomposition of a Bell measurement on `(q1, q2)`.
///
/// The four probabilities sum to 1 for any normalized input.
pub fn bell_branches(state: &StateVector, q1: usize, q2: usize) -> Result<[BellBranch; 4]> {
    check_pair(state, q1, q2)?;
    Ok(BellOutcome::ALL.map(|outcome| {
        let (res, labels) = residual(state, q1, q2, outcome);
        let probability: f64 = res.iter().map(|a| a.norm_sqr()).sum();
        let post = if probability >= BRANCH_CUTOFF {
            let scale = probability.sqrt();
            let amps = res.iter().map(|a| a / scale).collect();
            Some(StateVector::from_parts_unchecked(amps, labels))
        } else {
            None
        };
        BellBranch {
            outcome,
            probability,
            post,
        }
    }))
}

/// Projects onto a forced outcome, failing when that branch is impossible.
pub fn bell_project(
    state: &StateVector,
    q1: usize,
    q2: usize,
    outcome: BellOutcome,
) -> Result<(f64, StateVector)> {
    check_pair(state, q1, q2)?;
    let (res, labels) = residual(state, q1, q2, outcome);
    let probability: f64 = res.iter().map(|a| a.norm_sqr()).sum();
    if probability < BRANCH_CUTOFF {
        return Err(Error::ImpossibleBranch {
            outcome,
            probability,
        });
    }
    let scale = probability.sqrt();
    let amps = res.iter().map(|a| a / scale).collect();
    Ok((
        probability,
        StateVector::from_parts_unchecked(amps, labels),
    ))
}

/// Samples one outcome per the Born rule and returns it with its exact
/// probability and the renormalized residual state.
pub fn bell_measure<R: Rng + ?Sized>(
    state: &StateVector,
    q1: usize,
    q2: usize,
    rng: &mut R,
) -> Result<(BellOutcome, f64, StateVector)> {
    let branches = bell_branches(state, q1, q2)?;
    let draw: f64 = rng.random();
    let mut acc = 0.0;
    let mut chosen = None;
    for branch in &branches {
        acc += branch.probability;
        if draw < acc {
            chosen = Some(branch);
            break;
        }
    }
    // Fall back to the last possible branch if rounding left `draw` ≥ acc.
    let branch = match chosen {
        Some(b) => b,
        None => branches
            .iter()
            .rev()
            .find(|b| b.post.is_some())
            .expect("normalized state has at least one possible branch"),
    };
    let post = branch
        .post
        .clone()
        .expect("sampled branch has nonzero probability");
    Ok((branch.outcome, branch.probability, post))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program;
    use rand::SeedableRng;

    #[test]
    fn measuring_a_bell_pair_is_deterministic() {
        let phi_plus = program::bell(BellOutcome::PhiPlus);
        let (prob, post) = bell_project(&phi_plus, 0, 1, BellOutcome::PhiPlus).unwrap();
        assert!((prob - 1.0).abs() < 1e-15);
        // Empty residual: a single scalar amplitude of modulus 1.
        assert_eq!(post.num_qubits(), 0);
        assert!((post.amplitude(0).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_zero_splits_between_phi_branches() {
        // |00⟩ = (Φ+ + Φ−)/√2
        let state = StateVector::computational(2, 0).unwrap();
        let branches = bell_branches(&state, 0, 1).unwrap();
        for branch in &branches {
            let expected = match branch.outcome {
                BellOutcome::PhiPlus | BellOutcome::PhiMinus => 0.5,
                _ => 0.0,
            };
            assert!(
                (branch.probability - expected).abs() < 1e-15,
                "{:?}",
                branch.outcome
            );
        }
    }

    #[test]
    fn impossible_branch_is_an_error() {
        let state = StateVector::computational(2, 0).unwrap();
        let err = bell_project(&state, 0, 1, BellOutcome::PsiPlus).unwrap_err();
        assert!(matches!(err, Error::ImpossibleBranch { .. }));
    }

    #[test]
    fn same_qubit_twice_is_an_error() {
        let state = StateVector::computational(2, 0).unwrap();
        assert!(matches!(
            bell_branches(&state, 1, 1),
            Err(Error::DuplicateQubit { index: 1 })
        ));
    }

    #[test]
    fn probabilities_sum_to_one_for_random_state() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut amps: Vec<Complex64> = (0..16)
                .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            let state = StateVector::from_amplitudes(amps).unwrap();
            let branches = bell_branches(&state, 1, 3).unwrap();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_bit_encoding_is_a_bijection() {
        for outcome in BellOutcome::ALL {
            assert_eq!(
                BellOutcome::from_classical_bits(outcome.classical_bits()),
                Some(outcome)
            );
        }
    }

    #[test]
    fn sampling_respects_forced_probabilities() {
        let state = StateVector::computational(2, 0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (outcome, prob, _) = bell_measure(&state, 0, 1, &mut rng).unwrap();
            assert!(matches!(
                outcome,
                BellOutcome::PhiPlus | BellOutcome::PhiMinus
            ));
            assert!((prob - 0.5).abs() < 1e-15);
        }
    }
}
