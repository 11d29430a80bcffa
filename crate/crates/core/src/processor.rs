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

//! The two-output programmable processor.
//!
//! A run assembles the five-qubit register `(D, P, A, B, C)` from the data
//! qubit and the encoded program state, Bell-measures `(D, P)`, and applies
//! classically controlled corrections to the three remaining qubits:
//!
//! * `Φ+` — nothing to do; the outputs already hold the clone state.
//! * `Φ−` — apply σ_z to each of `A`, `B`, `C`.
//! * `Ψ±` — failure; no tensor-product Pauli correction recovers the clone
//!   state for a generic angle, so the run is flagged unsuccessful.
//!
//! On success both reduced outputs equal `(2/3)|Ud⟩⟨Ud| + (1/6)I`, giving
//! fidelity 5/6 against the ideal transformed state and purity 13/18. Every
//! branch has probability 1/4 regardless of the data state or angle.

use crate::density::{fidelity, reduced_state, DensityMatrix};
use crate::error::{Error, Result};
use crate::gate::{Pauli, SingleQubitGate};
use crate::measure::{bell_branches, BellOutcome};
use crate::program::{encode_program, restricted_unitary, OperationVariant, VariantTag};
use crate::state::StateVector;
use crate::NORM_TOL;
use num_complex::Complex64;
use rand::Rng;

/// The single-qubit input `a|0⟩ + b|1⟩` handed to the processor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DataState {
    a: Complex64,
    b: Complex64,
}

impl DataState {
    /// Requires `|a|² + |b|² = 1`; degenerate inputs (`a = 0` or `b = 0`)
    /// are allowed.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { a, b })
    }

    /// Rescales arbitrary amplitudes onto the unit sphere, returning the
    /// normalization deviation of the raw input alongside the state.
    pub fn rescaled(a: Complex64, b: Complex64) -> Result<(Self, f64)> {
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        if norm_sqr < 1e-200 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let scale = norm_sqr.sqrt();
        Ok((
            Self {
                a: a / scale,
                b: b / scale,
            },
            (norm_sqr - 1.0).abs(),
        ))
    }

    /// Bloch-sphere parametrization `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        Self {
            a: Complex64::new((theta / 2.0).cos(), 0.0),
            b: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    /// Haar-uniform draw on the Bloch sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cos_theta: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        Self::from_bloch_angles(cos_theta.acos(), phi)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// The data register as a one-qubit state labelled `D`.
    pub fn to_state(&self) -> StateVector {
        StateVector::from_parts_unchecked(vec![self.a, self.b], vec!["D".into()])
    }
}

/// Everything recorded about one processor execution.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub variant: OperationVariant,
    pub outcome: BellOutcome,
    /// Born probability of this measurement branch (1/4 for every branch).
    pub branch_probability: f64,
    /// Success means the outputs hold the clone state after correction.
    pub success: bool,
    /// Three-qubit state of `(A, B, C)` after the correction step. Failed
    /// branches keep their uncorrected state for diagnostics.
    pub post_state_abc: StateVector,
    pub rho_b: DensityMatrix,
    pub rho_c: DensityMatrix,
    pub fidelity_b: f64,
    pub fidelity_c: f64,
}

/// The total five-qubit state `(D, P, A, B, C)` fed into the gate array.
///
/// For the anti-commuting family the data qubit is flipped by σ_x first;
/// that flip is part of the gate array, not a caller step.
pub fn assemble(data: &DataState, variant: OperationVariant) -> StateVector {
    let mut d = data.to_state();
    if variant.tag() == VariantTag::AntiCommuting {
        d = d
            .apply_single_qubit(&SingleQubitGate::pauli_x(), 0)
            .expect("one-qubit state");
    }
    d.tensor(&encode_program(variant)).expect("5 qubits fit")
}

/// The ideal transformed data state `U|d⟩` (resp. `U′|d⟩`).
pub fn reference_output(data: &DataState, variant: OperationVariant) -> StateVector {
    data.to_state()
        .apply_single_qubit(&restricted_unitary(variant), 0)
        .expect("one-qubit state")
}

/// Classically controlled correction on the three output qubits.
///
/// `Φ+` branches pass through untouched, `Φ−` branches get σ_z on all three
/// qubits, and `Ψ±` branches are returned unchanged: they are the failure
/// outcomes, beyond repair by any tensor-product Pauli correction.
pub fn correct(outcome: BellOutcome, state_abc: &StateVector) -> Result<StateVector> {
    if state_abc.num_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            actual: state_abc.dim(),
        });
    }
    match outcome {
        BellOutcome::PhiPlus | BellOutcome::PsiPlus | BellOutcome::PsiMinus => {
            Ok(state_abc.clone())
        }
        BellOutcome::PhiMinus => {
            apply_pauli_corrections(state_abc, &[Pauli::Z, Pauli::Z, Pauli::Z])
        }
    }
}

/// Applies one Pauli per qubit, in register order.
pub fn apply_pauli_corrections(state: &StateVector, paulis: &[Pauli]) -> Result<StateVector> {
    if paulis.len() != state.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.num_qubits(),
            actual: paulis.len(),
        });
    }
    let mut out = state.clone();
    for (position, pauli) in paulis.iter().enumerate() {
        if *pauli != Pauli::I {
            out = out.apply_single_qubit(&pauli.gate(), position)?;
        }
    }
    Ok(out)
}

/// Reduced single-qubit outputs `(ρ_B, ρ_C)` of a three-qubit `(A, B, C)`
/// state, dropping the ancilla.
pub fn output_reductions(state_abc: &StateVector) -> Result<(DensityMatrix, DensityMatrix)> {
    if state_abc.num_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            actual: state_abc.dim(),
        });
    }
    Ok((
        reduced_state(state_abc, &[1])?,
        reduced_state(state_abc, &[2])?,
    ))
}

fn record_for_branch(
    data: &DataState,
    variant: OperationVariant,
    outcome: BellOutcome,
    probability: f64,
    residual_abc: &StateVector,
) -> RunRecord {
    let corrected = correct(outcome, residual_abc).expect("residual has three qubits");
    let (rho_b, rho_c) = output_reductions(&corrected).expect("three-qubit state");
    let reference = reference_output(data, variant);
    let fidelity_b = fidelity(&reference, &rho_b).expect("one-qubit pair");
    let fidelity_c = fidelity(&reference, &rho_c).expect("one-qubit pair");
    let success = matches!(outcome, BellOutcome::PhiPlus | BellOutcome::PhiMinus);
    RunRecord {
        variant,
        outcome,
        branch_probability: probability,
        success,
        post_state_abc: corrected,
        rho_b,
        rho_c,
        fidelity_b,
        fidelity_c,
    }
}

/// Exact, deterministic analysis of all four measurement branches.
pub fn branch_table(data: &DataState, variant: OperationVariant) -> Vec<RunRecord> {
    let total = assemble(data, variant);
    bell_branches(&total, 0, 1)
        .expect("five-qubit register")
        .into_iter()
        .map(|branch| {
            let residual = branch.post.expect("every branch has probability 1/4");
            record_for_branch(data, variant, branch.outcome, branch.probability, &residual)
        })
        .collect()
}

/// One Monte Carlo execution: samples a Bell outcome per the Born rule,
/// applies the corrections, and fills a [`RunRecord`].
pub fn run_shot<R: Rng + ?Sized>(
    data: &DataState,
    variant: OperationVariant,
    rng: &mut R,
) -> RunRecord {
    let total = assemble(data, variant);
    let (outcome, probability, residual) =
        crate::measure::bell_measure(&total, 0, 1, rng).expect("five-qubit register");
    record_for_branch(data, variant, outcome, probability, &residual)
}
