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

//! Comparison baselines for the two-output processor.
//!
//! * [`nc_processor`] — the teleportation-based one-output processor: the
//!   program is `(I ⊗ U)|Φ+⟩`, an arbitrary gate teleports with probability
//!   1/4 and perfect fidelity.
//! * [`telecloning_1to2`] — standalone deterministic 1→2 telecloning; every
//!   Bell outcome is repaired by a per-outcome Pauli correction.
//! * [`sequential_scheme`] — the one-output processor followed by
//!   telecloning, succeeding with probability 1/4 at the same 5/6 clone
//!   fidelity as the two-output processor.
//! * [`resource_comparison`] — static entanglement/communication ledger for
//!   the two routes.

use crate::density::{fidelity, reduced_state, DensityMatrix};
use crate::error::Result;
use crate::gate::{Pauli, SingleQubitGate};
use crate::measure::{bell_measure, bell_project, BellOutcome};
use crate::processor::{apply_pauli_corrections, reference_output, DataState};
use crate::program::{base_program, bell, restricted_unitary, OperationVariant, VariantTag};
use crate::state::StateVector;
use rand::Rng;

/// One execution of the Nielsen-Chuang one-output processor.
#[derive(Clone, Debug)]
pub struct NcRunRecord {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Only the `Φ+` outcome counts as success for an arbitrary gate.
    pub success: bool,
    /// The single data output; equals `U|d⟩` exactly on success.
    pub output: StateVector,
}

fn nc_total_state(data: &DataState, gate: &SingleQubitGate) -> StateVector {
    // Program register (P, O): gate applied to the output half of Φ+.
    let program = bell(BellOutcome::PhiPlus)
        .with_labels(vec!["P", "O"])
        .expect("two labels")
        .apply_single_qubit(gate, 1)
        .expect("qubit in range");
    data.to_state().tensor(&program).expect("3 qubits fit")
}

fn nc_record(outcome: BellOutcome, probability: f64, output: StateVector) -> NcRunRecord {
    NcRunRecord {
        outcome,
        probability,
        success: outcome == BellOutcome::PhiPlus,
        output,
    }
}

/// Runs the one-output processor with a sampled Bell outcome.
///
/// Works for an arbitrary unitary `gate`, not only the restricted families.
pub fn nc_processor<R: Rng + ?Sized>(
    data: &DataState,
    gate: &SingleQubitGate,
    rng: &mut R,
) -> NcRunRecord {
    let total = nc_total_state(data, gate);
    let (outcome, probability, output) =
        bell_measure(&total, 0, 1, rng).expect("three-qubit register");
    nc_record(outcome, probability, output)
}

/// Deterministic variant projecting onto a forced outcome.
pub fn nc_processor_forced(
    data: &DataState,
    gate: &SingleQubitGate,
    outcome: BellOutcome,
) -> Result<NcRunRecord> {
    let total = nc_total_state(data, gate);
    let (probability, output) = bell_project(&total, 0, 1, outcome)?;
    Ok(nc_record(outcome, probability, output))
}

/// Max-norm deviation between `(I ⊗ U)(|00⟩ + |11⟩)` and
/// `(U^T ⊗ I)(|00⟩ + |11⟩)`; zero for every 2×2 matrix.
pub fn transpose_identity_check(gate: &SingleQubitGate) -> f64 {
    let pair = bell(BellOutcome::PhiPlus);
    let lhs = pair.apply_single_qubit(gate, 1).expect("qubit 1");
    let rhs = pair
        .apply_single_qubit(&gate.transpose(), 0)
        .expect("qubit 0");
    lhs.max_abs_diff(&rhs).expect("same register")
}

/// Frozen per-outcome correction table for 1→2 telecloning, applied to all
/// three qubits `(A, B, C)`. Derived by exhaustive search over tensor-product
/// Pauli corrections (see the module tests) and fixed here.
pub fn telecloning_correction(outcome: BellOutcome) -> [Pauli; 3] {
    match outcome {
        BellOutcome::PhiPlus => [Pauli::I, Pauli::I, Pauli::I],
        BellOutcome::PhiMinus => [Pauli::Z, Pauli::Z, Pauli::Z],
        BellOutcome::PsiPlus => [Pauli::X, Pauli::X, Pauli::X],
        BellOutcome::PsiMinus => [Pauli::Y, Pauli::Y, Pauli::Y],
    }
}

/// One telecloning round: outcome, corrections, and both clone outputs.
#[derive(Clone, Debug)]
pub struct TelecloneRecord {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Corrections applied to `(A, B, C)`, in register order.
    pub correction: [Pauli; 3],
    pub rho_b: DensityMatrix,
    pub rho_c: DensityMatrix,
    /// Clone fidelities against the telecloning input; 5/6 on every branch.
    pub fidelity_b: f64,
    pub fidelity_c: f64,
}

fn teleclone_record(
    input: &StateVector,
    outcome: BellOutcome,
    probability: f64,
    residual_abc: &StateVector,
) -> TelecloneRecord {
    let correction = telecloning_correction(outcome);
    let corrected =
        apply_pauli_corrections(residual_abc, &correction).expect("three-qubit residual");
    let rho_b = reduced_state(&corrected, &[1]).expect("keep B");
    let rho_c = reduced_state(&corrected, &[2]).expect("keep C");
    let fidelity_b = fidelity(input, &rho_b).expect("one-qubit pair");
    let fidelity_c = fidelity(input, &rho_c).expect("one-qubit pair");
    TelecloneRecord {
        outcome,
        probability,
        correction,
        rho_b,
        rho_c,
        fidelity_b,
        fidelity_c,
    }
}

fn teleclone_total_state(input: &StateVector) -> Result<StateVector> {
    // The channel is the plain resource state with no operation encoded.
    input.tensor(&base_program(VariantTag::Commuting))
}

/// Distributes two optimal clones of `input` via the four-qubit channel.
/// Never fails: all four Bell outcomes are corrected to clone fidelity 5/6.
pub fn telecloning_1to2<R: Rng + ?Sized>(
    input: &StateVector,
    rng: &mut R,
) -> Result<TelecloneRecord> {
    let total = teleclone_total_state(input)?;
    let (outcome, probability, residual) = bell_measure(&total, 0, 1, rng)?;
    Ok(teleclone_record(input, outcome, probability, &residual))
}

/// Deterministic variant projecting onto a forced outcome.
pub fn telecloning_1to2_forced(
    input: &StateVector,
    outcome: BellOutcome,
) -> Result<TelecloneRecord> {
    let total = teleclone_total_state(input)?;
    let (probability, residual) = bell_project(&total, 0, 1, outcome)?;
    Ok(teleclone_record(input, outcome, probability, &residual))
}

/// Outcome of running the one-output processor followed by telecloning.
#[derive(Clone, Debug)]
pub struct SequentialResult {
    pub stage1: NcRunRecord,
    /// Present only when stage 1 succeeded and the clones were distributed.
    pub stage2: Option<TelecloneRecord>,
    pub overall_success: bool,
    /// Clone fidelities against the ideal `U|d⟩`, when stage 2 ran.
    pub fidelity_b: Option<f64>,
    pub fidelity_c: Option<f64>,
}

/// The sequential baseline: teleport `U|d⟩` through the one-output
/// processor, then teleclone the result. Overall success probability is the
/// stage-1 success probability of 1/4; the clone fidelities on success match
/// the two-output processor's 5/6.
pub fn sequential_scheme<R: Rng + ?Sized>(
    data: &DataState,
    variant: OperationVariant,
    rng: &mut R,
) -> SequentialResult {
    let gate = restricted_unitary(variant);
    let stage1 = nc_processor(data, &gate, rng);
    if !stage1.success {
        return SequentialResult {
            stage1,
            stage2: None,
            overall_success: false,
            fidelity_b: None,
            fidelity_c: None,
        };
    }
    let stage2 = telecloning_1to2(&stage1.output, rng).expect("one-qubit stage-1 output");
    let reference = reference_output(data, variant);
    let fidelity_b = fidelity(&reference, &stage2.rho_b).expect("one-qubit pair");
    let fidelity_c = fidelity(&reference, &stage2.rho_c).expect("one-qubit pair");
    SequentialResult {
        stage1,
        stage2: Some(stage2),
        overall_success: true,
        fidelity_b: Some(fidelity_b),
        fidelity_c: Some(fidelity_c),
    }
}

/// Static resource accounting for one protocol execution.
///
/// Entanglement is counted across the port cut: each program or channel
/// state contributes the entropy of its port-qubit reduction, which is
/// exactly 1 ebit for both the Bell pair and the four-qubit channel state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceLedger {
    pub ebits: u32,
    pub classical_bits: u32,
    pub physical_qubits: u32,
    pub bell_measurements: u32,
}

/// Signed difference between two ledgers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerDelta {
    pub ebits: i64,
    pub classical_bits: i64,
    pub physical_qubits: i64,
    pub bell_measurements: i64,
}

impl ResourceLedger {
    pub fn delta_from(&self, base: &ResourceLedger) -> LedgerDelta {
        LedgerDelta {
            ebits: i64::from(self.ebits) - i64::from(base.ebits),
            classical_bits: i64::from(self.classical_bits) - i64::from(base.classical_bits),
            physical_qubits: i64::from(self.physical_qubits) - i64::from(base.physical_qubits),
            bell_measurements: i64::from(self.bell_measurements)
                - i64::from(base.bell_measurements),
        }
    }
}

/// Ledgers for the two-output processor and the sequential scheme. The
/// sequential route costs one extra ebit and two extra classical bits.
pub fn resource_comparison() -> (ResourceLedger, ResourceLedger) {
    let two_output = ResourceLedger {
        ebits: 1,            // port cut of the four-qubit program state
        classical_bits: 2,   // one Bell measurement result
        physical_qubits: 5,  // D, P, A, B, C
        bell_measurements: 1,
    };
    let sequential = ResourceLedger {
        ebits: 2,            // teleportation Bell pair + telecloning channel
        classical_bits: 4,   // two Bell measurement results
        physical_qubits: 7,  // D, P, O plus the fresh P', A, B, C channel
        bell_measurements: 2,
    };
    (two_output, sequential)
}

/// Entanglement across the port cut of a program state, in ebits: the
/// entropy of the reduction onto qubit 0.
pub fn port_cut_entropy_bits(program_state: &StateVector) -> Result<f64> {
    Ok(reduced_state(program_state, &[0])?.entropy_bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityMatrix;
    use crate::program::OperationVariant;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn teleporting_zero_through_identity() {
        let data = DataState::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let record =
            nc_processor_forced(&data, &SingleQubitGate::identity(), BellOutcome::PhiPlus)
                .unwrap();
        assert!(record.success);
        assert!((record.probability - 0.25).abs() < 1e-13);
        assert!((record.output.amplitude(0).norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn nc_success_output_is_exact_for_random_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let data = DataState::random(&mut rng);
            let gate = SingleQubitGate::haar_random(&mut rng);
            let record = nc_processor_forced(&data, &gate, BellOutcome::PhiPlus).unwrap();
            let expected = data.to_state().apply_single_qubit(&gate, 0).unwrap();
            assert!(record.output.max_abs_diff(&expected).unwrap() < 1e-12);
            let rho = DensityMatrix::from_pure(&record.output);
            assert!((fidelity(&expected, &rho).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nc_phi_minus_branch_is_sigma_z_corrected_for_commuting_gates() {
        // For gates commuting with σ_z the Φ− output equals σ_z·U|d⟩
        // exactly; the run is still scored as a failure.
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let data = DataState::random(&mut rng);
            let variant = OperationVariant::commuting(rng.random_range(0.0..TAU));
            let gate = restricted_unitary(variant);
            let record = nc_processor_forced(&data, &gate, BellOutcome::PhiMinus).unwrap();
            assert!(!record.success);
            let expected = data
                .to_state()
                .apply_single_qubit(&gate, 0)
                .unwrap()
                .apply_single_qubit(&SingleQubitGate::pauli_z(), 0)
                .unwrap();
            assert!(record.output.max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn nc_branch_probabilities_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let data = DataState::random(&mut rng);
        let gate = SingleQubitGate::haar_random(&mut rng);
        for outcome in BellOutcome::ALL {
            let record = nc_processor_forced(&data, &gate, outcome).unwrap();
            assert!((record.probability - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn transpose_identity_for_named_gates() {
        assert!(transpose_identity_check(&SingleQubitGate::pauli_x()) < 1e-15);
        let diag = restricted_unitary(OperationVariant::commuting(1.9));
        assert!(transpose_identity_check(&diag) < 1e-15);
    }

    #[test]
    fn transpose_identity_for_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let gate = SingleQubitGate::haar_random(&mut rng);
            assert!(transpose_identity_check(&gate) < 1e-12);
        }
    }

    #[test]
    fn telecloning_zero_forced_phi_plus() {
        let input = StateVector::computational(1, 0).unwrap();
        let record = telecloning_1to2_forced(&input, BellOutcome::PhiPlus).unwrap();
        assert!((record.rho_b.entry(0, 0).re - 5.0 / 6.0).abs() < 1e-13);
        assert!((record.rho_b.entry(1, 1).re - 1.0 / 6.0).abs() < 1e-13);
        assert!((record.probability - 0.25).abs() < 1e-13);
    }

    #[test]
    fn telecloning_never_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..50 {
            let input = DataState::random(&mut rng).to_state();
            for outcome in BellOutcome::ALL {
                let record = telecloning_1to2_forced(&input, outcome).unwrap();
                assert!(
                    (record.fidelity_b - 5.0 / 6.0).abs() < 1e-12,
                    "B fidelity on {outcome}"
                );
                assert!(
                    (record.fidelity_c - 5.0 / 6.0).abs() < 1e-12,
                    "C fidelity on {outcome}"
                );
            }
        }
    }

    #[test]
    fn telecloning_correction_table_survives_brute_force() {
        // For each outcome, the frozen correction must reproduce the clone
        // map (2/3)|in⟩⟨in| + (1/6)I on both outputs. The search space is
        // every tensor-product Pauli triple.
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..5 {
            let input = DataState::random(&mut rng).to_state();
            let total = teleclone_total_state(&input).unwrap();
            for outcome in BellOutcome::ALL {
                let (_, residual) = bell_project(&total, 0, 1, outcome).unwrap();
                let mut winners = Vec::new();
                for pa in Pauli::ALL {
                    for pb in Pauli::ALL {
                        for pc in Pauli::ALL {
                            let candidate =
                                apply_pauli_corrections(&residual, &[pa, pb, pc]).unwrap();
                            let rho_b = reduced_state(&candidate, &[1]).unwrap();
                            let rho_c = reduced_state(&candidate, &[2]).unwrap();
                            let fb = fidelity(&input, &rho_b).unwrap();
                            let fc = fidelity(&input, &rho_c).unwrap();
                            if (fb - 5.0 / 6.0).abs() < 1e-12 && (fc - 5.0 / 6.0).abs() < 1e-12 {
                                winners.push([pa, pb, pc]);
                            }
                        }
                    }
                }
                assert!(
                    winners.contains(&telecloning_correction(outcome)),
                    "frozen table entry for {outcome} not found by search"
                );
            }
        }
    }

    #[test]
    fn sequential_success_matches_two_output_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let mut successes = 0;
        for _ in 0..200 {
            let data = DataState::random(&mut rng);
            let variant = OperationVariant::commuting(rng.random_range(0.0..TAU));
            let result = sequential_scheme(&data, variant, &mut rng);
            if result.overall_success {
                successes += 1;
                assert!((result.fidelity_b.unwrap() - 5.0 / 6.0).abs() < 1e-12);
                assert!((result.fidelity_c.unwrap() - 5.0 / 6.0).abs() < 1e-12);
            } else {
                assert!(result.stage2.is_none());
            }
        }
        assert!(successes > 20 && successes < 80, "got {successes}");
    }

    #[test]
    fn ledger_difference_is_one_ebit_two_bits() {
        let (two_output, sequential) = resource_comparison();
        let delta = sequential.delta_from(&two_output);
        assert_eq!(delta.ebits, 1);
        assert_eq!(delta.classical_bits, 2);
        assert_eq!(two_output.bell_measurements, 1);
        assert_eq!(sequential.bell_measurements, 2);
    }

    #[test]
    fn port_cut_entropy_is_one_ebit() {
        for tag in [VariantTag::Commuting, VariantTag::AntiCommuting] {
            let entropy = port_cut_entropy_bits(&base_program(tag)).unwrap();
            assert!((entropy - 1.0).abs() < 1e-12);
        }
        let entropy = port_cut_entropy_bits(&bell(BellOutcome::PhiPlus)).unwrap();
        assert!((entropy - 1.0).abs() < 1e-12);
    }
}
