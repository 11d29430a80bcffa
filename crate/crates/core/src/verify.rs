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

//! Self-verification suite: every analytic claim the simulator rests on,
//! checked at fixed tolerances over seeded random draws.

use crate::baselines::{
    nc_processor_forced, port_cut_entropy_bits, resource_comparison, telecloning_1to2_forced,
    transpose_identity_check,
};
use crate::density::{fidelity, DensityMatrix};
use crate::gate::{Pauli, SingleQubitGate};
use crate::measure::BellOutcome;
use crate::processor::{
    apply_pauli_corrections, branch_table, output_reductions, reference_output, DataState,
};
use crate::program::{base_program, bell, phi0, phi1, OperationVariant, VariantTag};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

/// One named invariant with its measured value and pass threshold.
///
/// A check passes when `measured < threshold`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

fn check(name: &str, measured: f64, threshold: f64) -> VerifyCheck {
    VerifyCheck {
        name: name.to_string(),
        measured,
        threshold,
        passed: measured < threshold,
    }
}

fn both_variants(angle: f64) -> [OperationVariant; 2] {
    [
        OperationVariant::commuting(angle),
        OperationVariant::anti_commuting(angle),
    ]
}

/// Clone map `(2/3)|ref⟩⟨ref| + (1/6)I` the success outputs must equal.
fn clone_map(reference: &crate::state::StateVector) -> DensityMatrix {
    let pure = DensityMatrix::from_pure(reference);
    let mut entries = Vec::with_capacity(4);
    for r in 0..2 {
        for c in 0..2 {
            let identity = if r == c {
                Complex64::new(1.0 / 6.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            entries.push(pure.entry(r, c) * (2.0 / 3.0) + identity);
        }
    }
    DensityMatrix::from_entries(1, entries).expect("clone map is a valid state")
}

/// A parameter draw far from the measure-zero set where the failure
/// branches become Pauli-recoverable: balanced amplitudes are required and
/// the angle must stay away from multiples of π/2.
fn generic_draw(rng: &mut ChaCha8Rng) -> (DataState, f64) {
    loop {
        let data = DataState::random(rng);
        let angle: f64 = rng.random_range(0.0..TAU);
        let weight = data.a().norm_sqr();
        let angle_margin = (angle / FRAC_PI_2 - (angle / FRAC_PI_2).round()).abs() * FRAC_PI_2;
        if (0.1..=0.9).contains(&weight) && angle_margin >= 0.3 {
            return (data, angle);
        }
    }
}

/// Best simultaneous clone fidelity any tensor-product Pauli correction can
/// reach on a failure branch: `max` over the 64 corrections of
/// `min(F_B, F_C)`.
pub fn best_failure_recovery(
    data: &DataState,
    variant: OperationVariant,
    outcome: BellOutcome,
) -> f64 {
    assert!(
        matches!(outcome, BellOutcome::PsiPlus | BellOutcome::PsiMinus),
        "recovery search applies to failure branches"
    );
    let table = branch_table(data, variant);
    let record = table
        .iter()
        .find(|r| r.outcome == outcome)
        .expect("branch exists");
    let reference = reference_output(data, variant);
    let mut best = 0.0f64;
    for pa in Pauli::ALL {
        for pb in Pauli::ALL {
            for pc in Pauli::ALL {
                let candidate =
                    apply_pauli_corrections(&record.post_state_abc, &[pa, pb, pc]).unwrap();
                let (rho_b, rho_c) = output_reductions(&candidate).unwrap();
                let fb = fidelity(&reference, &rho_b).unwrap();
                let fc = fidelity(&reference, &rho_c).unwrap();
                best = best.max(fb.min(fc));
            }
        }
    }
    best
}

/// Runs every invariant check with draws from the given seed.
pub fn run_checks(seed: u64) -> Vec<VerifyCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let z = SingleQubitGate::pauli_z();

    // Algebraic family relations.
    let mut com_dev = 0.0f64;
    let mut anti_dev = 0.0f64;
    for _ in 0..100 {
        let angle = rng.random_range(0.0..TAU);
        com_dev = com_dev.max(
            crate::program::restricted_unitary(OperationVariant::commuting(angle))
                .commutator_norm(&z),
        );
        anti_dev = anti_dev.max(
            crate::program::restricted_unitary(OperationVariant::anti_commuting(angle))
                .anticommutator_norm(&z),
        );
    }
    checks.push(check("commuting_family_commutes_with_sigma_z", com_dev, 1e-12));
    checks.push(check(
        "anticommuting_family_anticommutes_with_sigma_z",
        anti_dev,
        1e-12,
    ));

    // Program-state geometry.
    let mut geo = (phi0().norm_sqr() - 1.0).abs().max((phi1().norm_sqr() - 1.0).abs());
    geo = geo.max(phi0().inner(&phi1()).unwrap().norm());
    for tag in [VariantTag::Commuting, VariantTag::AntiCommuting] {
        geo = geo.max((base_program(tag).norm_sqr() - 1.0).abs());
    }
    checks.push(check("program_states_orthonormal", geo, 1e-12));

    // Exact branch structure over random draws, both variants.
    let mut prob_dev = 0.0f64;
    let mut fid_dev = 0.0f64;
    let mut clone_dev = 0.0f64;
    let mut equal_dev = 0.0f64;
    let mut purity_dev = 0.0f64;
    let mut correction_dev = 0.0f64;
    for _ in 0..50 {
        let data = DataState::random(&mut rng);
        let angle = rng.random_range(0.0..TAU);
        for variant in both_variants(angle) {
            let table = branch_table(&data, variant);
            let reference = reference_output(&data, variant);
            let ideal = clone_map(&reference);
            for record in &table {
                prob_dev = prob_dev.max((record.branch_probability - 0.25).abs());
                if record.success {
                    fid_dev = fid_dev
                        .max((record.fidelity_b - 5.0 / 6.0).abs())
                        .max((record.fidelity_c - 5.0 / 6.0).abs());
                    clone_dev = clone_dev.max(record.rho_b.max_abs_diff(&ideal).unwrap());
                    equal_dev = equal_dev.max(record.rho_b.max_abs_diff(&record.rho_c).unwrap());
                    purity_dev = purity_dev
                        .max((record.rho_b.purity() - 13.0 / 18.0).abs())
                        .max((record.rho_c.purity() - 13.0 / 18.0).abs());
                }
            }
            let overlap = table[1]
                .post_state_abc
                .overlap_modulus(&table[0].post_state_abc)
                .unwrap();
            correction_dev = correction_dev.max((overlap - 1.0).abs());
        }
    }
    checks.push(check("branch_probabilities_equal_one_quarter", prob_dev, 1e-12));
    checks.push(check("success_fidelity_equals_five_sixths", fid_dev, 1e-12));
    checks.push(check("clone_map_closed_form", clone_dev, 1e-12));
    checks.push(check("reduced_outputs_equal", equal_dev, 1e-12));
    checks.push(check("purity_equals_13_18", purity_dev, 1e-12));
    checks.push(check("phi_minus_correction_recovers_phi_plus", correction_dev, 1e-12));

    // Transpose identity over Haar-random unitaries.
    let mut transpose_dev = 0.0f64;
    for _ in 0..100 {
        let gate = SingleQubitGate::haar_random(&mut rng);
        transpose_dev = transpose_dev.max(transpose_identity_check(&gate));
    }
    checks.push(check("transpose_identity", transpose_dev, 1e-12));

    // One-output baseline: exact teleportation on the good outcome.
    let mut nc_dev = 0.0f64;
    for _ in 0..50 {
        let data = DataState::random(&mut rng);
        let gate = SingleQubitGate::haar_random(&mut rng);
        let record = nc_processor_forced(&data, &gate, BellOutcome::PhiPlus).unwrap();
        let expected = data.to_state().apply_single_qubit(&gate, 0).unwrap();
        let rho = DensityMatrix::from_pure(&record.output);
        nc_dev = nc_dev
            .max((fidelity(&expected, &rho).unwrap() - 1.0).abs())
            .max((record.probability - 0.25).abs());
    }
    checks.push(check("nc_processor_success_is_exact", nc_dev, 1e-12));

    // Telecloning repairs every outcome.
    let mut tc_dev = 0.0f64;
    for _ in 0..50 {
        let input = DataState::random(&mut rng).to_state();
        for outcome in BellOutcome::ALL {
            let record = telecloning_1to2_forced(&input, outcome).unwrap();
            tc_dev = tc_dev
                .max((record.fidelity_b - 5.0 / 6.0).abs())
                .max((record.fidelity_c - 5.0 / 6.0).abs())
                .max((record.probability - 0.25).abs());
        }
    }
    checks.push(check("telecloning_corrects_all_outcomes", tc_dev, 1e-12));

    // Sequential composition at forced-success outcomes.
    let mut seq_dev = 0.0f64;
    for _ in 0..25 {
        let data = DataState::random(&mut rng);
        let variant = both_variants(rng.random_range(0.0..TAU))[usize::from(rng.random::<bool>())];
        let gate = crate::program::restricted_unitary(variant);
        let stage1 = nc_processor_forced(&data, &gate, BellOutcome::PhiPlus).unwrap();
        let reference = reference_output(&data, variant);
        for outcome in BellOutcome::ALL {
            let stage2 = telecloning_1to2_forced(&stage1.output, outcome).unwrap();
            seq_dev = seq_dev
                .max((fidelity(&reference, &stage2.rho_b).unwrap() - 5.0 / 6.0).abs())
                .max((fidelity(&reference, &stage2.rho_c).unwrap() - 5.0 / 6.0).abs());
        }
    }
    checks.push(check("sequential_scheme_fidelity_five_sixths", seq_dev, 1e-12));

    // Resource ledger differential.
    let (two_output, sequential) = resource_comparison();
    let delta = sequential.delta_from(&two_output);
    let ledger_dev =
        ((delta.ebits - 1).abs() + (delta.classical_bits - 2).abs()) as f64;
    checks.push(check("ledger_delta_one_ebit_two_bits", ledger_dev, 0.5));

    // Port-cut entanglement of the program resource is exactly one ebit.
    let mut entropy_dev = 0.0f64;
    for tag in [VariantTag::Commuting, VariantTag::AntiCommuting] {
        entropy_dev =
            entropy_dev.max((port_cut_entropy_bits(&base_program(tag)).unwrap() - 1.0).abs());
    }
    entropy_dev =
        entropy_dev.max((port_cut_entropy_bits(&bell(BellOutcome::PhiPlus)).unwrap() - 1.0).abs());
    checks.push(check("program_port_cut_entropy_one_ebit", entropy_dev, 1e-12));

    // Failure branches stay unrecoverable under tensor-product Paulis for
    // generic parameters: best achievable min(F_B, F_C) must stay below 5/6.
    let mut best_recovery = 0.0f64;
    for _ in 0..3 {
        let (data, angle) = generic_draw(&mut rng);
        for variant in both_variants(angle) {
            for outcome in [BellOutcome::PsiPlus, BellOutcome::PsiMinus] {
                best_recovery = best_recovery.max(best_failure_recovery(&data, variant, outcome));
            }
        }
    }
    checks.push(check(
        "failure_branches_not_pauli_recoverable",
        best_recovery,
        5.0 / 6.0 - 1e-9,
    ));

    checks
}

/// True when every check passes.
pub fn all_passed(checks: &[VerifyCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let checks = run_checks(0);
        for c in &checks {
            assert!(
                c.passed,
                "{} failed: measured {} vs threshold {}",
                c.name, c.measured, c.threshold
            );
        }
        assert!(all_passed(&checks));
    }

    #[test]
    fn failure_recovery_search_stays_below_success_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let (data, angle) = generic_draw(&mut rng);
            for variant in both_variants(angle) {
                for outcome in [BellOutcome::PsiPlus, BellOutcome::PsiMinus] {
                    let best = best_failure_recovery(&data, variant, outcome);
                    assert!(
                        best < 5.0 / 6.0 - 1e-3,
                        "recovery {best} too close to 5/6 for {outcome}"
                    );
                }
            }
        }
    }

    #[test]
    fn recovery_is_possible_at_degenerate_angles() {
        // At θ = 0 the Ψ branches are plain telecloning branches, fixable by
        // σ_x on all three qubits; the generic-draw guard exists for this
        // reason.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let data = DataState::random(&mut rng);
        let best = best_failure_recovery(
            &data,
            OperationVariant::commuting(0.0),
            BellOutcome::PsiPlus,
        );
        assert!((best - 5.0 / 6.0).abs() < 1e-12);
    }
}
