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

//! Exact state-vector simulation of a two-output programmable quantum
//! processor.
//!
//! The processor encodes a restricted single-qubit operation — any gate
//! commuting or anti-commuting with σ_z — into a four-qubit entangled
//! program state, then consumes it with one Bell measurement against the
//! data qubit. Half the time the measurement heralds success and the two
//! output registers each hold an approximate copy of the transformed data
//! state with fidelity 5/6; the other half of the time the state cannot be
//! repaired and the run is discarded.
//!
//! The crate provides:
//!
//! * [`state`], [`gate`], [`measure`], [`density`] — dense complex linear
//!   algebra for registers of up to six qubits: tensor products, gate
//!   application, Bell-basis measurement, partial traces, fidelity, purity.
//! * [`program`] — the canonical program states and the two operation
//!   families.
//! * [`processor`] — exact branch analysis and Monte Carlo runs of the
//!   two-output processor.
//! * [`baselines`] — the teleportation-based one-output processor,
//!   standalone 1→2 telecloning, their sequential composition, and the
//!   resource ledger comparing the two routes.
//! * [`report`] / [`verify`] — machine-readable experiment reports and a
//!   self-check suite over every analytic claim.
//!
//! Registers are ordered most-significant-qubit first: position 0 of a
//! register is the highest bit of an amplitude index, so kets read left to
//! right exactly as written.

pub mod baselines;
pub mod density;
pub mod error;
pub mod gate;
pub mod measure;
pub mod processor;
pub mod program;
pub mod report;
pub mod state;
pub mod verify;

pub use baselines::{
    nc_processor, nc_processor_forced, port_cut_entropy_bits, resource_comparison,
    sequential_scheme, telecloning_1to2, telecloning_1to2_forced, telecloning_correction,
    transpose_identity_check, LedgerDelta, NcRunRecord, ResourceLedger, SequentialResult,
    TelecloneRecord,
};
pub use density::{fidelity, reduced_state, DensityMatrix};
pub use error::{Error, Result};
pub use gate::{Pauli, SingleQubitGate};
pub use measure::{bell_branches, bell_measure, bell_project, BellBranch, BellOutcome};
pub use num_complex::Complex64;
pub use processor::{
    apply_pauli_corrections, assemble, branch_table, correct, output_reductions,
    reference_output, run_shot, DataState, RunRecord,
};
pub use program::{
    base_program, bell, encode_program, phi0, phi1, restricted_unitary, OperationVariant,
    VariantTag,
};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 6;

/// Absolute tolerance for normalization and other exact-arithmetic checks.
pub const NORM_TOL: f64 = 1e-12;

/// Absolute tolerance for unitarity of gates.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Absolute tolerance for Hermiticity of density matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Density-matrix eigenvalues may dip this far below zero from roundoff.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Branches with projection probability below this are impossible to force.
pub const BRANCH_CUTOFF: f64 = 1e-14;
