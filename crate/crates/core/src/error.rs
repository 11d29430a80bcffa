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

//! Error type shared by all simulation operations.

use crate::measure::BellOutcome;

/// Errors raised by state construction and protocol operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("register of {requested} qubits exceeds the supported maximum of {max}")]
    RegisterTooLarge { requested: usize, max: usize },

    #[error("amplitude vector of length {len} is not a power of two")]
    BadAmplitudeCount { len: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit index {index} given more than once")]
    DuplicateQubit { index: usize },

    #[error("partial trace must keep at least one qubit")]
    EmptyKeep,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("forced outcome {outcome} has projection probability {probability:.3e}, below the impossible-branch cutoff")]
    ImpossibleBranch {
        outcome: BellOutcome,
        probability: f64,
    },

    #[error("state is not normalized: sum of squared moduli is {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not unitary: max deviation of G\u{2020}G from identity is {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace {trace} is not 1")]
    BadTrace { trace: f64 },

    #[error("matrix has eigenvalue {eigenvalue:.3e} below the positivity floor")]
    NotPositive { eigenvalue: f64 },

    #[error("amplitudes must be finite")]
    NonFinite,

    #[error("{count} labels given for a {num_qubits}-qubit register")]
    BadLabelCount { count: usize, num_qubits: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
