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

//! Canonical program states and the restricted operation families.
//!
//! The processor encodes its operation into a four-qubit entangled state over
//! registers `(P, A, B, C)`: port qubit `P`, ancilla `A`, and the two clone
//! outputs `B` and `C`. The building blocks are the three-qubit clone states
//!
//! ```text
//! |Φ0⟩ = √(2/3)|000⟩ + √(1/6)(|101⟩ + |110⟩)
//! |Φ1⟩ = √(2/3)|111⟩ + √(1/6)(|001⟩ + |010⟩)
//! ```
//!
//! which are the optimal symmetric 1→2 clones of |0⟩ and |1⟩ (qubit order
//! `A, B, C`, left to right). Tracing |Φ0⟩⟨Φ0| down to either output gives
//! `diag(5/6, 1/6)`.
//!
//! Two operation families are supported: `exp(iθσ_z/2)` (commuting with σ_z)
//! and the σ_x-conjugated analogue (anti-commuting with σ_z).

use crate::gate::SingleQubitGate;
use crate::measure::BellOutcome;
use crate::state::StateVector;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Which restricted operation family a program belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VariantTag {
    /// Gates commuting with σ_z: `diag(e^{iθ/2}, e^{−iθ/2})`.
    Commuting,
    /// Gates anti-commuting with σ_z: off-diagonal `(e^{iθ/2}, e^{−iθ/2})`.
    AntiCommuting,
}

impl VariantTag {
    pub fn label(self) -> &'static str {
        match self {
            VariantTag::Commuting => "commuting",
            VariantTag::AntiCommuting => "anticommuting",
        }
    }
}

impl std::fmt::Display for VariantTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A concrete operation: a family tag plus its angle, reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperationVariant {
    tag: VariantTag,
    angle: f64,
}

impl OperationVariant {
    /// Accepts any real angle and reduces it modulo 2π.
    pub fn new(tag: VariantTag, angle: f64) -> Self {
        Self {
            tag,
            angle: angle.rem_euclid(TAU),
        }
    }

    pub fn commuting(angle: f64) -> Self {
        Self::new(VariantTag::Commuting, angle)
    }

    pub fn anti_commuting(angle: f64) -> Self {
        Self::new(VariantTag::AntiCommuting, angle)
    }

    pub fn tag(&self) -> VariantTag {
        self.tag
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The requested maximally entangled two-qubit state.
pub fn bell(kind: BellOutcome) -> StateVector {
    StateVector::from_parts_unchecked(kind.amplitudes().to_vec(), vec!["q0".into(), "q1".into()])
}

/// Three-qubit clone state of |0⟩ on registers `(A, B, C)`.
pub fn phi0() -> StateVector {
    let big = c((2.0f64 / 3.0).sqrt(), 0.0);
    let small = c((1.0f64 / 6.0).sqrt(), 0.0);
    let zero = c(0.0, 0.0);
    let amps = vec![
        big,   // |000⟩
        zero,  // |001⟩
        zero,  // |010⟩
        zero,  // |011⟩
        zero,  // |100⟩
        small, // |101⟩
        small, // |110⟩
        zero,  // |111⟩
    ];
    StateVector::from_parts_unchecked(amps, vec!["A".into(), "B".into(), "C".into()])
}

/// Three-qubit clone state of |1⟩ on registers `(A, B, C)`; equals σ_x⊗σ_x⊗σ_x |Φ0⟩.
pub fn phi1() -> StateVector {
    let big = c((2.0f64 / 3.0).sqrt(), 0.0);
    let small = c((1.0f64 / 6.0).sqrt(), 0.0);
    let zero = c(0.0, 0.0);
    let amps = vec![
        zero,  // |000⟩
        small, // |001⟩
        small, // |010⟩
        zero,  // |011⟩
        zero,  // |100⟩
        zero,  // |101⟩
        zero,  // |110⟩
        big,   // |111⟩
    ];
    StateVector::from_parts_unchecked(amps, vec!["A".into(), "B".into(), "C".into()])
}

/// The four-qubit resource state on `(P, A, B, C)` before any operation is
/// encoded: `(|0⟩_P|Φ0⟩ + |1⟩_P|Φ1⟩)/√2` for the commuting family, and the
/// branch-swapped `(|0⟩_P|Φ1⟩ + |1⟩_P|Φ0⟩)/√2` for the anti-commuting one.
pub fn base_program(tag: VariantTag) -> StateVector {
    let (low, high) = match tag {
        VariantTag::Commuting => (phi0(), phi1()),
        VariantTag::AntiCommuting => (phi1(), phi0()),
    };
    let s = 1.0 / 2f64.sqrt();
    let mut amps = vec![c(0.0, 0.0); 16];
    for i in 0..8 {
        amps[i] = low.amplitude(i) * s;
        amps[8 + i] = high.amplitude(i) * s;
    }
    StateVector::from_parts_unchecked(
        amps,
        vec!["P".into(), "A".into(), "B".into(), "C".into()],
    )
}

/// The gate the processor is programmed to perform.
pub fn restricted_unitary(variant: OperationVariant) -> SingleQubitGate {
    let half = variant.angle() / 2.0;
    let plus = Complex64::from_polar(1.0, half);
    let minus = Complex64::from_polar(1.0, -half);
    let zero = c(0.0, 0.0);
    match variant.tag() {
        VariantTag::Commuting => SingleQubitGate::new_unchecked([[plus, zero], [zero, minus]]),
        VariantTag::AntiCommuting => SingleQubitGate::new_unchecked([[zero, plus], [minus, zero]]),
    }
}

/// Encodes the operation into the program register by applying it to the
/// port qubit only. For both families the result is
/// `(e^{iθ/2}|0⟩|Φ0⟩ + e^{−iθ/2}|1⟩|Φ1⟩)/√2`: the anti-commuting gate swaps
/// the branches its base state already swapped.
pub fn encode_program(variant: OperationVariant) -> StateVector {
    base_program(variant.tag())
        .apply_single_qubit(&restricted_unitary(variant), 0)
        .expect("port qubit exists")
}
