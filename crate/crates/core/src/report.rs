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

//! Machine-readable experiment reports.
//!
//! All reports are deterministic functions of `(config, seed)` except for the
//! `generated_at_unix_ms` timestamp. Monte Carlo shots run on per-shot RNG
//! streams (shot `i` uses stream `i + 1` of the seeded generator), so results
//! do not depend on evaluation order.

use crate::baselines::{resource_comparison, sequential_scheme, ResourceLedger};
use crate::measure::BellOutcome;
use crate::processor::{branch_table, reference_output, run_shot, DataState};
use crate::program::OperationVariant;
use crate::verify::{all_passed, run_checks, VerifyCheck};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Counter-based generator backing every sampled report; stream `i + 1`
/// drives shot `i`, making reports reproducible and schedule-independent.
pub const RNG_ALGORITHM: &str = "chacha8 (per-shot streams)";

fn unix_ms() -> u64 {
    #[cfg(target_arch = "wasm32")]
    {
        0
    }
    #[cfg(not(target_arch = "wasm32"))]
    {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0)
    }
}

fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot + 1);
    rng
}

/// Stream 0 is reserved for non-shot draws (the analyze data state).
fn setup_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Echo of the experiment configuration a report was produced from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub variant: String,
    pub angle_radians: f64,
    /// `[re_a, im_a, re_b, im_b]` when fixed; `None` means a fresh
    /// Haar-random data state per shot.
    pub data: Option<[f64; 4]>,
    pub shots: Option<u64>,
    pub seed: u64,
}

fn echo(
    command: &str,
    variant: OperationVariant,
    data: Option<&DataState>,
    shots: Option<u64>,
    seed: u64,
) -> ConfigEcho {
    ConfigEcho {
        command: command.to_string(),
        variant: variant.tag().label().to_string(),
        angle_radians: variant.angle(),
        data: data.map(|d| [d.a().re, d.a().im, d.b().re, d.b().im]),
        shots,
        seed,
    }
}

/// One exact measurement branch of the analyze table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchRow {
    pub outcome: String,
    pub classical_bits: String,
    pub probability: f64,
    pub success: bool,
    pub fidelity_b: f64,
    pub fidelity_c: f64,
    pub purity_b: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Aggregate {
    pub success_probability: f64,
    pub mean_success_fidelity: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub rng_algorithm: String,
    pub generated_at_unix_ms: u64,
    pub config: ConfigEcho,
    /// Ideal transformed state `U|d⟩` as `[[re, im]; 2]`.
    pub reference_output: [[f64; 2]; 2],
    pub branches: Vec<BranchRow>,
    pub aggregate: Aggregate,
}

/// Exact four-branch analysis. When `data` is `None` one Haar-random data
/// state is drawn from stream 0 of the seeded generator and echoed back.
pub fn analyze_report(
    variant: OperationVariant,
    data: Option<DataState>,
    seed: u64,
) -> AnalyzeReport {
    let data = data.unwrap_or_else(|| DataState::random(&mut setup_rng(seed)));
    let table = branch_table(&data, variant);
    let reference = reference_output(&data, variant);
    let branches: Vec<BranchRow> = table
        .iter()
        .map(|record| BranchRow {
            outcome: record.outcome.label().to_string(),
            classical_bits: format!("{:02b}", record.outcome.classical_bits()),
            probability: record.branch_probability,
            success: record.success,
            fidelity_b: record.fidelity_b,
            fidelity_c: record.fidelity_c,
            purity_b: record.rho_b.purity(),
        })
        .collect();
    let success_probability: f64 = table
        .iter()
        .filter(|r| r.success)
        .map(|r| r.branch_probability)
        .sum();
    let success_rows: Vec<&crate::processor::RunRecord> =
        table.iter().filter(|r| r.success).collect();
    let mean_success_fidelity = success_rows
        .iter()
        .map(|r| (r.fidelity_b + r.fidelity_c) / 2.0)
        .sum::<f64>()
        / success_rows.len() as f64;
    AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_string(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        generated_at_unix_ms: unix_ms(),
        config: echo("analyze", variant, Some(&data), None, seed),
        reference_output: [
            [reference.amplitude(0).re, reference.amplitude(0).im],
            [reference.amplitude(1).re, reference.amplitude(1).im],
        ],
        branches,
        aggregate: Aggregate {
            success_probability,
            mean_success_fidelity,
        },
    }
}

/// Empirical statistics for one Bell outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutcomeStat {
    pub outcome: String,
    pub classical_bits: String,
    pub count: u64,
    pub frequency: f64,
    pub exact_probability: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub rng_algorithm: String,
    pub generated_at_unix_ms: u64,
    pub config: ConfigEcho,
    pub outcomes: Vec<OutcomeStat>,
    pub success_count: u64,
    pub success_rate: f64,
    pub exact_success_probability: f64,
    pub mean_success_fidelity_b: f64,
    pub mean_success_fidelity_c: f64,
    pub exact_success_fidelity: f64,
}

/// Seeded Monte Carlo run of the two-output processor.
pub fn sample_report(
    variant: OperationVariant,
    data: Option<DataState>,
    shots: u64,
    seed: u64,
) -> SampleReport {
    let mut counts = [0u64; 4];
    let mut success_count = 0u64;
    let mut fid_b_sum = 0.0f64;
    let mut fid_c_sum = 0.0f64;
    for shot in 0..shots {
        let mut rng = shot_rng(seed, shot);
        let shot_data = data.unwrap_or_else(|| DataState::random(&mut rng));
        let record = run_shot(&shot_data, variant, &mut rng);
        counts[record.outcome.classical_bits() as usize] += 1;
        if record.success {
            success_count += 1;
            fid_b_sum += record.fidelity_b;
            fid_c_sum += record.fidelity_c;
        }
    }
    let outcomes = BellOutcome::ALL
        .iter()
        .map(|o| OutcomeStat {
            outcome: o.label().to_string(),
            classical_bits: format!("{:02b}", o.classical_bits()),
            count: counts[o.classical_bits() as usize],
            frequency: counts[o.classical_bits() as usize] as f64 / shots as f64,
            exact_probability: 0.25,
        })
        .collect();
    SampleReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_string(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        generated_at_unix_ms: unix_ms(),
        config: echo("sample", variant, data.as_ref(), Some(shots), seed),
        outcomes,
        success_count,
        success_rate: success_count as f64 / shots as f64,
        exact_success_probability: 0.5,
        mean_success_fidelity_b: if success_count > 0 {
            fid_b_sum / success_count as f64
        } else {
            f64::NAN
        },
        mean_success_fidelity_c: if success_count > 0 {
            fid_c_sum / success_count as f64
        } else {
            f64::NAN
        },
        exact_success_fidelity: 5.0 / 6.0,
    }
}

/// Empirical statistics for one scheme in the comparison run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeStats {
    pub scheme: String,
    pub shots: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub exact_success_probability: f64,
    pub mean_success_fidelity_b: f64,
    pub mean_success_fidelity_c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LedgerRow {
    pub scheme: String,
    pub ebits: u32,
    pub classical_bits: u32,
    pub physical_qubits: u32,
    pub bell_measurements: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LedgerDeltaRow {
    pub ebits: i64,
    pub classical_bits: i64,
    pub physical_qubits: i64,
    pub bell_measurements: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LedgerBlock {
    pub two_output: LedgerRow,
    pub sequential: LedgerRow,
    pub difference: LedgerDeltaRow,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub rng_algorithm: String,
    pub generated_at_unix_ms: u64,
    pub config: ConfigEcho,
    pub two_output: SchemeStats,
    pub sequential: SchemeStats,
    pub ledger: LedgerBlock,
}

fn ledger_row(scheme: &str, ledger: &ResourceLedger) -> LedgerRow {
    LedgerRow {
        scheme: scheme.to_string(),
        ebits: ledger.ebits,
        classical_bits: ledger.classical_bits,
        physical_qubits: ledger.physical_qubits,
        bell_measurements: ledger.bell_measurements,
    }
}

/// Runs the two-output processor and the sequential scheme on identical
/// per-shot inputs and reports both, along with the resource ledgers.
pub fn compare_report(
    variant: OperationVariant,
    data: Option<DataState>,
    shots: u64,
    seed: u64,
) -> CompareReport {
    let mut two = (0u64, 0.0f64, 0.0f64);
    let mut seq = (0u64, 0.0f64, 0.0f64);
    for shot in 0..shots {
        let mut rng = shot_rng(seed, shot);
        let shot_data = data.unwrap_or_else(|| DataState::random(&mut rng));
        let record = run_shot(&shot_data, variant, &mut rng);
        if record.success {
            two.0 += 1;
            two.1 += record.fidelity_b;
            two.2 += record.fidelity_c;
        }
        let result = sequential_scheme(&shot_data, variant, &mut rng);
        if result.overall_success {
            seq.0 += 1;
            seq.1 += result.fidelity_b.unwrap();
            seq.2 += result.fidelity_c.unwrap();
        }
    }
    let stats = |scheme: &str, exact: f64, (successes, fb, fc): (u64, f64, f64)| SchemeStats {
        scheme: scheme.to_string(),
        shots,
        successes,
        success_rate: successes as f64 / shots as f64,
        exact_success_probability: exact,
        mean_success_fidelity_b: if successes > 0 {
            fb / successes as f64
        } else {
            f64::NAN
        },
        mean_success_fidelity_c: if successes > 0 {
            fc / successes as f64
        } else {
            f64::NAN
        },
    };
    let (two_ledger, seq_ledger) = resource_comparison();
    CompareReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_string(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        generated_at_unix_ms: unix_ms(),
        config: echo("compare", variant, data.as_ref(), Some(shots), seed),
        two_output: stats("two_output", 0.5, two),
        sequential: stats("sequential", 0.25, seq),
        ledger: LedgerBlock {
            two_output: ledger_row("two_output", &two_ledger),
            sequential: ledger_row("sequential", &seq_ledger),
            difference: {
                let d = seq_ledger.delta_from(&two_ledger);
                LedgerDeltaRow {
                    ebits: d.ebits,
                    classical_bits: d.classical_bits,
                    physical_qubits: d.physical_qubits,
                    bell_measurements: d.bell_measurements,
                }
            },
        },
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub rng_algorithm: String,
    pub generated_at_unix_ms: u64,
    pub seed: u64,
    pub checks: Vec<VerifyCheck>,
    pub all_passed: bool,
}

/// Runs the full invariant suite.
pub fn verify_report(seed: u64) -> VerifyReport {
    let checks = run_checks(seed);
    let passed = all_passed(&checks);
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_string(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        generated_at_unix_ms: unix_ms(),
        seed,
        checks,
        all_passed: passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn fixed_data() -> DataState {
        DataState::new(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)).unwrap()
    }

    #[test]
    fn analyze_report_has_four_branches_and_exact_rows() {
        let report = analyze_report(OperationVariant::commuting(0.0), Some(fixed_data()), 1);
        assert_eq!(report.branches.len(), 4);
        for row in &report.branches {
            assert!((row.probability - 0.25).abs() < 1e-13);
            if row.success {
                assert!((row.fidelity_b - 5.0 / 6.0).abs() < 1e-12);
                assert!((row.purity_b - 13.0 / 18.0).abs() < 1e-12);
            }
        }
        assert!((report.aggregate.success_probability - 0.5).abs() < 1e-13);
    }

    #[test]
    fn sample_report_is_seed_deterministic() {
        let a = sample_report(OperationVariant::commuting(1.0), None, 500, 42);
        let b = sample_report(OperationVariant::commuting(1.0), None, 500, 42);
        assert_eq!(
            serde_json::to_string(&a.outcomes).unwrap(),
            serde_json::to_string(&b.outcomes).unwrap()
        );
        assert_eq!(a.success_count, b.success_count);
    }

    #[test]
    fn sample_counts_sum_to_shots() {
        let report = sample_report(OperationVariant::anti_commuting(0.5), None, 300, 7);
        let total: u64 = report.outcomes.iter().map(|o| o.count).sum();
        assert_eq!(total, 300);
    }

    #[test]
    fn compare_report_ledger_difference() {
        let report = compare_report(OperationVariant::commuting(0.3), Some(fixed_data()), 50, 3);
        assert_eq!(report.ledger.difference.ebits, 1);
        assert_eq!(report.ledger.difference.classical_bits, 2);
        assert!(report.two_output.success_rate > 0.0);
    }

    #[test]
    fn verify_report_passes_on_fresh_build() {
        let report = verify_report(0);
        assert!(report.all_passed);
        assert!(report.checks.len() >= 10);
    }
}
