//! Batch verification suites: each replays one of the closed-form claims
//! against its independent oracle over seeded random draws and reports the
//! worst deviation seen.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::channel::{
    apply_named_channel, dilation_oracle, quasi_unitary, realization_catalog,
    transform_closed_form, transform_via_conjugation, verify_realization, ChannelKind, QuasiCase,
    RealizationClass,
};
use crate::extract::{QubitSlot, QubitState};
use crate::qutrit::{random_density, random_sigma, random_unitary};
use crate::Result;

/// The named verification suites exposed by `triq verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Closed-form transformed qubits vs conjugate-then-extract.
    Primes,
    /// Phase-damping realization rows.
    Phdm,
    /// Spontaneous-emission realization rows.
    Spon,
    /// Quasi-unitary cases.
    Quasi,
    /// Named channels vs their system⊗environment dilations.
    Dilation,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Primes,
        Suite::Phdm,
        Suite::Spon,
        Suite::Quasi,
        Suite::Dilation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Primes => "primes",
            Suite::Phdm => "phdm",
            Suite::Spon => "spon",
            Suite::Quasi => "quasi",
            Suite::Dilation => "dilation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "primes" => Ok(Suite::Primes),
            "phdm" => Ok(Suite::Phdm),
            "spon" => Ok(Suite::Spon),
            "quasi" => Ok(Suite::Quasi),
            "dilation" => Ok(Suite::Dilation),
            other => Err(format!(
                "unknown suite '{other}' (expected primes|phdm|spon|quasi|dilation)"
            )),
        }
    }
}

/// Worst deviation observed for one verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub entry_id: String,
    pub max_abs_deviation: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub entries: Vec<EntryReport>,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&EntryReport> {
        self.entries
            .iter()
            .find(|e| e.max_abs_deviation > self.tolerance)
    }
}

/// Runs a suite with `trials` random draws per entry, all derived from
/// `seed`, judged against `tolerance`.
pub fn run_suite(suite: Suite, trials: usize, seed: u64, tolerance: f64) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let entries = match suite {
        Suite::Primes => {
            let mut worst = 0.0f64;
            for _ in 0..trials {
                let rho = random_density(3, &mut rng)?.into_qutrit()?;
                let u = random_unitary(3, &mut rng)?;
                let closed = transform_closed_form(&rho, &u)?;
                let oracle = transform_via_conjugation(&rho, &u)?;
                for (slot, expected) in QubitSlot::ALL.iter().zip(&oracle) {
                    worst = worst.max(closed.slot(*slot).matrix().max_abs_diff(expected));
                }
            }
            vec![EntryReport {
                entry_id: "closed-form-vs-conjugation".into(),
                max_abs_deviation: worst,
                trials,
                seed,
            }]
        }
        Suite::Phdm | Suite::Spon => {
            let class = if suite == Suite::Phdm {
                RealizationClass::PhaseDamping
            } else {
                RealizationClass::SpontaneousEmission
            };
            let mut entries = Vec::new();
            for entry in realization_catalog().iter().filter(|e| e.class == class) {
                let mut worst = 0.0f64;
                for _ in 0..trials {
                    let rho = random_sigma(entry.sigma, &mut rng)?;
                    let block = random_unitary(2, &mut rng)?;
                    worst = worst.max(verify_realization(entry, &rho, &block)?);
                }
                entries.push(EntryReport {
                    entry_id: entry.id.into(),
                    max_abs_deviation: worst,
                    trials,
                    seed,
                });
            }
            entries
        }
        Suite::Quasi => {
            let mut entries = Vec::new();
            for case in QuasiCase::ALL {
                let mut worst = 0.0f64;
                for _ in 0..trials {
                    let rho = random_sigma(case.sigma(), &mut rng)?;
                    let block = random_unitary(2, &mut rng)?;
                    for outcome in quasi_unitary(&rho, case, &block)? {
                        worst = worst.max(outcome.deviation);
                    }
                }
                entries.push(EntryReport {
                    entry_id: format!("quasi-{}", format!("{case:?}").to_lowercase()),
                    max_abs_deviation: worst,
                    trials,
                    seed,
                });
            }
            entries
        }
        Suite::Dilation => {
            type ChannelBuilder = fn(f64) -> Result<ChannelKind>;
            let mut entries = Vec::new();
            let builders: [(&str, ChannelBuilder); 2] = [
                ("dilation-phase", ChannelKind::phase_damping),
                ("dilation-amp", ChannelKind::amplitude_damping),
            ];
            for (label, make) in builders {
                let mut worst = 0.0f64;
                for _ in 0..trials {
                    let q = QubitState::new(random_density(2, &mut rng)?.into_matrix())?;
                    for k in 0..=10 {
                        let channel = make(k as f64 / 10.0)?;
                        let direct = apply_named_channel(&q, channel)?;
                        let dilated = dilation_oracle(&q, channel)?;
                        worst = worst.max(direct.matrix().max_abs_diff(dilated.matrix()));
                    }
                }
                entries.push(EntryReport {
                    entry_id: label.into(),
                    max_abs_deviation: worst,
                    trials,
                    seed,
                });
            }
            entries
        }
    };
    let max_abs_deviation = entries
        .iter()
        .map(|e| e.max_abs_deviation)
        .fold(0.0, f64::max);
    Ok(SuiteReport {
        suite: suite.name().into(),
        seed,
        trials,
        tolerance,
        entries,
        max_abs_deviation,
        pass: max_abs_deviation <= tolerance,
    })
}
