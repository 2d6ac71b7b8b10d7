//! Scenario runner for the qutrit→qubit channel library.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use triq::channel::{
    iterate_channel, rotation_block, transform_closed_form, transform_via_conjugation, ChannelKind,
    UnitaryFamily,
};
use triq::dynamics::{dark_state, evolve, projector, ConfigKind, LevelConfig, RelaxationRates};
use triq::extract::{extract_all, slot_entropy, QubitSlot, QubitState};
use triq::io::{
    self, channel_csv, trajectory_csv, EntropySet, EvolutionOutput, ExtractOutput, MatrixJson,
    SimulateSummary, SlotOutput, TomographyOutput, TransformOutput,
};
use triq::mat::{CMat, C64};
use triq::qutrit::{make_sigma, sigma_from_block, QutritState, SigmaKind};
use triq::tomography::{
    coin_shannon, coin_tsallis, evolved_entropy, probability_evolution, to_probabilities,
};
use triq::verify::{run_suite, Suite, SuiteReport};

#[derive(Parser)]
#[command(
    name = "triq",
    version,
    about = "Qubit decompositions of a qutrit: channels, dynamics, tomography"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for stochastic scenarios.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl From<SigmaArg> for SigmaKind {
    fn from(v: SigmaArg) -> Self {
        match v {
            SigmaArg::S1 => SigmaKind::S1,
            SigmaArg::S2 => SigmaKind::S2,
            SigmaArg::S3 => SigmaKind::S3,
            SigmaArg::S4 => SigmaKind::S4,
            SigmaArg::S5 => SigmaKind::S5,
            SigmaArg::S6 => SigmaKind::S6,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    U1,
    U2,
    U3,
}

impl From<FamilyArg> for UnitaryFamily {
    fn from(v: FamilyArg) -> Self {
        match v {
            FamilyArg::U1 => UnitaryFamily::U1,
            FamilyArg::U2 => UnitaryFamily::U2,
            FamilyArg::U3 => UnitaryFamily::U3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Phase,
    Amp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigArg {
    Lambda,
    V,
    Xi,
}

impl From<ConfigArg> for ConfigKind {
    fn from(v: ConfigArg) -> Self {
        match v {
            ConfigArg::Lambda => ConfigKind::Lambda,
            ConfigArg::V => ConfigKind::V,
            ConfigArg::Xi => ConfigKind::Xi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Mixed,
    Dark,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the six qubits of a qutrit state, with probabilities and entropies.
    Extract {
        /// Qutrit state file (3x3) or, for --sigma s4..s6, a 2x2 block file.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Require the state to belong to a sigma family.
        #[arg(long, value_enum)]
        sigma: Option<SigmaArg>,
        /// Inline 2x2 block JSON for the s4..s6 families.
        #[arg(long)]
        block: Option<String>,
    },
    /// Transform a qutrit by a unitary and report the six qubits plus the
    /// closed-form-vs-oracle deviation.
    Transform {
        /// Qutrit state file (3x3).
        #[arg(long)]
        state: PathBuf,
        /// Require the state to belong to a sigma family.
        #[arg(long, value_enum)]
        sigma: Option<SigmaArg>,
        /// Full 3x3 unitary file.
        #[arg(long)]
        unitary: Option<PathBuf>,
        /// Reduced unitary family to assemble from --theta or --block.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Rotation angle for the family block.
        #[arg(long)]
        theta: Option<f64>,
        /// Inline 2x2 unitary block JSON for the family.
        #[arg(long)]
        block: Option<String>,
    },
    /// Iterate a named channel and emit the trajectory.
    Channel {
        #[arg(long, value_enum)]
        kind: ChannelArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: usize,
        /// Initial qubit file (2x2); defaults to the |+> state.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Run a verification suite; exit code 0 iff every deviation is within
    /// tolerance.
    Verify {
        /// primes | phdm | spon | quasi | dilation | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Integrate the three-level dissipative dynamics and emit the trajectory
    /// CSV plus a convergence summary.
    Simulate {
        #[arg(long, value_enum)]
        config: ConfigArg,
        #[arg(long, default_value_t = 0.0)]
        omega1: f64,
        #[arg(long, default_value_t = 0.0)]
        omega2: f64,
        #[arg(long, default_value_t = 1.0)]
        rabi1: f64,
        #[arg(long, default_value_t = 1.0)]
        rabi2: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma31: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma32: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma1: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma2: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 200.0)]
        t_end: f64,
        /// Record every N-th step.
        #[arg(long, default_value_t = 10)]
        sample_every: usize,
        /// Initial state: the maximally mixed state or the dark state.
        #[arg(long, value_enum, default_value_t = InitArg::Mixed)]
        init: InitArg,
        /// Initial qutrit state file (overrides --init).
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Probability representation of a qubit state and its entropies.
    Tomography {
        /// Qubit state file (2x2).
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        u11_re: Option<f64>,
        #[arg(long)]
        u11_im: Option<f64>,
        /// Tsallis index.
        #[arg(long, default_value_t = 2.0)]
        q_index: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Extract {
            state,
            sigma,
            block,
        } => {
            let rho = load_qutrit(state.as_deref(), sigma.map(Into::into), block.as_deref())?;
            let output = extract_output(&rho)?;
            emit(&io::to_json_pretty(&output), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            state,
            sigma,
            unitary,
            family,
            theta,
            block,
        } => {
            let m = io::read_matrix(&state)?;
            let rho = match sigma {
                Some(kind) => make_sigma(kind.into(), m)?,
                None => QutritState::new(m)?,
            };
            let u = match (unitary, family) {
                (Some(path), None) => io::read_matrix(&path)?,
                (None, Some(fam)) => {
                    let block = match (theta, block) {
                        (Some(theta), None) => rotation_block(theta),
                        (None, Some(text)) => io::parse_matrix(&text)?,
                        _ => return Err("give exactly one of --theta or --block".into()),
                    };
                    UnitaryFamily::from(fam).assemble(&block)?
                }
                _ => return Err("give exactly one of --unitary or --family".into()),
            };
            let transformed = transform_closed_form(&rho, &u)?;
            let oracle = transform_via_conjugation(&rho, &u)?;
            let mut deviation = 0.0f64;
            let mut qubits = Vec::new();
            for (slot, expected) in QubitSlot::ALL.iter().zip(&oracle) {
                let q = transformed.slot(*slot);
                deviation = deviation.max(q.matrix().max_abs_diff(expected));
                qubits.push(slot_output(*slot, q)?);
            }
            let output = TransformOutput {
                input: MatrixJson::from_mat(rho.matrix()),
                unitary: MatrixJson::from_mat(&u),
                qubits,
                oracle_max_deviation: deviation,
            };
            emit(&io::to_json_pretty(&output), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Channel { kind, p, n, state } => {
            let channel = match kind {
                ChannelArg::Phase => ChannelKind::phase_damping(p)?,
                ChannelArg::Amp => ChannelKind::amplitude_damping(p)?,
            };
            let q = match state {
                Some(path) => QubitState::new(io::read_matrix(&path)?)?,
                None => QubitState::new(CMat::from_real(2, &[0.5, 0.5, 0.5, 0.5]))?,
            };
            let states = iterate_channel(&q, channel, n)?;
            match cli.format {
                Format::Csv => emit(&channel_csv(&states), out)?,
                Format::Json => {
                    let rows: Vec<serde_json::Value> = states
                        .iter()
                        .enumerate()
                        .map(|(step, q)| {
                            let m = q.matrix();
                            serde_json::json!({
                                "step": step,
                                "rho11": m.at(0, 0).re,
                                "re_rho12": m.at(0, 1).re,
                                "im_rho12": m.at(0, 1).im,
                                "rho22": m.at(1, 1).re,
                                "purity": q.purity(),
                                "entropy": slot_entropy(q),
                            })
                        })
                        .collect();
                    emit(&io::to_json_pretty(&rows), out)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            trials,
            tolerance,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut reports: Vec<SuiteReport> = Vec::new();
            for s in suites {
                reports.push(run_suite(s, trials, cli.seed, tolerance)?);
            }
            let pass = reports.iter().all(|r| r.pass);
            let text = if reports.len() == 1 {
                io::to_json_pretty(&reports[0])
            } else {
                io::to_json_pretty(&reports)
            };
            emit(&text, out)?;
            if !pass {
                for r in &reports {
                    if let Some(entry) = r.first_failure() {
                        eprintln!(
                            "verification failed: suite {} entry {} deviation {:.3e} > tolerance {:.3e}",
                            r.suite, entry.entry_id, entry.max_abs_deviation, r.tolerance
                        );
                        break;
                    }
                }
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            config,
            omega1,
            omega2,
            rabi1,
            rabi2,
            gamma31,
            gamma32,
            gamma1,
            gamma2,
            dt,
            t_end,
            sample_every,
            init,
            state,
        } => {
            let kind = ConfigKind::from(config);
            let cfg = LevelConfig::new(kind, omega1, omega2, rabi1, rabi2);
            let rates = RelaxationRates::new(gamma31, gamma32, gamma1, gamma2)?;
            let rho0 = match (state, init) {
                (Some(path), _) => QutritState::new(io::read_matrix(&path)?)?,
                (None, InitArg::Mixed) => QutritState::maximally_mixed(),
                (None, InitArg::Dark) => QutritState::new(projector(&dark_state(&cfg)?))?,
            };
            let trajectory = evolve(&rho0, &cfg, &rates, dt, t_end, sample_every)?;
            let target = kind.target_sigma();
            let summary = SimulateSummary {
                config: format!("{kind:?}").to_lowercase(),
                target_sigma: target.to_string().to_lowercase(),
                t_end,
                dt,
                samples: trajectory.times.len(),
                final_residual: target.residual(trajectory.final_state()),
                max_trace_drift: trajectory.max_trace_drift,
                min_eigenvalue: trajectory.min_eigenvalue,
                positivity_warnings: trajectory.positivity_warnings.len(),
            };
            let csv = trajectory_csv(&trajectory);
            match out {
                Some(path) => {
                    fs::write(path, csv)?;
                    println!("{}", io::to_json_pretty(&summary));
                }
                None => {
                    print!("{csv}");
                    eprintln!("{}", io::to_json_pretty(&summary));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tomography {
            state,
            u11_re,
            u11_im,
            q_index,
        } => {
            let q = QubitState::new(io::read_matrix(&state)?)?;
            let probabilities = to_probabilities(&q)?;
            let shannon = EntropySet {
                p1: coin_shannon(probabilities.p1),
                p2: coin_shannon(probabilities.p2),
                p3: coin_shannon(probabilities.p3),
            };
            let tsallis = EntropySet {
                p1: coin_tsallis(probabilities.p1, q_index)?,
                p2: coin_tsallis(probabilities.p2, q_index)?,
                p3: coin_tsallis(probabilities.p3, q_index)?,
            };
            let evolution = match (u11_re, u11_im) {
                (None, None) => None,
                (re, im) => {
                    let u11 = C64::new(re.unwrap_or(0.0), im.unwrap_or(0.0));
                    let evolved = probability_evolution(&probabilities, u11)?;
                    Some(EvolutionOutput {
                        u11: [u11.re, u11.im],
                        probabilities: evolved,
                        entropy: evolved_entropy(probabilities.p3, u11),
                    })
                }
            };
            let output = TomographyOutput {
                probabilities,
                shannon,
                tsallis_q: q_index,
                tsallis,
                evolution,
            };
            emit(&io::to_json_pretty(&output), out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_qutrit(
    state: Option<&Path>,
    sigma: Option<SigmaKind>,
    block: Option<&str>,
) -> Result<QutritState, Box<dyn std::error::Error>> {
    match (state, sigma, block) {
        (Some(path), None, None) => Ok(QutritState::new(io::read_matrix(path)?)?),
        (Some(path), Some(kind), None) => {
            let m = io::read_matrix(path)?;
            if m.dim() == 2 {
                Ok(sigma_from_block(kind, &m)?)
            } else {
                Ok(make_sigma(kind, m)?)
            }
        }
        (None, Some(kind), Some(text)) => Ok(sigma_from_block(kind, &io::parse_matrix(text)?)?),
        _ => Err("give --state FILE, or --sigma KIND with --state or --block".into()),
    }
}

fn slot_output(slot: QubitSlot, q: &QubitState) -> triq::Result<SlotOutput> {
    Ok(SlotOutput {
        slot: slot.index(),
        rho: MatrixJson::from_mat(q.matrix()),
        probabilities: to_probabilities(q)?,
        entropy: slot_entropy(q),
        offdiagonal_zero: q.matrix().at(0, 1).norm() < 1e-12,
    })
}

fn extract_output(rho: &QutritState) -> triq::Result<ExtractOutput> {
    let mut slots = Vec::with_capacity(6);
    for (slot, q) in QubitSlot::ALL.iter().zip(extract_all(rho)?.iter()) {
        slots.push(slot_output(*slot, q)?);
    }
    Ok(ExtractOutput {
        input: MatrixJson::from_mat(rho.matrix()),
        slots,
    })
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, ensure_newline(text)),
        None => {
            print!("{}", ensure_newline(text));
            Ok(())
        }
    }
}

fn ensure_newline(text: &str) -> String {
    if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    }
}
