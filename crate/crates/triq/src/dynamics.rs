//! Three-level dissipative dynamics: dρ/dt = i[ρ, H] + R(ρ).
//!
//! The relaxation matrix R drains one level's population into the other two
//! and damps the coherences:
//!
//! ```text
//! R(ρ) = [[ γ₃₁ρ₃₃, −γ′ρ₁₂, −γ₁ρ₁₃],
//!         [−γ′ρ₂₁,  γ₃₂ρ₃₃, −γ₂ρ₂₃],
//!         [−γ₁ρ₃₁, −γ₂ρ₃₂,  −γρ₃₃ ]]      γ = γ₃₁+γ₃₂, γ′ = γ₁+γ₂
//! ```
//!
//! written here for the Λ configuration, where level 3 drains. The V and Ξ
//! configurations permute which level drains (2 and 1 respectively), which is
//! what sends the dissipative fixed family to σ₄, σ₅, or σ₆.
//!
//! Integration is fixed-step classic Runge–Kutta in the rotating frame, with
//! Hermiticity restored by symmetrization after every step. Positivity is
//! monitored, not enforced: this relaxation matrix is phenomenological and
//! nothing guarantees complete positivity for arbitrary rates.

use crate::extract::{entropy_of_matrix, extract_matrix, QubitSlot};
use crate::mat::{self, CMat, C64};
use crate::qutrit::{QutritState, SigmaKind};
use crate::{Error, Result};

/// Coupling topology of the three-level system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigKind {
    Lambda,
    V,
    Xi,
}

impl ConfigKind {
    /// The level whose population the relaxation drains (1-based).
    pub fn drained_level(self) -> usize {
        match self {
            ConfigKind::Lambda => 3,
            ConfigKind::V => 2,
            ConfigKind::Xi => 1,
        }
    }

    /// The two surviving levels, ascending.
    pub fn surviving_levels(self) -> (usize, usize) {
        match self.drained_level() {
            3 => (1, 2),
            2 => (1, 3),
            _ => (2, 3),
        }
    }

    /// The σ family the dissipative dynamics settles into.
    pub fn target_sigma(self) -> SigmaKind {
        match self {
            ConfigKind::Lambda => SigmaKind::S4,
            ConfigKind::V => SigmaKind::S5,
            ConfigKind::Xi => SigmaKind::S6,
        }
    }
}

/// Level energies and couplings. Energies are rotating-frame detunings (zero
/// on resonance); couplings are real non-negative Rabi rates, phases absorbed.
#[derive(Clone, Copy, Debug)]
pub struct LevelConfig {
    pub kind: ConfigKind,
    pub omega1: f64,
    pub omega2: f64,
    pub rabi1: f64,
    pub rabi2: f64,
}

impl LevelConfig {
    pub fn new(kind: ConfigKind, omega1: f64, omega2: f64, rabi1: f64, rabi2: f64) -> Self {
        Self {
            kind,
            omega1,
            omega2,
            rabi1,
            rabi2,
        }
    }

    /// Resonant configuration with the couplings defaulting to the energies'
    /// magnitudes, the replacement the rotating frame suggests.
    pub fn resonant(kind: ConfigKind, rabi1: f64, rabi2: f64) -> Self {
        Self::new(kind, 0.0, 0.0, rabi1, rabi2)
    }
}

/// Spontaneous-emission and coherence-relaxation rates. The totals
/// γ = γ₃₁+γ₃₂ and γ′ = γ₁+γ₂ are always derived, never set.
#[derive(Clone, Copy, Debug)]
pub struct RelaxationRates {
    pub gamma31: f64,
    pub gamma32: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl RelaxationRates {
    pub fn new(gamma31: f64, gamma32: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        for &g in &[gamma31, gamma32, gamma1, gamma2] {
            if g < 0.0 || g.is_nan() {
                return Err(Error::NegativeRate(g));
            }
        }
        Ok(Self {
            gamma31,
            gamma32,
            gamma1,
            gamma2,
        })
    }

    pub fn zero() -> Self {
        Self {
            gamma31: 0.0,
            gamma32: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
        }
    }

    /// Total population-drain rate γ = γ₃₁ + γ₃₂.
    pub fn gamma(&self) -> f64 {
        self.gamma31 + self.gamma32
    }

    /// Total coherence-relaxation rate γ′ = γ₁ + γ₂.
    pub fn gamma_prime(&self) -> f64 {
        self.gamma1 + self.gamma2
    }
}

/// Hamiltonian with the two surviving levels carrying the energies and both
/// coupled to the drained level: for Λ,
/// `[[ω₁, 0, Ω₁],[0, ω₂, Ω₂],[Ω₁, Ω₂, 0]]`.
pub fn build_hamiltonian(cfg: &LevelConfig) -> CMat {
    let (a, b) = cfg.kind.surviving_levels();
    let d = cfg.kind.drained_level();
    let (a, b, d) = (a - 1, b - 1, d - 1);
    let mut h = CMat::zeros(3);
    h.set(a, a, C64::new(cfg.omega1, 0.0));
    h.set(b, b, C64::new(cfg.omega2, 0.0));
    h.set(a, d, C64::new(cfg.rabi1, 0.0));
    h.set(d, a, C64::new(cfg.rabi1, 0.0));
    h.set(b, d, C64::new(cfg.rabi2, 0.0));
    h.set(d, b, C64::new(cfg.rabi2, 0.0));
    h
}

/// The Λ relaxation matrix printed above, applied to an arbitrary 3×3 state.
pub fn relaxation_term(rho: &CMat, rates: &RelaxationRates) -> CMat {
    relaxation_in_config(ConfigKind::Lambda, rho, rates)
}

/// Relaxation matrix with the drained level chosen by the configuration.
pub fn relaxation_in_config(kind: ConfigKind, rho: &CMat, rates: &RelaxationRates) -> CMat {
    let (a, b) = kind.surviving_levels();
    let d = kind.drained_level();
    let (a, b, d) = (a - 1, b - 1, d - 1);
    let gp = rates.gamma_prime();
    let mut out = CMat::zeros(3);
    let pop = rho.at(d, d);
    let into_a = pop * rates.gamma31;
    let into_b = pop * rates.gamma32;
    out.set(a, a, into_a);
    out.set(b, b, into_b);
    // the drain is the negated sum of the refills, so the trace cancels
    // identically (gamma = gamma31 + gamma32 by construction)
    out.set(d, d, -(into_a + into_b));
    out.set(a, b, -rho.at(a, b) * gp);
    out.set(b, a, -rho.at(b, a) * gp);
    out.set(a, d, -rho.at(a, d) * rates.gamma1);
    out.set(d, a, -rho.at(d, a) * rates.gamma1);
    out.set(b, d, -rho.at(b, d) * rates.gamma2);
    out.set(d, b, -rho.at(d, b) * rates.gamma2);
    out
}

/// Integration record: sampled times and states, slot entropies, and the
/// drift/positivity diagnostics accumulated along the way.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CMat>,
    /// Slot entropies S₁..S₆ for each sampled state.
    pub slot_entropies: Vec<[f64; 6]>,
    /// Largest |tr ρ − 1| seen at sampled points.
    pub max_trace_drift: f64,
    /// Most negative eigenvalue seen at sampled points.
    pub min_eigenvalue: f64,
    /// Sampled times at which the minimum eigenvalue dipped below −1e-6.
    pub positivity_warnings: Vec<f64>,
}

impl Trajectory {
    pub fn final_state(&self) -> &CMat {
        self.states.last().expect("trajectory is never empty")
    }
}

fn rhs(h: &CMat, rho: &CMat, kind: ConfigKind, rates: &RelaxationRates) -> CMat {
    // i[ρ, H] + R(ρ)
    let comm = rho.mul(h).sub(&h.mul(rho)).scale(C64::new(0.0, 1.0));
    comm.add(&relaxation_in_config(kind, rho, rates))
}

/// Classic fixed-step fourth-order integration of dρ/dt = i\[ρ,H\] + R(ρ).
///
/// Requires `dt · max(γ, ‖H‖_F) ≤ 0.05`. Every `sample_every`-th state is
/// recorded (the final state always is).
pub fn evolve(
    rho0: &QutritState,
    cfg: &LevelConfig,
    rates: &RelaxationRates,
    dt: f64,
    t_end: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    let h = build_hamiltonian(cfg);
    let stiffness = dt * rates.gamma().max(h.frobenius_norm());
    if dt.is_nan() || dt <= 0.0 || stiffness > 0.05 {
        return Err(Error::StepTooLarge(stiffness));
    }
    let steps = (t_end / dt).ceil() as usize;
    let sample_every = sample_every.max(1);

    let mut rho = rho0.matrix().clone();
    let mut trajectory = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        slot_entropies: Vec::new(),
        max_trace_drift: 0.0,
        min_eigenvalue: f64::INFINITY,
        positivity_warnings: Vec::new(),
    };
    record(&mut trajectory, 0.0, &rho)?;

    let half = C64::new(dt / 2.0, 0.0);
    let sixth = C64::new(dt / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);
    for step in 1..=steps {
        let k1 = rhs(&h, &rho, cfg.kind, rates);
        let k2 = rhs(&h, &rho.add(&k1.scale(half)), cfg.kind, rates);
        let k3 = rhs(&h, &rho.add(&k2.scale(half)), cfg.kind, rates);
        let k4 = rhs(&h, &rho.add(&k3.scale(C64::new(dt, 0.0))), cfg.kind, rates);
        let increment = k1
            .add(&k2.scale(two))
            .add(&k3.scale(two))
            .add(&k4)
            .scale(sixth);
        rho = rho.add(&increment).hermitian_part();
        if step % sample_every == 0 || step == steps {
            record(&mut trajectory, step as f64 * dt, &rho)?;
        }
    }
    Ok(trajectory)
}

fn record(trajectory: &mut Trajectory, t: f64, rho: &CMat) -> Result<()> {
    let drift = (rho.trace().re - 1.0).abs();
    trajectory.max_trace_drift = trajectory.max_trace_drift.max(drift);
    let eigs = mat::eigenvalues_hermitian(rho)?;
    let min = eigs.first().copied().unwrap_or(0.0);
    trajectory.min_eigenvalue = trajectory.min_eigenvalue.min(min);
    if min < -1e-6 {
        trajectory.positivity_warnings.push(t);
    }
    let mut entropies = [0.0f64; 6];
    for (i, slot) in QubitSlot::ALL.iter().enumerate() {
        entropies[i] = entropy_of_matrix(&extract_matrix(rho, *slot));
    }
    trajectory.times.push(t);
    trajectory.states.push(rho.clone());
    trajectory.slot_entropies.push(entropies);
    Ok(())
}

/// Normalized dark state of a configuration: amplitude Ω₂ on the first
/// surviving level, −Ω₁ on the second, zero on the drained level. The
/// coupling part of H maps it to zero on the drained component, so the
/// drained level is never populated.
pub fn dark_state(cfg: &LevelConfig) -> Result<[C64; 3]> {
    let norm_sq = cfg.rabi1 * cfg.rabi1 + cfg.rabi2 * cfg.rabi2;
    if norm_sq == 0.0 {
        return Err(Error::ZeroCouplings);
    }
    let norm = norm_sq.sqrt();
    let (a, b) = cfg.kind.surviving_levels();
    let mut v = [C64::new(0.0, 0.0); 3];
    v[a - 1] = C64::new(cfg.rabi2 / norm, 0.0);
    v[b - 1] = C64::new(-cfg.rabi1 / norm, 0.0);
    Ok(v)
}

/// Projector |v⟩⟨v| of a state vector.
pub fn projector(v: &[C64; 3]) -> CMat {
    let mut m = CMat::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            m.set(i, j, v[i] * v[j].conj());
        }
    }
    m
}

/// Result of driving the dissipative dynamics into a σ family.
#[derive(Clone, Debug)]
pub struct PreparedSigma {
    /// The σ-family state after clamping the forced zeros.
    pub state: QutritState,
    /// Residual max |forced entry| before the clamp.
    pub residual: f64,
    /// Time at which the residual first dropped below the target.
    pub converged_at: f64,
    pub trajectory: Trajectory,
}

/// Runs [`evolve`] from `rho0` until the configuration's σ-family residual
/// falls below `residual_target`, then clamps the forced zeros and
/// re-validates. Non-convergence by `t_end` is an error carrying the final
/// residual.
pub fn prepare_sigma(
    cfg: &LevelConfig,
    rates: &RelaxationRates,
    rho0: &QutritState,
    dt: f64,
    t_end: f64,
    residual_target: f64,
) -> Result<PreparedSigma> {
    let target = cfg.kind.target_sigma();
    let trajectory = evolve(rho0, cfg, rates, dt, t_end, 10)?;
    let mut converged_at = None;
    for (t, state) in trajectory.times.iter().zip(&trajectory.states) {
        if target.residual(state) < residual_target {
            converged_at = Some(*t);
            break;
        }
    }
    let final_state = trajectory.final_state();
    let residual = target.residual(final_state);
    let converged_at = match converged_at {
        Some(t) => t,
        None => {
            return Err(Error::NotConverged {
                residual,
                target: residual_target,
                t_end,
            })
        }
    };
    // clamp the forced zeros and renormalize the trace
    let mut clamped = final_state.clone();
    for &(r, c) in target.forced_zeros().iter() {
        clamped.set(r - 1, c - 1, C64::new(0.0, 0.0));
        clamped.set(c - 1, r - 1, C64::new(0.0, 0.0));
    }
    let tr = clamped.trace().re;
    let clamped = clamped.scale(C64::new(1.0 / tr, 0.0)).hermitian_part();
    Ok(PreparedSigma {
        state: QutritState::new(clamped)?,
        residual,
        converged_at,
        trajectory,
    })
}
