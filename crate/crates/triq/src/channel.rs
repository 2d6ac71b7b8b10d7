//! Nonunitary qubit maps induced by qutrit unitaries.
//!
//! The centerpiece is [`transform_closed_form`]: given a qutrit ρ and a 3×3
//! unitary U, the six transformed qubits are evaluated directly from
//! `N = ρU`, the minor table `M` of U, and `D = det U`, with
//!
//! ```text
//! T(x,y) = M₃ₓN₁ᵧ − M₂ₓN₂ᵧ + M₁ₓN₃ᵧ
//! ```
//!
//! as the only building block (T(x,y)/D is the (4−x, y) entry of U†ρU, so
//! the slot formulas assemble from sign/offset combinations of T). The
//! independent cross-check is conjugate-then-extract, which never touches
//! the minor table.
//!
//! On top of that sit the named channels (phase damping, amplitude damping)
//! with their system⊗environment dilation oracles, the catalog of closed-form
//! channel realizations on the σ families, the quasi-unitary transformations
//! with their population-weighted correction terms, and the small-angle
//! expansion for rotation blocks.

use std::fmt;

use crate::extract::{extract_matrix, QubitSlot, QubitState};
use crate::mat::{self, CMat, Factor, C64};
use crate::qutrit::{QutritState, SigmaKind};
use crate::{tol, Error, Result};

/// The three reduced qutrit unitaries: a 2×2 unitary block on two levels,
/// a 1 on the remaining level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitaryFamily {
    U1,
    U2,
    U3,
}

impl fmt::Display for UnitaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl UnitaryFamily {
    pub const ALL: [UnitaryFamily; 3] = [UnitaryFamily::U1, UnitaryFamily::U2, UnitaryFamily::U3];

    /// The two levels (1-based, ascending) the block acts on.
    pub fn levels(self) -> (usize, usize) {
        match self {
            UnitaryFamily::U1 => (1, 2),
            UnitaryFamily::U2 => (1, 3),
            UnitaryFamily::U3 => (2, 3),
        }
    }

    /// The level left untouched.
    pub fn fixed_level(self) -> usize {
        match self {
            UnitaryFamily::U1 => 3,
            UnitaryFamily::U2 => 2,
            UnitaryFamily::U3 => 1,
        }
    }

    /// Assembles the 3×3 unitary from a 2×2 unitary block.
    pub fn assemble(self, block: &CMat) -> Result<CMat> {
        if block.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: block.dim(),
            });
        }
        let berr = block.unitarity_error();
        if berr > tol::UNITARY {
            return Err(Error::NotUnitary(berr));
        }
        let (a, b) = self.levels();
        let (a, b) = (a - 1, b - 1);
        let mut u = CMat::zeros(3);
        u.set(
            self.fixed_level() - 1,
            self.fixed_level() - 1,
            C64::new(1.0, 0.0),
        );
        u.set(a, a, block.at(0, 0));
        u.set(a, b, block.at(0, 1));
        u.set(b, a, block.at(1, 0));
        u.set(b, b, block.at(1, 1));
        Ok(u)
    }
}

/// Real rotation block `[[cos θ, −sin θ],[sin θ, cos θ]]`.
pub fn rotation_block(theta: f64) -> CMat {
    let (s, c) = theta.sin_cos();
    CMat::from_real(2, &[c, -s, s, c])
}

/// The controlled two-qubit unitary `I ⊗ block` that acts on the second
/// qubit only. Dropping its fourth row and column and restoring a 1 on the
/// now-broken diagonal entry yields [`UnitaryFamily::U1`]; the other
/// families arise from the analogous placements.
pub fn controlled_second_qubit_unitary(block: &CMat) -> Result<CMat> {
    if block.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: block.dim(),
        });
    }
    let berr = block.unitarity_error();
    if berr > tol::UNITARY {
        return Err(Error::NotUnitary(berr));
    }
    Ok(CMat::identity(2).kron(block))
}

/// The six transformed qubits of a (ρ, U) pair, with the pair kept as
/// provenance.
#[derive(Clone, Debug)]
pub struct TransformedQubits {
    slots: [QubitState; 6],
    input: CMat,
    unitary: CMat,
}

impl TransformedQubits {
    pub fn slot(&self, slot: QubitSlot) -> &QubitState {
        &self.slots[slot.index() - 1]
    }

    pub fn slots(&self) -> &[QubitState; 6] {
        &self.slots
    }

    /// The qutrit the qubits were derived from.
    pub fn input(&self) -> &CMat {
        &self.input
    }

    /// The unitary that generated the transformation.
    pub fn unitary(&self) -> &CMat {
        &self.unitary
    }
}

/// Closed-form transformed qubits from the minor table of U, without ever
/// forming U†ρU.
pub fn transform_closed_form(rho: &QutritState, u: &CMat) -> Result<TransformedQubits> {
    if u.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: u.dim(),
        });
    }
    let uerr = u.unitarity_error();
    if uerr > tol::UNITARY {
        return Err(Error::NotUnitary(uerr));
    }
    let table = mat::minors(u)?;
    let d = table.det();
    if d.norm() < 1e-12 {
        return Err(Error::Singular(d.norm()));
    }
    let n = rho.matrix().mul(u);
    let t = |x: usize, y: usize| {
        table.at(3, x) * n.at(0, y - 1) - table.at(2, x) * n.at(1, y - 1)
            + table.at(1, x) * n.at(2, y - 1)
    };
    let over_d = |entries: [C64; 4]| CMat::from_vec(2, entries.iter().map(|z| z / d).collect());
    let slots = [
        over_d([d - t(1, 3), t(3, 3), t(1, 1), t(1, 3)]),
        over_d([d + t(2, 2), t(3, 2), -t(2, 1), -t(2, 2)]),
        over_d([t(3, 1), t(3, 3), t(1, 1), d - t(3, 1)]),
        over_d([-t(2, 2), -t(2, 3), t(1, 2), d + t(2, 2)]),
        over_d([t(3, 1), t(3, 2), -t(2, 1), d - t(3, 1)]),
        over_d([d - t(1, 3), -t(2, 3), t(1, 2), t(1, 3)]),
    ];
    let [s1, s2, s3, s4, s5, s6] = slots;
    Ok(TransformedQubits {
        slots: [
            QubitState::new(s1)?,
            QubitState::new(s2)?,
            QubitState::new(s3)?,
            QubitState::new(s4)?,
            QubitState::new(s5)?,
            QubitState::new(s6)?,
        ],
        input: rho.matrix().clone(),
        unitary: u.clone(),
    })
}

/// Oracle route for [`transform_closed_form`]: conjugate the qutrit by U and
/// read the six qubits off the result.
pub fn transform_via_conjugation(rho: &QutritState, u: &CMat) -> Result<[CMat; 6]> {
    let moved = mat::conjugate(rho.matrix(), u)?;
    Ok([
        extract_matrix(&moved, QubitSlot::K1),
        extract_matrix(&moved, QubitSlot::K2),
        extract_matrix(&moved, QubitSlot::K3),
        extract_matrix(&moved, QubitSlot::K4),
        extract_matrix(&moved, QubitSlot::K5),
        extract_matrix(&moved, QubitSlot::K6),
    ])
}

/// Named single-qubit channels with probability parameter p.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelKind {
    /// Off-diagonals × (1−p), populations untouched.
    PhaseDamping { p: f64 },
    /// Excited population × (1−p), off-diagonals × √(1−p).
    AmplitudeDamping { p: f64 },
}

impl ChannelKind {
    pub fn phase_damping(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(ChannelKind::PhaseDamping { p })
    }

    pub fn amplitude_damping(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(ChannelKind::AmplitudeDamping { p })
    }

    pub fn p(self) -> f64 {
        match self {
            ChannelKind::PhaseDamping { p } | ChannelKind::AmplitudeDamping { p } => p,
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// One application of a named channel.
pub fn apply_named_channel(q: &QubitState, channel: ChannelKind) -> Result<QubitState> {
    let m = q.matrix();
    let out = match channel {
        ChannelKind::PhaseDamping { p } => {
            let keep = C64::new(1.0 - p, 0.0);
            CMat::from_vec(
                2,
                vec![m.at(0, 0), m.at(0, 1) * keep, m.at(1, 0) * keep, m.at(1, 1)],
            )
        }
        ChannelKind::AmplitudeDamping { p } => {
            let keep = C64::new(1.0 - p, 0.0);
            let root = C64::new((1.0 - p).sqrt(), 0.0);
            let excited = m.at(1, 1) * keep;
            CMat::from_vec(
                2,
                vec![
                    C64::new(1.0, 0.0) - excited,
                    m.at(0, 1) * root,
                    m.at(1, 0) * root,
                    excited,
                ],
            )
        }
    };
    QubitState::new(out)
}

/// n-fold application, returning every intermediate state (n+1 entries,
/// initial state first).
pub fn iterate_channel(q: &QubitState, channel: ChannelKind, n: usize) -> Result<Vec<QubitState>> {
    let mut states = Vec::with_capacity(n + 1);
    states.push(q.clone());
    for _ in 0..n {
        let next = apply_named_channel(states.last().unwrap(), channel)?;
        states.push(next);
    }
    Ok(states)
}

/// Realizes a named channel through its explicit system⊗environment unitary:
/// build T, conjugate q ⊗ |0⟩⟨0|ₑ, trace out the environment.
///
/// Amplitude damping uses a two-level environment with
/// `T|0,0⟩ = |0,0⟩` and `T|1,0⟩ = √(1−p)|1,0⟩ + √p|0,1⟩`. Phase damping uses
/// a three-level environment that records which basis state the qubit is in
/// without changing it: `T|q,0⟩ = √(1−p)|q,0⟩ + √p|q,1+q⟩`.
pub fn dilation_oracle(q: &QubitState, channel: ChannelKind) -> Result<QubitState> {
    let p = channel.p();
    let (t, env_dim) = match channel {
        ChannelKind::AmplitudeDamping { .. } => {
            // basis |q,e⟩ at index 2q + e
            let c = (1.0 - p).sqrt();
            let s = p.sqrt();
            let mut t = CMat::zeros(4);
            t.set(0, 0, C64::new(1.0, 0.0)); // |00> -> |00>
            t.set(2, 2, C64::new(c, 0.0)); // |10> -> c|10> + s|01>
            t.set(1, 2, C64::new(s, 0.0));
            t.set(1, 1, C64::new(c, 0.0)); // completion: |01> -> c|01> - s|10>
            t.set(2, 1, C64::new(-s, 0.0));
            t.set(3, 3, C64::new(1.0, 0.0));
            (t, 2)
        }
        ChannelKind::PhaseDamping { .. } => {
            // basis |q,e⟩ at index 3q + e; environment branches to |1+q⟩
            let c = (1.0 - p).sqrt();
            let s = p.sqrt();
            let rot = |target: usize| {
                let mut v = CMat::identity(3);
                v.set(0, 0, C64::new(c, 0.0));
                v.set(target, 0, C64::new(s, 0.0));
                v.set(0, target, C64::new(-s, 0.0));
                v.set(target, target, C64::new(c, 0.0));
                v
            };
            let v0 = rot(1);
            let v1 = rot(2);
            let mut t = CMat::zeros(6);
            for e in 0..3 {
                for f in 0..3 {
                    t.set(e, f, v0.at(e, f));
                    t.set(3 + e, 3 + f, v1.at(e, f));
                }
            }
            (t, 3)
        }
    };
    debug_assert!(t.unitarity_error() < 1e-14);
    let mut env0 = CMat::zeros(env_dim);
    env0.set(0, 0, C64::new(1.0, 0.0));
    let joint = q.matrix().kron(&env0);
    let evolved = t.mul(&joint).mul(&t.dagger());
    let reduced = mat::partial_trace(&evolved, 2, env_dim, Factor::Second)?;
    QubitState::new(reduced.hermitian_part())
}

/// How a catalog entry relates the transformed qubit to the original state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationClass {
    /// Populations fixed, one coherence scaled by a block entry.
    PhaseDamping,
    /// One population scaled by |block entry|², coherences by the entry.
    SpontaneousEmission,
}

/// One closed-form channel realization: a (unitary family, σ family) pair and
/// the slot whose transformed qubit takes a damping form.
pub struct ChannelRealization {
    pub id: &'static str,
    pub family: UnitaryFamily,
    pub sigma: SigmaKind,
    pub slot: QubitSlot,
    pub class: RealizationClass,
    /// 1-based (row, col) of the block entry acting as the damping parameter.
    pub parameter_entry: (usize, usize),
    /// The slot of the *original* state whose qubit is being damped, when the
    /// predicted matrix is exactly a damped extraction. None when the damped
    /// matrix only shares the damping form.
    pub damped_base: Option<QubitSlot>,
    /// True when the damped base matrix falls outside the six extractions.
    pub nonstandard_form: bool,
    predict: fn(&CMat, &CMat) -> CMat,
}

impl ChannelRealization {
    /// Predicted transformed qubit for a σ-family member and a 2×2 block.
    pub fn predicted(&self, sigma: &CMat, block: &CMat) -> CMat {
        (self.predict)(sigma, block)
    }

    /// The block entry acting as the damping parameter together with its
    /// modulus. The entry is complex in general; a real block gives the
    /// standard real damping maps.
    pub fn damping_parameter(&self, block: &CMat) -> (C64, f64) {
        let (r, c) = self.parameter_entry;
        let value = block.at(r - 1, c - 1);
        (value, value.norm())
    }
}

fn two(a: C64, b: C64, c: C64, d: C64) -> CMat {
    CMat::from_vec(2, vec![a, b, c, d])
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

// 1-based entry access, so the predict bodies read like the formulas.
fn ent(m: &CMat, i: usize, j: usize) -> C64 {
    m.at(i - 1, j - 1)
}

/// The full catalog of closed-form realizations: twelve phase-damping rows
/// (six transformation/σ pairs, two slots each) and twelve
/// spontaneous-emission rows on the unoccupied-level families.
///
/// Every entry is validated against [`transform_closed_form`] by
/// [`verify_realization`]; the `u2-sigma1-k4` entry is the one whose damped
/// base matrix lies outside the six extractions (its printed diagonal in the
/// source material does not survive that validation; the form here does).
pub fn realization_catalog() -> Vec<ChannelRealization> {
    use QubitSlot::*;
    use RealizationClass::*;
    use SigmaKind::*;
    use UnitaryFamily::*;

    vec![
        ChannelRealization {
            id: "u1-sigma1-k1",
            family: U1,
            sigma: S1,
            slot: K1,
            class: PhaseDamping,
            parameter_entry: (1, 1),
            damped_base: Some(K1),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(2, 2),
                    b.at(0, 0).conj() * m.at(0, 2),
                    b.at(0, 0) * m.at(2, 0),
                    m.at(2, 2),
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma1-k6",
            family: U1,
            sigma: S1,
            slot: K6,
            class: PhaseDamping,
            parameter_entry: (1, 2),
            damped_base: Some(K1),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(2, 2),
                    b.at(0, 1).conj() * m.at(0, 2),
                    b.at(0, 1) * m.at(2, 0),
                    m.at(2, 2),
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma1-k2",
            family: U2,
            sigma: S1,
            slot: K2,
            class: PhaseDamping,
            parameter_entry: (1, 1),
            damped_base: Some(K2),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(1, 1),
                    b.at(0, 0).conj() * m.at(0, 1),
                    b.at(0, 0) * m.at(1, 0),
                    m.at(1, 1),
                )
            },
        },
        ChannelRealization {
            // the damped matrix here is [[ρ₂₂, ρ₂₁],[ρ₁₂, 1−ρ₂₂]], which is
            // not one of the six extractions
            id: "u2-sigma1-k4",
            family: U2,
            sigma: S1,
            slot: K4,
            class: PhaseDamping,
            parameter_entry: (1, 2),
            damped_base: None,
            nonstandard_form: true,
            predict: |m, b| {
                two(
                    m.at(1, 1),
                    b.at(0, 1) * m.at(1, 0),
                    b.at(0, 1).conj() * m.at(0, 1),
                    re(1.0) - m.at(1, 1),
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma2-k2",
            family: U2,
            sigma: S2,
            slot: K2,
            class: PhaseDamping,
            parameter_entry: (2, 1),
            damped_base: None,
            nonstandard_form: true,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(1, 1),
                    b.at(1, 0).conj() * m.at(2, 1),
                    b.at(1, 0) * m.at(1, 2),
                    m.at(1, 1),
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma2-k4",
            family: U2,
            sigma: S2,
            slot: K4,
            class: PhaseDamping,
            parameter_entry: (2, 2),
            damped_base: Some(K4),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    m.at(1, 1),
                    b.at(1, 1) * m.at(1, 2),
                    b.at(1, 1).conj() * m.at(2, 1),
                    re(1.0) - m.at(1, 1),
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma2-k3",
            family: U3,
            sigma: S2,
            slot: K3,
            class: PhaseDamping,
            parameter_entry: (2, 2),
            damped_base: Some(K3),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    m.at(0, 0),
                    b.at(1, 1) * m.at(0, 2),
                    b.at(1, 1).conj() * m.at(2, 0),
                    re(1.0) - m.at(0, 0),
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma2-k5",
            family: U3,
            sigma: S2,
            slot: K5,
            class: PhaseDamping,
            parameter_entry: (2, 1),
            damped_base: Some(K3),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    m.at(0, 0),
                    b.at(1, 0) * m.at(0, 2),
                    b.at(1, 0).conj() * m.at(2, 0),
                    re(1.0) - m.at(0, 0),
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma3-k1",
            family: U1,
            sigma: S3,
            slot: K1,
            class: PhaseDamping,
            parameter_entry: (2, 1),
            damped_base: Some(K6),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(2, 2),
                    b.at(1, 0).conj() * m.at(1, 2),
                    b.at(1, 0) * m.at(2, 1),
                    m.at(2, 2),
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma3-k6",
            family: U1,
            sigma: S3,
            slot: K6,
            class: PhaseDamping,
            parameter_entry: (2, 2),
            damped_base: Some(K6),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    re(1.0) - m.at(2, 2),
                    b.at(1, 1).conj() * m.at(1, 2),
                    b.at(1, 1) * m.at(2, 1),
                    m.at(2, 2),
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma3-k3",
            family: U3,
            sigma: S3,
            slot: K3,
            class: PhaseDamping,
            parameter_entry: (1, 2),
            damped_base: Some(K5),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    m.at(0, 0),
                    b.at(0, 1) * m.at(0, 1),
                    b.at(0, 1).conj() * m.at(1, 0),
                    re(1.0) - m.at(0, 0),
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma3-k5",
            family: U3,
            sigma: S3,
            slot: K5,
            class: PhaseDamping,
            parameter_entry: (1, 1),
            damped_base: Some(K5),
            nonstandard_form: false,
            predict: |m, b| {
                two(
                    m.at(0, 0),
                    b.at(0, 0) * m.at(0, 1),
                    b.at(0, 0).conj() * m.at(1, 0),
                    re(1.0) - m.at(0, 0),
                )
            },
        },
        // spontaneous-emission realizations on the unoccupied-level families
        ChannelRealization {
            id: "u2-sigma4-k5",
            family: U2,
            sigma: S4,
            slot: K5,
            class: SpontaneousEmission,
            parameter_entry: (1, 1),
            damped_base: Some(K5),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 1).norm_sqr());
                two(
                    ent(m, 1, 1) * w,
                    ent(m, 1, 2) * ent(b, 1, 1).conj(),
                    ent(m, 2, 1) * ent(b, 1, 1),
                    re(1.0) - ent(m, 1, 1) * w,
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma4-k6",
            family: U2,
            sigma: S4,
            slot: K6,
            class: SpontaneousEmission,
            parameter_entry: (1, 2),
            damped_base: None,
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 2).norm_sqr());
                two(
                    re(1.0) - ent(m, 1, 1) * w,
                    ent(m, 2, 1) * ent(b, 1, 2),
                    ent(m, 1, 2) * ent(b, 1, 2).conj(),
                    ent(m, 1, 1) * w,
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma4-k1",
            family: U3,
            sigma: S4,
            slot: K1,
            class: SpontaneousEmission,
            parameter_entry: (1, 2),
            damped_base: Some(K2),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 2).norm_sqr());
                two(
                    re(1.0) - ent(m, 2, 2) * w,
                    ent(m, 1, 2) * ent(b, 1, 2),
                    ent(m, 2, 1) * ent(b, 1, 2).conj(),
                    ent(m, 2, 2) * w,
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma4-k2",
            family: U3,
            sigma: S4,
            slot: K2,
            class: SpontaneousEmission,
            parameter_entry: (1, 1),
            damped_base: Some(K2),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 1).norm_sqr());
                two(
                    re(1.0) - ent(m, 2, 2) * w,
                    ent(m, 1, 2) * ent(b, 1, 1),
                    ent(m, 2, 1) * ent(b, 1, 1).conj(),
                    ent(m, 2, 2) * w,
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma5-k3",
            family: U1,
            sigma: S5,
            slot: K3,
            class: SpontaneousEmission,
            parameter_entry: (1, 1),
            damped_base: Some(K3),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 1).norm_sqr());
                two(
                    ent(m, 1, 1) * w,
                    ent(m, 1, 3) * ent(b, 1, 1).conj(),
                    ent(m, 3, 1) * ent(b, 1, 1),
                    re(1.0) - ent(m, 1, 1) * w,
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma5-k4",
            family: U1,
            sigma: S5,
            slot: K4,
            class: SpontaneousEmission,
            parameter_entry: (1, 2),
            damped_base: Some(K3),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 1, 2).norm_sqr());
                two(
                    ent(m, 1, 1) * w,
                    ent(m, 1, 3) * ent(b, 1, 2).conj(),
                    ent(m, 3, 1) * ent(b, 1, 2),
                    re(1.0) - ent(m, 1, 1) * w,
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma5-k1",
            family: U3,
            sigma: S5,
            slot: K1,
            class: SpontaneousEmission,
            parameter_entry: (2, 2),
            damped_base: Some(K1),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 2).norm_sqr());
                two(
                    re(1.0) - ent(m, 3, 3) * w,
                    ent(m, 1, 3) * ent(b, 2, 2),
                    ent(m, 3, 1) * ent(b, 2, 2).conj(),
                    ent(m, 3, 3) * w,
                )
            },
        },
        ChannelRealization {
            id: "u3-sigma5-k2",
            family: U3,
            sigma: S5,
            slot: K2,
            class: SpontaneousEmission,
            parameter_entry: (2, 1),
            damped_base: Some(K1),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 1).norm_sqr());
                two(
                    re(1.0) - ent(m, 3, 3) * w,
                    ent(m, 1, 3) * ent(b, 2, 1),
                    ent(m, 3, 1) * ent(b, 2, 1).conj(),
                    ent(m, 3, 3) * w,
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma6-k3",
            family: U1,
            sigma: S6,
            slot: K3,
            class: SpontaneousEmission,
            parameter_entry: (2, 1),
            damped_base: Some(K4),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 1).norm_sqr());
                two(
                    ent(m, 2, 2) * w,
                    ent(m, 2, 3) * ent(b, 2, 1).conj(),
                    ent(m, 3, 2) * ent(b, 2, 1),
                    re(1.0) - ent(m, 2, 2) * w,
                )
            },
        },
        ChannelRealization {
            id: "u1-sigma6-k4",
            family: U1,
            sigma: S6,
            slot: K4,
            class: SpontaneousEmission,
            parameter_entry: (2, 2),
            damped_base: Some(K4),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 2).norm_sqr());
                two(
                    ent(m, 2, 2) * w,
                    ent(m, 2, 3) * ent(b, 2, 2).conj(),
                    ent(m, 3, 2) * ent(b, 2, 2),
                    re(1.0) - ent(m, 2, 2) * w,
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma6-k5",
            family: U2,
            sigma: S6,
            slot: K5,
            class: SpontaneousEmission,
            parameter_entry: (2, 1),
            damped_base: None,
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 1).norm_sqr());
                two(
                    ent(m, 3, 3) * w,
                    ent(m, 3, 2) * ent(b, 2, 1).conj(),
                    ent(m, 2, 3) * ent(b, 2, 1),
                    re(1.0) - ent(m, 3, 3) * w,
                )
            },
        },
        ChannelRealization {
            id: "u2-sigma6-k6",
            family: U2,
            sigma: S6,
            slot: K6,
            class: SpontaneousEmission,
            parameter_entry: (2, 2),
            damped_base: Some(K6),
            nonstandard_form: false,
            predict: |m, b| {
                let w = re(ent(b, 2, 2).norm_sqr());
                two(
                    re(1.0) - ent(m, 3, 3) * w,
                    ent(m, 2, 3) * ent(b, 2, 2),
                    ent(m, 3, 2) * ent(b, 2, 2).conj(),
                    ent(m, 3, 3) * w,
                )
            },
        },
    ]
}

/// Max entrywise deviation between a catalog entry's prediction and the
/// closed-form transform, for one state and block.
pub fn verify_realization(
    entry: &ChannelRealization,
    rho: &QutritState,
    block: &CMat,
) -> Result<f64> {
    if !entry.sigma.contains(rho.matrix(), tol::HERMITIAN) {
        return Err(Error::FamilyMismatch(entry.sigma));
    }
    let u = entry.family.assemble(block)?;
    let transformed = transform_closed_form(rho, &u)?;
    let predicted = entry.predicted(rho.matrix(), block);
    Ok(transformed
        .slot(entry.slot)
        .matrix()
        .max_abs_diff(&predicted))
}

/// The quasi-unitary transformation cases: each pairs a reduced unitary
/// family with a σ family and predicts two transformed qubits as a unitary
/// conjugation by the block plus a population-weighted correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiCase {
    /// U₁ on σ₁ (slots 2 and 5, weight ρ₃₃).
    Base,
    /// U₁ on σ₃ (slots 2 and 5, weight ρ₃₃).
    A,
    /// U₂ on σ₁ (slots 1 and 3, weight ρ₂₂).
    B,
    /// U₂ on σ₂ (slots 1 and 3, weight ρ₂₂).
    C,
    /// U₃ on σ₂ (slots 4 and 6, weight ρ₁₁).
    D,
    /// U₃ on σ₃ (slots 4 and 6, weight ρ₁₁).
    E,
}

impl QuasiCase {
    pub const ALL: [QuasiCase; 6] = [
        QuasiCase::Base,
        QuasiCase::A,
        QuasiCase::B,
        QuasiCase::C,
        QuasiCase::D,
        QuasiCase::E,
    ];

    pub fn family(self) -> UnitaryFamily {
        match self {
            QuasiCase::Base | QuasiCase::A => UnitaryFamily::U1,
            QuasiCase::B | QuasiCase::C => UnitaryFamily::U2,
            QuasiCase::D | QuasiCase::E => UnitaryFamily::U3,
        }
    }

    pub fn sigma(self) -> SigmaKind {
        match self {
            QuasiCase::Base | QuasiCase::B => SigmaKind::S1,
            QuasiCase::C | QuasiCase::D => SigmaKind::S2,
            QuasiCase::A | QuasiCase::E => SigmaKind::S3,
        }
    }

    pub fn slots(self) -> [QubitSlot; 2] {
        match self.family() {
            UnitaryFamily::U1 => [QubitSlot::K2, QubitSlot::K5],
            UnitaryFamily::U2 => [QubitSlot::K1, QubitSlot::K3],
            UnitaryFamily::U3 => [QubitSlot::K4, QubitSlot::K6],
        }
    }

    /// 1-based diagonal index of the population that weights the correction.
    pub fn weight_level(self) -> usize {
        self.family().fixed_level()
    }
}

/// The correction matrix (without its population weight) for a slot.
///
/// Slots whose qubit form carries the folded population in the second
/// diagonal entry (1, 2, 6) take
/// `[[|u₁₂|², −u₁₁*u₁₂],[−u₁₁u₁₂*, −|u₁₂|²]]`;
/// slots carrying it first (3, 4, 5) take
/// `[[−|u₂₁|², −u₂₁*u₂₂],[−u₂₁u₂₂*, |u₂₁|²]]`.
/// Both follow from the closed form using only tr ρ = 1, so they are exact
/// for every qutrit state, not just the σ families.
pub fn quasi_correction(slot: QubitSlot, block: &CMat) -> CMat {
    let u11 = block.at(0, 0);
    let u12 = block.at(0, 1);
    let u21 = block.at(1, 0);
    let u22 = block.at(1, 1);
    match slot {
        QubitSlot::K1 | QubitSlot::K2 | QubitSlot::K6 => two(
            re(u12.norm_sqr()),
            -(u11.conj() * u12),
            -(u11 * u12.conj()),
            re(-u12.norm_sqr()),
        ),
        QubitSlot::K3 | QubitSlot::K4 | QubitSlot::K5 => two(
            re(-u21.norm_sqr()),
            -(u21.conj() * u22),
            -(u21 * u22.conj()),
            re(u21.norm_sqr()),
        ),
    }
}

/// Predicted and exact transformed qubit for one quasi-unitary slot.
#[derive(Clone, Debug)]
pub struct QuasiOutcome {
    pub slot: QubitSlot,
    pub predicted: CMat,
    pub exact: CMat,
    pub deviation: f64,
}

/// Evaluates a quasi-unitary case: for each of its two slots, predicts
/// `𝒰†ρₖ𝒰 + ρ_mm · correction` and cross-checks against the closed form.
pub fn quasi_unitary(
    rho: &QutritState,
    case: QuasiCase,
    block: &CMat,
) -> Result<Vec<QuasiOutcome>> {
    if !case.sigma().contains(rho.matrix(), tol::HERMITIAN) {
        return Err(Error::FamilyMismatch(case.sigma()));
    }
    let u = case.family().assemble(block)?;
    let transformed = transform_closed_form(rho, &u)?;
    let m = case.weight_level() - 1;
    let weight = rho.matrix().at(m, m);
    let mut outcomes = Vec::with_capacity(2);
    for slot in case.slots() {
        let original = extract_matrix(rho.matrix(), slot);
        let rotated = block.dagger().mul(&original).mul(block);
        let predicted = rotated.add(&quasi_correction(slot, block).scale(weight));
        let exact = transformed.slot(slot).matrix().clone();
        let deviation = exact.max_abs_diff(&predicted);
        outcomes.push(QuasiOutcome {
            slot,
            predicted,
            exact,
            deviation,
        });
    }
    Ok(outcomes)
}

/// Small-angle expansion of a rotation-block transform.
#[derive(Clone, Debug)]
pub struct SmallTimeExpansion {
    pub approx: CMat,
    pub exact: CMat,
    /// ‖exact − approx‖_max, which shrinks as O((ωt)²).
    pub max_error: f64,
}

/// Which family and weighting population pair with each slot in the
/// quasi-unitary tables.
fn slot_pairing(slot: QubitSlot) -> (UnitaryFamily, usize) {
    match slot {
        QubitSlot::K2 | QubitSlot::K5 => (UnitaryFamily::U1, 3),
        QubitSlot::K1 | QubitSlot::K3 => (UnitaryFamily::U2, 2),
        QubitSlot::K4 | QubitSlot::K6 => (UnitaryFamily::U3, 1),
    }
}

/// First-order expansion of the slot's transformed qubit under the rotation
/// block with angle ωt:
///
/// ```text
/// ρ'ⱼ = 𝒰†ρⱼ𝒰 ± ρ_kk ωt σ_x + O(t²)
/// ```
///
/// with k = 2 for j ∈ {1,3}, k = 3 for j ∈ {2,5}, k = 1 for j ∈ {4,6}, sign
/// `+` for j ∈ {1,2,6} and `−` for j ∈ {3,4,5} (the sign pattern is what the
/// first-order terms of [`quasi_correction`] dictate; without it the
/// remainder would be O(t), not O(t²)).
pub fn small_time_expansion(
    rho: &QutritState,
    slot: QubitSlot,
    omega: f64,
    t: f64,
) -> Result<SmallTimeExpansion> {
    let (family, weight_level) = slot_pairing(slot);
    let angle = omega * t;
    let block = rotation_block(angle);
    let u = family.assemble(&block)?;
    let exact = transform_closed_form(rho, &u)?.slot(slot).matrix().clone();

    let sign = match slot {
        QubitSlot::K1 | QubitSlot::K2 | QubitSlot::K6 => 1.0,
        _ => -1.0,
    };
    let weight = rho.matrix().at(weight_level - 1, weight_level - 1).re;
    let original = extract_matrix(rho.matrix(), slot);
    let rotated = block.dagger().mul(&original).mul(&block);
    let sigma_x = CMat::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
    let approx = rotated.add(&sigma_x.scale(re(sign * weight * angle)));
    let max_error = exact.max_abs_diff(&approx);
    Ok(SmallTimeExpansion {
        approx,
        exact,
        max_error,
    })
}
