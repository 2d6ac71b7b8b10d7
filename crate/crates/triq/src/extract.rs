//! The six qubit density matrices carried by a qutrit state.
//!
//! Each slot k reduces the three levels to two by folding one population into
//! another while keeping one coherence:
//!
//! ```text
//! ρ₁ = [[1−ρ₃₃, ρ₁₃],[ρ₃₁, ρ₃₃]]   ρ₂ = [[1−ρ₂₂, ρ₁₂],[ρ₂₁, ρ₂₂]]
//! ρ₃ = [[ρ₁₁, ρ₁₃],[ρ₃₁, 1−ρ₁₁]]   ρ₄ = [[ρ₂₂, ρ₂₃],[ρ₃₂, 1−ρ₂₂]]
//! ρ₅ = [[ρ₁₁, ρ₁₂],[ρ₂₁, 1−ρ₁₁]]   ρ₆ = [[1−ρ₃₃, ρ₂₃],[ρ₃₂, ρ₃₃]]
//! ```
//!
//! The same six matrices arise as partial traces of 4×4 embeddings of the
//! qutrit; [`slot_embedding`] records which embedding and traced factor
//! reproduces each slot, and [`partial_trace_oracle`] is the independent
//! route used to cross-check the direct formulas.

use crate::mat::{self, CMat, Factor, C64};
use crate::qutrit::{self, validate_density, QutritState, TwoQubitEmbedding};
use crate::{tol, Error, Result};

/// One of the six qubit reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitSlot {
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
}

impl QubitSlot {
    pub const ALL: [QubitSlot; 6] = [
        QubitSlot::K1,
        QubitSlot::K2,
        QubitSlot::K3,
        QubitSlot::K4,
        QubitSlot::K5,
        QubitSlot::K6,
    ];

    pub fn index(self) -> usize {
        match self {
            QubitSlot::K1 => 1,
            QubitSlot::K2 => 2,
            QubitSlot::K3 => 3,
            QubitSlot::K4 => 4,
            QubitSlot::K5 => 5,
            QubitSlot::K6 => 6,
        }
    }

    pub fn from_index(k: usize) -> Option<Self> {
        Self::ALL.get(k.checked_sub(1)?).copied()
    }
}

/// Validated 2×2 density matrix.
#[derive(Clone, Debug)]
pub struct QubitState {
    m: CMat,
}

impl QubitState {
    pub fn new(m: CMat) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: m.dim(),
            });
        }
        validate_density(&m)?;
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    /// Population of the second basis state (the "excited" diagonal entry).
    pub fn excited_population(&self) -> f64 {
        self.m.at(1, 1).re
    }

    pub fn purity(&self) -> f64 {
        self.m.mul(&self.m).trace().re
    }
}

/// Slot-k extraction as a raw 2×2 matrix, no validation.
pub fn extract_matrix(rho: &CMat, slot: QubitSlot) -> CMat {
    let r = |i: usize, j: usize| rho.at(i - 1, j - 1);
    let one = C64::new(1.0, 0.0);
    let (a, b, c, d) = match slot {
        QubitSlot::K1 => (one - r(3, 3), r(1, 3), r(3, 1), r(3, 3)),
        QubitSlot::K2 => (one - r(2, 2), r(1, 2), r(2, 1), r(2, 2)),
        QubitSlot::K3 => (r(1, 1), r(1, 3), r(3, 1), one - r(1, 1)),
        QubitSlot::K4 => (r(2, 2), r(2, 3), r(3, 2), one - r(2, 2)),
        QubitSlot::K5 => (r(1, 1), r(1, 2), r(2, 1), one - r(1, 1)),
        QubitSlot::K6 => (one - r(3, 3), r(2, 3), r(3, 2), r(3, 3)),
    };
    CMat::from_vec(2, vec![a, b, c, d])
}

/// The k-th qubit of a qutrit state. A PSD failure here means an invalid
/// input slipped past tolerance, so the violation is re-raised.
pub fn extract(rho: &QutritState, slot: QubitSlot) -> Result<QubitState> {
    QubitState::new(extract_matrix(rho.matrix(), slot))
}

/// All six qubits, in slot order.
pub fn extract_all(rho: &QutritState) -> Result<[QubitState; 6]> {
    Ok([
        extract(rho, QubitSlot::K1)?,
        extract(rho, QubitSlot::K2)?,
        extract(rho, QubitSlot::K3)?,
        extract(rho, QubitSlot::K4)?,
        extract(rho, QubitSlot::K5)?,
        extract(rho, QubitSlot::K6)?,
    ])
}

/// Which 4×4 embedding and traced factor reproduces a slot:
/// `(zero_index, factor to trace over)`.
///
/// Recovered by matching partial traces against the slot formulas; the
/// zero_index = 2 embedding only duplicates slots 5 and 6 with the factors
/// swapped, so it does not appear.
pub fn slot_embedding(slot: QubitSlot) -> (usize, Factor) {
    match slot {
        QubitSlot::K1 => (4, Factor::Second),
        QubitSlot::K2 => (4, Factor::First),
        QubitSlot::K3 => (1, Factor::Second),
        QubitSlot::K4 => (1, Factor::First),
        QubitSlot::K5 => (3, Factor::First),
        QubitSlot::K6 => (3, Factor::Second),
    }
}

/// Standard partial trace of an embedding over one qubit factor.
pub fn partial_trace_oracle(e: &TwoQubitEmbedding, over: Factor) -> Result<QubitState> {
    let reduced = mat::partial_trace(e.matrix(), 2, 2, over)?;
    QubitState::new(reduced.hermitian_part())
}

/// Slot-k qubit via the embedding route (embed, then partial-trace); the
/// independent oracle for [`extract`].
pub fn extract_via_embedding(rho: &QutritState, slot: QubitSlot) -> Result<QubitState> {
    let (zero_index, factor) = slot_embedding(slot);
    let e = qutrit::embed(rho, zero_index)?;
    partial_trace_oracle(&e, factor)
}

/// Von Neumann entropy −Σ λ ln λ of a qubit, natural log, with 0·ln 0 = 0.
pub fn slot_entropy(q: &QubitState) -> f64 {
    entropy_of_matrix(q.matrix())
}

pub(crate) fn entropy_of_matrix(m: &CMat) -> f64 {
    let a = m.at(0, 0).re;
    let d = m.at(1, 1).re;
    let half = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + m.at(0, 1).norm_sqr()).sqrt();
    let mut s = 0.0;
    for lambda in [half - r, half + r] {
        if lambda > tol::ENTROPY_CLAMP {
            s -= lambda * lambda.ln();
        }
    }
    s
}
