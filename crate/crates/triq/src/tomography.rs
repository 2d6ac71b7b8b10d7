//! Probability representation of qubit states and the entropies of the
//! induced coin distributions.
//!
//! A qubit state is identified with the probabilities (p₁, p₂, p₃) of
//! measuring +1/2 along x, y, z:
//!
//! ```text
//! ρ = [[p₃,              (p₁−½) − i(p₂−½)],
//!      [(p₁−½) + i(p₂−½), 1−p₃           ]]
//! ```
//!
//! which is positive exactly when Σⱼ(pⱼ−½)² ≤ ¼. Scaling the block entry u₁₁
//! of a spontaneous-emission realization induces p₃ → p₃|u₁₁|² and
//! (p₁−½)−i(p₂−½) → ((p₁−½)−i(p₂−½))·u₁₁*; the Shannon entropy of the
//! (p₃, 1−p₃) coin tracks that evolution.

use serde::{Deserialize, Serialize};

use crate::extract::QubitState;
use crate::mat::{CMat, C64};
use crate::{Error, Result};

/// Tomographic probabilities of a qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTriple {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl ProbabilityTriple {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        // tolerate (and clamp) roundoff-level excursions outside [0, 1]
        let clamp = |p: f64| -> Result<f64> {
            if p.is_nan() || !(-1e-10..=1.0 + 1e-10).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
            Ok(p.clamp(0.0, 1.0))
        };
        let t = Self {
            p1: clamp(p1)?,
            p2: clamp(p2)?,
            p3: clamp(p3)?,
        };
        let r = t.bloch_radius_sq();
        if r > 0.25 + 1e-10 {
            return Err(Error::BlochViolation(r));
        }
        Ok(t)
    }

    /// Σⱼ (pⱼ − ½)², at most ¼ for a valid state.
    pub fn bloch_radius_sq(&self) -> f64 {
        let dx = self.p1 - 0.5;
        let dy = self.p2 - 0.5;
        let dz = self.p3 - 0.5;
        dx * dx + dy * dy + dz * dz
    }
}

/// Reads (p₁, p₂, p₃) off a qubit density matrix.
pub fn to_probabilities(q: &QubitState) -> Result<ProbabilityTriple> {
    let m = q.matrix();
    let p3 = m.at(0, 0).re;
    let upper = m.at(0, 1);
    ProbabilityTriple::new(0.5 + upper.re, 0.5 - upper.im, p3)
}

/// Builds the density matrix of a probability triple.
pub fn from_probabilities(t: &ProbabilityTriple) -> Result<QubitState> {
    let off = C64::new(t.p1 - 0.5, -(t.p2 - 0.5));
    let m = CMat::from_vec(
        2,
        vec![
            C64::new(t.p3, 0.0),
            off,
            off.conj(),
            C64::new(1.0 - t.p3, 0.0),
        ],
    );
    QubitState::new(m)
}

/// Probability evolution induced by the u₁₁-scaled realization:
/// p₃ → p₃|u₁₁|², (p₁−½) − i(p₂−½) → ((p₁−½) − i(p₂−½))·u₁₁*.
pub fn probability_evolution(t: &ProbabilityTriple, u11: C64) -> Result<ProbabilityTriple> {
    if u11.norm() > 1.0 + 1e-12 {
        return Err(Error::ScalingTooLarge(u11.norm()));
    }
    let p3 = t.p3 * u11.norm_sqr();
    let coherence = C64::new(t.p1 - 0.5, -(t.p2 - 0.5)) * u11.conj();
    ProbabilityTriple::new(0.5 + coherence.re, 0.5 - coherence.im, p3)
}

/// Binary Shannon entropy of a (p, 1−p) coin, in nats, with 0·ln 0 = 0.
pub fn coin_shannon(p: f64) -> f64 {
    let mut s = 0.0;
    for x in [p, 1.0 - p] {
        if x > 1e-15 {
            s -= x * x.ln();
        }
    }
    s
}

/// Shannon entropy of the evolved coin (p₃|u₁₁|², 1 − p₃|u₁₁|²).
pub fn evolved_entropy(p3: f64, u11: C64) -> f64 {
    coin_shannon(p3 * u11.norm_sqr())
}

/// Tsallis entropy (1 − p^q − (1−p)^q)/(q − 1) of a (p, 1−p) coin.
/// The q → 1 limit is [`coin_shannon`].
pub fn coin_tsallis(p: f64, q_index: f64) -> Result<f64> {
    if q_index == 1.0 {
        return Err(Error::TsallisIndexOne);
    }
    Ok((1.0 - p.powf(q_index) - (1.0 - p).powf(q_index)) / (q_index - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qutrit::random_density;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn qubit(entries: &[f64]) -> QubitState {
        QubitState::new(CMat::from_real(2, entries)).unwrap()
    }

    #[test]
    fn reference_triples() {
        let mixed = to_probabilities(&qubit(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert_eq!(
            mixed,
            ProbabilityTriple {
                p1: 0.5,
                p2: 0.5,
                p3: 0.5
            }
        );
        let up = to_probabilities(&qubit(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(
            up,
            ProbabilityTriple {
                p1: 0.5,
                p2: 0.5,
                p3: 1.0
            }
        );
    }

    #[test]
    fn round_trip_is_identity() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..200 {
            let q = QubitState::new(random_density(2, &mut rng).unwrap().into_matrix()).unwrap();
            let t = to_probabilities(&q).unwrap();
            let back = from_probabilities(&t).unwrap();
            assert!(back.matrix().max_abs_diff(q.matrix()) <= 1e-14);
        }
    }

    #[test]
    fn constraint_violation_is_rejected() {
        assert!(matches!(
            ProbabilityTriple::new(1.0, 1.0, 1.0),
            Err(Error::BlochViolation(_))
        ));
        assert!(matches!(
            ProbabilityTriple::new(-0.1, 0.5, 0.5),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn evolution_reference_points() {
        let t = ProbabilityTriple::new(0.6, 0.4, 0.7).unwrap();
        let same = probability_evolution(&t, C64::new(1.0, 0.0)).unwrap();
        assert_eq!(same, t);
        let dead = probability_evolution(&t, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(
            dead,
            ProbabilityTriple {
                p1: 0.5,
                p2: 0.5,
                p3: 0.0
            }
        );
    }

    #[test]
    fn evolution_matches_the_u2_sigma4_realization() {
        use crate::channel::realization_catalog;
        use crate::qutrit::{random_sigma, random_unitary, SigmaKind};
        let entry = realization_catalog()
            .into_iter()
            .find(|e| e.id == "u2-sigma4-k5")
            .unwrap();
        let mut rng = StdRng::seed_from_u64(62);
        for _ in 0..50 {
            let rho = random_sigma(SigmaKind::S4, &mut rng).unwrap();
            let block = random_unitary(2, &mut rng).unwrap();
            let realized = QubitState::new(entry.predicted(rho.matrix(), &block)).unwrap();
            let expected = to_probabilities(&realized).unwrap();

            let base = QubitState::new(crate::extract::extract_matrix(
                rho.matrix(),
                crate::extract::QubitSlot::K5,
            ))
            .unwrap();
            let evolved =
                probability_evolution(&to_probabilities(&base).unwrap(), block.at(0, 0)).unwrap();
            assert!((evolved.p1 - expected.p1).abs() < 1e-12);
            assert!((evolved.p2 - expected.p2).abs() < 1e-12);
            assert!((evolved.p3 - expected.p3).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_reference_points() {
        assert!((coin_shannon(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(coin_shannon(0.0), 0.0);
        assert_eq!(coin_shannon(1.0), 0.0);
        let u = C64::new(0.5f64.sqrt(), 0.0);
        assert!((evolved_entropy(1.0, u) - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((evolved_entropy(0.9, u) - coin_shannon(0.45)).abs() < 1e-12);
    }

    #[test]
    fn evolved_entropy_is_concave_in_the_effective_probability() {
        // midpoint concavity on a grid of effective probabilities
        for i in 0..40 {
            for j in (i + 1)..40 {
                let a = i as f64 / 40.0;
                let b = j as f64 / 40.0;
                let mid = coin_shannon(0.5 * (a + b));
                let avg = 0.5 * (coin_shannon(a) + coin_shannon(b));
                assert!(mid + 1e-12 >= avg);
            }
        }
    }

    #[test]
    fn tsallis_reference_points() {
        assert!((coin_tsallis(0.5, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(coin_tsallis(0.0, 2.0).unwrap(), 0.0);
        assert_eq!(coin_tsallis(1.0, 2.0).unwrap(), 0.0);
        assert!(matches!(
            coin_tsallis(0.5, 1.0),
            Err(Error::TsallisIndexOne)
        ));
    }

    #[test]
    fn tsallis_limit_approaches_shannon() {
        let mut rng = StdRng::seed_from_u64(63);
        for _ in 0..50 {
            let p: f64 = rand::Rng::random_range(&mut rng, 0.01..0.99);
            for q in [1.0 + 1e-6, 1.0 - 1e-6] {
                let t = coin_tsallis(p, q).unwrap();
                assert!((t - coin_shannon(p)).abs() < 1e-5);
            }
        }
    }

    proptest! {
        #[test]
        fn prop_round_trip_identity(x in -0.5f64..0.5, y in -0.5f64..0.5, z in -0.5f64..0.5) {
            // scale into the Bloch ball, then round-trip
            let r = (x * x + y * y + z * z).sqrt();
            let scale = if r > 0.499 { 0.499 / r } else { 1.0 };
            let t = ProbabilityTriple::new(
                0.5 + x * scale,
                0.5 + y * scale,
                0.5 + z * scale,
            ).unwrap();
            let q = from_probabilities(&t).unwrap();
            let back = to_probabilities(&q).unwrap();
            prop_assert!((back.p1 - t.p1).abs() <= 1e-14);
            prop_assert!((back.p2 - t.p2).abs() <= 1e-14);
            prop_assert!((back.p3 - t.p3).abs() <= 1e-14);
        }

        #[test]
        fn prop_evolution_stays_in_the_ball(
            x in -0.5f64..0.5, y in -0.5f64..0.5, z in 0.0f64..1.0,
            mag in 0.0f64..1.0, phase in 0.0f64..std::f64::consts::TAU,
        ) {
            let r = (x * x + y * y + (z - 0.5) * (z - 0.5)).sqrt();
            let scale = if r > 0.499 { 0.499 / r } else { 1.0 };
            let t = ProbabilityTriple::new(
                0.5 + x * scale,
                0.5 + y * scale,
                0.5 + (z - 0.5) * scale,
            ).unwrap();
            let u11 = C64::new(0.0, phase).exp() * mag;
            let evolved = probability_evolution(&t, u11).unwrap();
            prop_assert!(evolved.bloch_radius_sq() <= 0.25 + 1e-10);
        }
    }
}
