//! State files and CLI output payloads.
//!
//! Matrices travel as `{"dim": d, "rho": [[[re, im], ...], ...]}` with
//! row-major nesting; CSV uses '.' decimals and splits complex entries into
//! `_re`/`_im` columns.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::extract::QubitState;
use crate::mat::{CMat, C64};
use crate::tomography::ProbabilityTriple;
use crate::{Error, Result};

/// JSON form of a complex matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rho: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_mat(m: &CMat) -> Self {
        let dim = m.dim();
        let rho = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let z = m.at(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { dim, rho }
    }

    pub fn to_mat(&self) -> Result<CMat> {
        if !(1..=6).contains(&self.dim) {
            return Err(Error::StateFile(format!(
                "dim must be between 1 and 6, got {}",
                self.dim
            )));
        }
        if self.rho.len() != self.dim || self.rho.iter().any(|row| row.len() != self.dim) {
            return Err(Error::StateFile(format!(
                "rho must be a {0}x{0} nested array",
                self.dim
            )));
        }
        let mut m = CMat::zeros(self.dim);
        for (i, row) in self.rho.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                m.set(i, j, C64::new(re, im));
            }
        }
        Ok(m)
    }
}

/// Reads a matrix from a state-JSON file.
pub fn read_matrix(path: &Path) -> Result<CMat> {
    let text = fs::read_to_string(path)?;
    parse_matrix(&text)
}

/// Parses a matrix from state-JSON text.
pub fn parse_matrix(text: &str) -> Result<CMat> {
    let parsed: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
    parsed.to_mat()
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

/// One extracted qubit in CLI output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlotOutput {
    pub slot: usize,
    pub rho: MatrixJson,
    pub probabilities: ProbabilityTriple,
    pub entropy: f64,
    /// True when the slot's coherence is (numerically) forced to zero.
    pub offdiagonal_zero: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtractOutput {
    pub input: MatrixJson,
    pub slots: Vec<SlotOutput>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformOutput {
    pub input: MatrixJson,
    pub unitary: MatrixJson,
    pub qubits: Vec<SlotOutput>,
    /// Max entrywise gap between the closed form and conjugate-then-extract.
    pub oracle_max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropySet {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvolutionOutput {
    pub u11: [f64; 2],
    pub probabilities: ProbabilityTriple,
    pub entropy: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TomographyOutput {
    pub probabilities: ProbabilityTriple,
    pub shannon: EntropySet,
    pub tsallis_q: f64,
    pub tsallis: EntropySet,
    pub evolution: Option<EvolutionOutput>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulateSummary {
    pub config: String,
    pub target_sigma: String,
    pub t_end: f64,
    pub dt: f64,
    pub samples: usize,
    pub final_residual: f64,
    pub max_trace_drift: f64,
    pub min_eigenvalue: f64,
    pub positivity_warnings: usize,
}

/// CSV rows for an iterated channel:
/// `step,rho11,re_rho12,im_rho12,rho22,purity,entropy`.
pub fn channel_csv(states: &[QubitState]) -> String {
    let mut out = String::from("step,rho11,re_rho12,im_rho12,rho22,purity,entropy\n");
    for (step, q) in states.iter().enumerate() {
        let m = q.matrix();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            step,
            m.at(0, 0).re,
            m.at(0, 1).re,
            m.at(0, 1).im,
            m.at(1, 1).re,
            q.purity(),
            crate::extract::slot_entropy(q),
        ));
    }
    out
}

/// CSV rows for a dynamics trajectory: time, the nine matrix entries split
/// into re/im, then the six slot entropies.
pub fn trajectory_csv(trajectory: &Trajectory) -> String {
    let mut out = String::from("t");
    for i in 1..=3 {
        for j in 1..=3 {
            out.push_str(&format!(",rho{i}{j}_re,rho{i}{j}_im"));
        }
    }
    for k in 1..=6 {
        out.push_str(&format!(",s{k}"));
    }
    out.push('\n');
    for ((t, state), entropies) in trajectory
        .times
        .iter()
        .zip(&trajectory.states)
        .zip(&trajectory.slot_entropies)
    {
        out.push_str(&format!("{t}"));
        for i in 0..3 {
            for j in 0..3 {
                let z = state.at(i, j);
                out.push_str(&format!(",{},{}", z.re, z.im));
            }
        }
        for s in entropies {
            out.push_str(&format!(",{s}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qutrit::random_density;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn matrix_json_round_trip() {
        let mut rng = StdRng::seed_from_u64(71);
        let m = random_density(3, &mut rng).unwrap().into_matrix();
        let encoded = serde_json::to_string(&MatrixJson::from_mat(&m)).unwrap();
        let decoded = parse_matrix(&encoded).unwrap();
        assert!(decoded.max_abs_diff(&m) == 0.0);
    }

    #[test]
    fn malformed_state_is_a_state_file_error() {
        assert!(matches!(
            parse_matrix("{\"dim\": 3, \"rho\": [[[1.0, 0.0]]]}"),
            Err(Error::StateFile(_))
        ));
        assert!(matches!(parse_matrix("not json"), Err(Error::StateFile(_))));
        assert!(matches!(
            parse_matrix("{\"dim\": 100000, \"rho\": []}"),
            Err(Error::StateFile(_))
        ));
    }

    #[test]
    fn channel_csv_shape() {
        let q = QubitState::new(CMat::from_real(2, &[0.5, 0.5, 0.5, 0.5])).unwrap();
        let states = crate::channel::iterate_channel(
            &q,
            crate::channel::ChannelKind::phase_damping(0.5).unwrap(),
            3,
        )
        .unwrap();
        let csv = channel_csv(&states);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(
            lines[0],
            "step,rho11,re_rho12,im_rho12,rho22,purity,entropy"
        );
        assert!(lines[1].starts_with("0,0.5,0.5,0,"));
    }
}
