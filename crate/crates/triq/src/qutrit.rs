//! Qutrit density matrices, the σ families, two-qubit embeddings, and the
//! positive-partial-transpose separability check.

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::mat::{self, CMat, C64};
use crate::{tol, Error, Result};

/// Validated qutrit density matrix (3×3, Hermitian, unit trace, PSD).
#[derive(Clone, Debug)]
pub struct QutritState {
    m: CMat,
}

impl QutritState {
    /// Validates a 3×3 matrix as a density matrix, naming the violated
    /// invariant on failure.
    pub fn new(m: CMat) -> Result<Self> {
        if m.dim() != 3 {
            return Err(Error::WrongDimension {
                expected: 3,
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

    /// Maximally mixed qutrit, diag(1/3, 1/3, 1/3).
    pub fn maximally_mixed() -> Self {
        Self {
            m: CMat::identity(3).scale(C64::new(1.0 / 3.0, 0.0)),
        }
    }
}

/// Density-matrix invariants shared by every dimension.
pub fn validate_density(m: &CMat) -> Result<()> {
    let herr = m.hermiticity_error();
    if herr > tol::HERMITIAN {
        return Err(Error::NotHermitian(herr));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
        return Err(Error::InvalidTrace(tr.re));
    }
    let eigs = mat::eigenvalues_hermitian(&m.hermitian_part())?;
    let min = eigs.first().copied().unwrap_or(0.0);
    if min < -tol::PSD {
        return Err(Error::NotPsd(min));
    }
    Ok(())
}

/// The six constrained qutrit families.
///
/// S1–S3 force one off-diagonal pair to zero; S4–S6 force a whole row/column
/// (an unoccupied level) to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl fmt::Display for SigmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl SigmaKind {
    pub const ALL: [SigmaKind; 6] = [
        SigmaKind::S1,
        SigmaKind::S2,
        SigmaKind::S3,
        SigmaKind::S4,
        SigmaKind::S5,
        SigmaKind::S6,
    ];

    /// Upper-triangle positions (1-based) forced to zero; conjugates are
    /// implied by Hermiticity, diagonal zeros are listed explicitly.
    pub fn forced_zeros(self) -> &'static [(usize, usize)] {
        match self {
            SigmaKind::S1 => &[(2, 3)],
            SigmaKind::S2 => &[(1, 2)],
            SigmaKind::S3 => &[(1, 3)],
            SigmaKind::S4 => &[(1, 3), (2, 3), (3, 3)],
            SigmaKind::S5 => &[(1, 2), (2, 3), (2, 2)],
            SigmaKind::S6 => &[(1, 2), (1, 3), (1, 1)],
        }
    }

    /// For S4–S6, the level whose row and column vanish.
    pub fn empty_level(self) -> Option<usize> {
        match self {
            SigmaKind::S4 => Some(3),
            SigmaKind::S5 => Some(2),
            SigmaKind::S6 => Some(1),
            _ => None,
        }
    }

    /// The two levels that stay populated for S4–S6 (ascending, 1-based).
    pub fn occupied_levels(self) -> Option<(usize, usize)> {
        self.empty_level().map(|l| match l {
            3 => (1, 2),
            2 => (1, 3),
            _ => (2, 3),
        })
    }

    /// Largest modulus among the entries this family forces to zero.
    pub fn residual(self, m: &CMat) -> f64 {
        self.forced_zeros()
            .iter()
            .map(|&(r, c)| m.at(r - 1, c - 1).norm())
            .fold(0.0, f64::max)
    }

    pub fn contains(self, m: &CMat, tolerance: f64) -> bool {
        self.residual(m) <= tolerance
    }
}

/// Validates that `m` is a density matrix belonging to `kind`, rejecting any
/// nonzero forced entry.
pub fn make_sigma(kind: SigmaKind, m: CMat) -> Result<QutritState> {
    if m.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: m.dim(),
        });
    }
    for &(r, c) in kind.forced_zeros() {
        let v = m.at(r - 1, c - 1).norm();
        if v > tol::HERMITIAN {
            return Err(Error::SigmaConstraint {
                family: kind,
                row: r,
                col: c,
                value: v,
            });
        }
    }
    QutritState::new(m)
}

/// Builds an S4/S5/S6 state from a 2×2 density block placed on the family's
/// two occupied levels.
pub fn sigma_from_block(kind: SigmaKind, block: &CMat) -> Result<QutritState> {
    let (a, b) = kind.occupied_levels().ok_or(Error::FamilyMismatch(kind))?;
    if block.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: block.dim(),
        });
    }
    validate_density(block)?;
    let (a, b) = (a - 1, b - 1);
    let mut m = CMat::zeros(3);
    m.set(a, a, block.at(0, 0));
    m.set(a, b, block.at(0, 1));
    m.set(b, a, block.at(1, 0));
    m.set(b, b, block.at(1, 1));
    QutritState::new(m)
}

/// 4×4 two-qubit matrix with one designated zero row/column (1-based index).
#[derive(Clone, Debug)]
pub struct TwoQubitEmbedding {
    m: CMat,
    zero_index: usize,
}

impl TwoQubitEmbedding {
    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn zero_index(&self) -> usize {
        self.zero_index
    }
}

/// Places a qutrit into the 4×4 two-qubit space, leaving row and column
/// `zero_index` (1-based) identically zero. The qutrit entries fill the
/// complementary rows/columns in ascending order, so the embedded matrix has
/// a guaranteed zero eigenvalue and the same trace.
pub fn embed(rho: &QutritState, zero_index: usize) -> Result<TwoQubitEmbedding> {
    if !(1..=4).contains(&zero_index) {
        return Err(Error::BadZeroIndex(zero_index));
    }
    let keep: Vec<usize> = (0..4).filter(|&i| i != zero_index - 1).collect();
    let mut m = CMat::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            m.set(keep[i], keep[j], rho.matrix().at(i, j));
        }
    }
    Ok(TwoQubitEmbedding { m, zero_index })
}

/// Outcome of the positive-partial-transpose check on an embedding.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub min_pt_eigenvalue: f64,
    pub eigenvalues: Vec<f64>,
    pub pt_eigenvalues: Vec<f64>,
    /// Whether the spectra of ρ and ρ^PT agree within 1e-10.
    pub spectra_match: bool,
}

/// Peres–Horodecki test: partial-transposes the second factor in the
/// standard |00⟩,|01⟩,|10⟩,|11⟩ basis and inspects the spectrum.
pub fn is_ppt_separable(e: &TwoQubitEmbedding) -> Result<SeparabilityReport> {
    let pt = mat::partial_transpose_second(e.matrix())?;
    let eigenvalues = mat::eigenvalues_hermitian(&e.matrix().hermitian_part())?;
    let pt_eigenvalues = mat::eigenvalues_hermitian(&pt.hermitian_part())?;
    let min_pt = pt_eigenvalues.first().copied().unwrap_or(0.0);
    let spectra_match = eigenvalues
        .iter()
        .zip(&pt_eigenvalues)
        .all(|(a, b)| (a - b).abs() <= 1e-10);
    Ok(SeparabilityReport {
        separable: min_pt >= -tol::PSD,
        min_pt_eigenvalue: min_pt,
        eigenvalues,
        pt_eigenvalues,
        spectra_match,
    })
}

fn supported_dim(dim: usize) -> Result<()> {
    if matches!(dim, 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn ginibre(dim: usize, rng: &mut impl Rng) -> CMat {
    let data = (0..dim * dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    CMat::from_vec(dim, data)
}

/// Hilbert–Schmidt random density matrix: GG†/tr(GG†) with G complex
/// Gaussian. Deterministic given the caller-owned RNG state.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> Result<QutritStateAny> {
    supported_dim(dim)?;
    let g = ginibre(dim, rng);
    let gg = g.mul(&g.dagger());
    let tr = gg.trace().re;
    let m = gg.scale(C64::new(1.0 / tr, 0.0)).hermitian_part();
    Ok(QutritStateAny { m })
}

/// Haar-random unitary via QR of a complex Gaussian matrix, with the phases
/// of R's diagonal folded back into Q.
#[allow(clippy::needless_range_loop)]
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> Result<CMat> {
    supported_dim(dim)?;
    let g = ginibre(dim, rng);
    // Gram-Schmidt QR; R's diagonal phase normalizes each column.
    let mut q = CMat::zeros(dim);
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.at(i, j)).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let mut proj = C64::new(0.0, 0.0);
            for i in 0..dim {
                proj += q.at(i, k).conj() * cols[j][i];
            }
            for i in 0..dim {
                let v = cols[j][i] - proj * q.at(i, k);
                cols[j][i] = v;
            }
        }
        // r_jj = ||col||, phase taken from the pivot so diag(R) > 0
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let pivot = cols[j][j];
        let phase = if pivot.norm() > 0.0 {
            pivot / pivot.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            let v = cols[j][i] / (norm * phase);
            q.set(i, j, v);
        }
    }
    Ok(q)
}

/// Random member of a σ family via convex mixtures of two-level blocks
/// (spans the family's full linear span, so linear identities exercised on
/// these samples are exercised in full generality).
pub fn random_sigma<R: Rng>(kind: SigmaKind, rng: &mut R) -> Result<QutritState> {
    fn block_state<R: Rng>(levels: (usize, usize), rng: &mut R) -> CMat {
        let g = ginibre(2, rng);
        let gg = g.mul(&g.dagger());
        let tr = gg.trace().re;
        let q = gg.scale(C64::new(1.0 / tr, 0.0)).hermitian_part();
        let (a, b) = (levels.0 - 1, levels.1 - 1);
        let mut m = CMat::zeros(3);
        m.set(a, a, q.at(0, 0));
        m.set(a, b, q.at(0, 1));
        m.set(b, a, q.at(1, 0));
        m.set(b, b, q.at(1, 1));
        m
    }
    fn mix<R: Rng>(p: (usize, usize), q: (usize, usize), rng: &mut R) -> CMat {
        let w: f64 = rng.random_range(0.15..0.85);
        let a = block_state(p, rng);
        let b = block_state(q, rng);
        a.scale(C64::new(w, 0.0))
            .add(&b.scale(C64::new(1.0 - w, 0.0)))
    }
    let m = match kind {
        SigmaKind::S1 => mix((1, 2), (1, 3), rng),
        SigmaKind::S2 => mix((1, 3), (2, 3), rng),
        SigmaKind::S3 => mix((1, 2), (2, 3), rng),
        SigmaKind::S4 => block_state((1, 2), rng),
        SigmaKind::S5 => block_state((1, 3), rng),
        SigmaKind::S6 => block_state((2, 3), rng),
    };
    make_sigma(kind, m)
}

/// Validated density matrix of any supported dimension (returned by the
/// random samplers, which also serve dims 2, 4, and 6).
#[derive(Clone, Debug)]
pub struct QutritStateAny {
    m: CMat,
}

impl QutritStateAny {
    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_qutrit(self) -> Result<QutritState> {
        QutritState::new(self.m)
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }
}
