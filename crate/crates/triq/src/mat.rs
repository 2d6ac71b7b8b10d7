//! Fixed-size complex matrix kernel.
//!
//! Everything here works on small dense matrices (2×2 up to 6×6) stored
//! row-major. There is deliberately no external linear-algebra dependency:
//! determinants and minors are cofactor expansions, and the Hermitian
//! eigensolver is a cyclic Jacobi iteration with complex rotations.

use num_complex::Complex64;

use crate::{tol, Error, Result};

pub type C64 = Complex64;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics unless `data.len() == dim²`.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must equal dim^2");
        Self { dim, data }
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must equal dim^2");
        Self {
            dim,
            data: data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMat {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMat {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, factor: C64) -> CMat {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMat) -> CMat {
        let (n, m) = (self.dim, other.dim);
        let mut out = CMat::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.at(i, j);
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.at(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise deviation from `self = self†`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_error(&self) -> f64 {
        self.dagger()
            .mul(self)
            .max_abs_diff(&CMat::identity(self.dim))
    }

    /// `(self + self†)/2`.
    pub fn hermitian_part(&self) -> CMat {
        self.add(&self.dagger()).scale(C64::new(0.5, 0.0))
    }

    /// Determinant by cofactor expansion (dims 1–3 only, which is all the
    /// closed-form layer needs).
    pub fn det(&self) -> C64 {
        match self.dim {
            1 => self.at(0, 0),
            2 => self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0),
            3 => {
                self.at(0, 0) * (self.at(1, 1) * self.at(2, 2) - self.at(1, 2) * self.at(2, 1))
                    - self.at(0, 1)
                        * (self.at(1, 0) * self.at(2, 2) - self.at(1, 2) * self.at(2, 0))
                    + self.at(0, 2)
                        * (self.at(1, 0) * self.at(2, 1) - self.at(1, 1) * self.at(2, 0))
            }
            d => panic!("det unsupported for dim {d}"),
        }
    }
}

/// Which tensor factor of a bipartite system an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Partial trace of a `(da*db)×(da*db)` matrix over one factor, with the
/// composite index ordered as `(a, b) → a*db + b`.
pub fn partial_trace(m: &CMat, da: usize, db: usize, over: Factor) -> Result<CMat> {
    if m.dim() != da * db {
        return Err(Error::WrongDimension {
            expected: da * db,
            got: m.dim(),
        });
    }
    match over {
        Factor::Second => {
            let mut out = CMat::zeros(da);
            for a in 0..da {
                for b in 0..da {
                    let mut s = C64::new(0.0, 0.0);
                    for k in 0..db {
                        s += m.at(a * db + k, b * db + k);
                    }
                    out.set(a, b, s);
                }
            }
            Ok(out)
        }
        Factor::First => {
            let mut out = CMat::zeros(db);
            for a in 0..db {
                for b in 0..db {
                    let mut s = C64::new(0.0, 0.0);
                    for k in 0..da {
                        s += m.at(k * db + a, k * db + b);
                    }
                    out.set(a, b, s);
                }
            }
            Ok(out)
        }
    }
}

/// Partial transpose of a two-qubit matrix over the second factor, in the
/// standard basis |00⟩, |01⟩, |10⟩, |11⟩.
pub fn partial_transpose_second(m: &CMat) -> Result<CMat> {
    if m.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    let mut out = CMat::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for alpha in 0..2 {
                for beta in 0..2 {
                    out.set(
                        2 * a + alpha,
                        2 * b + beta,
                        m.at(2 * a + beta, 2 * b + alpha),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Minor table of a 3×3 matrix.
///
/// Entry `M_jk` (1-based) is the 2×2 determinant left after deleting row
/// `4−j` and column `4−k` of the source. The adjugate reassembles as
/// `adj(A)_{jk} = (−1)^{j+k} M_{4−k,4−j}`, which [`MinorTable::adjugate`]
/// exposes so the convention can be validated through `A·adj(A) = det(A)·I`.
#[derive(Clone, Debug)]
pub struct MinorTable {
    entries: [[C64; 3]; 3],
    det: C64,
}

impl MinorTable {
    /// `M_jk` with 1-based `j, k ∈ {1,2,3}`.
    pub fn at(&self, j: usize, k: usize) -> C64 {
        self.entries[j - 1][k - 1]
    }

    /// Determinant of the source matrix.
    pub fn det(&self) -> C64 {
        self.det
    }

    /// Adjugate of the source matrix, reassembled from the minor table.
    pub fn adjugate(&self) -> CMat {
        let mut out = CMat::zeros(3);
        for j in 1..=3usize {
            for k in 1..=3usize {
                let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                out.set(j - 1, k - 1, self.at(4 - k, 4 - j) * sign);
            }
        }
        out
    }
}

/// Minor table and determinant of a 3×3 matrix.
pub fn minors(m: &CMat) -> Result<MinorTable> {
    if m.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: m.dim(),
        });
    }
    let mut entries = [[C64::new(0.0, 0.0); 3]; 3];
    for j in 1..=3usize {
        for k in 1..=3usize {
            let rows: Vec<usize> = (0..3).filter(|&r| r != 3 - j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != 3 - k).collect();
            entries[j - 1][k - 1] = m.at(rows[0], cols[0]) * m.at(rows[1], cols[1])
                - m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]);
        }
    }
    Ok(MinorTable {
        entries,
        det: m.det(),
    })
}

/// `U†ρU` after checking dimensions and unitarity.
pub fn conjugate(rho: &CMat, u: &CMat) -> Result<CMat> {
    if rho.dim() != u.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), u.dim()));
    }
    let uerr = u.unitarity_error();
    if uerr > tol::UNITARY {
        return Err(Error::NotUnitary(uerr));
    }
    Ok(u.dagger().mul(rho).mul(u))
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and a
/// unitary whose columns are the matching eigenvectors (`m = V Λ V†`).
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

/// Eigenvalues of a Hermitian matrix, ascending. Closed form at 2×2, cyclic
/// Jacobi otherwise.
pub fn eigenvalues_hermitian(m: &CMat) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    if m.dim() == 2 {
        return Ok(eigenvalues_2x2(m));
    }
    Ok(jacobi(m).0)
}

/// Full Hermitian eigendecomposition via cyclic Jacobi.
pub fn eigen_hermitian(m: &CMat) -> Result<EigenDecomposition> {
    check_hermitian(m)?;
    let (values, vectors) = jacobi(m);
    Ok(EigenDecomposition { values, vectors })
}

fn check_hermitian(m: &CMat) -> Result<()> {
    let herr = m.hermiticity_error();
    if herr > tol::HERMITIAN {
        return Err(Error::NotHermitian(herr));
    }
    Ok(())
}

fn eigenvalues_2x2(m: &CMat) -> Vec<f64> {
    let a = m.at(0, 0).re;
    let d = m.at(1, 1).re;
    let half = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + m.at(0, 1).norm_sqr()).sqrt();
    vec![half - r, half + r]
}

/// Cyclic Jacobi for complex Hermitian matrices. Each rotation zeroes one
/// off-diagonal pair with a complex Givens rotation; sweeps repeat until the
/// largest off-diagonal modulus is negligible against the matrix scale.
fn jacobi(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = CMat::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let target = scale * 1e-15;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.at(p, q).norm());
            }
        }
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                let r = apq.norm();
                if r <= target * 1e-2 {
                    continue;
                }
                let phase = apq / r;
                let app = a.at(p, p).re;
                let aqq = a.at(q, q).re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();

                // A <- G† A G with G mixing columns p and q.
                for i in 0..n {
                    let aip = a.at(i, p);
                    let aiq = a.at(i, q);
                    a.set(i, p, aip * c + aiq * s * phase.conj());
                    a.set(i, q, aiq * c - aip * s * phase);
                }
                for j in 0..n {
                    let apj = a.at(p, j);
                    let aqj = a.at(q, j);
                    a.set(p, j, apj * c + aqj * s * phase);
                    a.set(q, j, aqj * c - apj * s * phase.conj());
                }
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
                for i in 0..n {
                    let vip = v.at(i, p);
                    let viq = v.at(i, q);
                    v.set(i, p, vip * c + viq * s * phase.conj());
                    v.set(i, q, viq * c - vip * s * phase);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.at(i, i).re.partial_cmp(&a.at(j, j).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.at(i, i).re).collect();
    let mut vectors = CMat::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, v.at(row, old_col));
        }
    }
    (values, vectors)
}
