//! Dense small-matrix primitives over `F ∈ {ℝ, ℂ}`.
//!
//! Every matrix is stored with complex entries. Under [`Field::Real`] the
//! imaginary parts stay identically zero: all routines here only combine real
//! numbers with real numbers when their inputs are real, so no special real
//! code path is needed for correctness.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A scalar of `F`. Under the real field the imaginary part is zero.
pub type Scalar = Complex64;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);

/// Ground field selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl Field {
    pub const ALL: [Field; 2] = [Field::Real, Field::Complex];

    /// Real dimension of one scalar.
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }

    /// Real dimension of the space of self-adjoint `k × k` matrices.
    pub fn herm_dim(self, k: usize) -> usize {
        k + self.real_dim() * k * (k.saturating_sub(1)) / 2
    }

    /// Projects a scalar into the field (drops the imaginary part over ℝ).
    pub fn coerce(self, z: Scalar) -> Scalar {
        match self {
            Field::Real => Complex64::new(z.re, 0.0),
            Field::Complex => z,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(Field::Real),
            "C" | "c" | "complex" => Ok(Field::Complex),
            other => Err(Error::InvalidInput(format!("unknown field `{other}`"))),
        }
    }
}

/// Dense row-major matrix with complex entries. Also serves as `Hom(F^m, F^n)`.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>12.6} ", z.re)?;
                } else {
                    write!(f, "{:>12.6}{:+.6}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a real matrix from row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Mat::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        Mat::from_fn(n, n, |i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
    }

    pub fn column(values: &[Scalar]) -> Self {
        Mat::from_fn(values.len(), 1, |i, _| values[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Mat {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Copies the block starting at `(r0, c0)` of the given shape.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Mat::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self[(i, j)],
                (false, false) => other[(i - self.rows, j - self.cols)],
                _ => ZERO,
            }
        })
    }

    /// Multiplies column `j` by `s` in place.
    pub fn scale_column(&mut self, j: usize, s: Scalar) {
        for i in 0..self.rows {
            self[(i, j)] *= s;
        }
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Coerces every entry into `field`.
    pub fn coerce(mut self, field: Field) -> Mat {
        if field == Field::Real {
            for z in &mut self.data {
                z.im = 0.0;
            }
        }
        self
    }

    /// `‖self·self* − I‖_F`, the unitarity defect of a square matrix.
    pub fn unitarity_defect(&self) -> f64 {
        (&(self * &self.adjoint()) - &Mat::identity(self.rows)).norm_fro()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[l * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;

    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Self-adjoint matrix, an element of `S(W)`.
///
/// Construction always re-symmetrizes as `(M + M*)/2`, so the stored entries
/// satisfy `a_ij = conj(a_ji)` with real diagonal exactly.
#[derive(Clone, PartialEq)]
pub struct Herm(Mat);

impl fmt::Debug for Herm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Herm{:?}", self.0)
    }
}

impl Herm {
    /// Symmetrizes `m`. Panics if `m` is not square.
    pub fn from_mat(m: Mat) -> Herm {
        assert!(m.is_square(), "self-adjoint matrix must be square");
        let n = m.rows;
        let mut out = m;
        for i in 0..n {
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = (out[(i, j)] + out[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        Herm(out)
    }

    /// Accepts `m` only if it is self-adjoint within `tol · max(1, ‖m‖_F)`.
    pub fn try_from_mat(m: Mat, tol: f64) -> Result<Herm> {
        if !m.is_square() {
            return Err(Error::InvalidInput(format!(
                "expected a square matrix, got {}x{}",
                m.rows, m.cols
            )));
        }
        let defect = (&m - &m.adjoint()).norm_fro();
        if defect > tol * m.norm_fro().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "matrix is not self-adjoint (defect {defect:.3e})"
            )));
        }
        Ok(Herm::from_mat(m))
    }

    pub fn zeros(n: usize) -> Herm {
        Herm(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Herm {
        Herm(Mat::identity(n))
    }

    pub fn diag(values: &[f64]) -> Herm {
        Herm(Mat::diag_real(values))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    pub fn trace_real(&self) -> f64 {
        self.0.trace().re
    }

    /// `self + t·E`.
    pub fn shift(&self, t: f64) -> Herm {
        let mut m = self.0.clone();
        for i in 0..m.rows {
            m[(i, i)].re += t;
        }
        Herm(m)
    }

    /// Traceless part `self − (tr/n)·E`.
    pub fn traceless(&self) -> Herm {
        let n = self.dim();
        if n == 0 {
            return self.clone();
        }
        self.shift(-self.trace_real() / n as f64)
    }

    /// `C·self·C*` for a square or rectangular `C`.
    pub fn congruence(&self, c: &Mat) -> Herm {
        Herm::from_mat(&(c * &self.0) * &c.adjoint())
    }

    pub fn add(&self, other: &Herm) -> Herm {
        Herm::from_mat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Herm) -> Herm {
        Herm::from_mat(&self.0 - &other.0)
    }

    pub fn scale(&self, s: f64) -> Herm {
        Herm(self.0.scale_real(s))
    }

    /// Exact self-adjointness predicate.
    pub fn is_exactly_self_adjoint(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.0[(i, i)].im == 0.0 && (i + 1..n).all(|j| self.0[(i, j)] == self.0[(j, i)].conj()))
    }
}

/// Spectral decomposition `A = U·diag(values)·U*`, values in descending order.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Rebuilds `U·diag(values)·U*`.
    pub fn reconstruct(&self) -> Herm {
        let scaled = Mat::from_fn(self.vectors.rows(), self.vectors.cols(), |i, j| {
            self.vectors[(i, j)] * self.values[j]
        });
        Herm::from_mat(&scaled * &self.vectors.adjoint())
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for self-adjoint matrices.
///
/// Each step applies the unitary `D·R` on the `(p, q)` plane, where
/// `D = diag(1, e^{-iφ})` rotates `a_pq = r·e^{iφ}` onto the real axis and `R`
/// is the real symmetric Schur rotation. For real input `e^{-iφ} = ±1` and the
/// iteration never leaves the reals.
pub fn herm_eigen(a: &Herm) -> Result<Eigen> {
    let n = a.dim();
    let mut m = a.as_mat().clone();
    let mut u = Mat::identity(n);
    let scale = m.norm_fro();

    let mut converged = n <= 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NumericalFailure(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (n = {n})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut u, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        converged = off <= f64::EPSILON * scale;
    }

    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep the Jacobi output order
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

fn rotate(m: &mut Mat, u: &mut Mat, p: usize, q: usize) {
    let z = m[(p, q)];
    let r = z.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // skip entries that can no longer change the diagonal in floating point
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = ZERO;
        m[(q, p)] = ZERO;
        return;
    }
    let phase = z / r; // e^{iφ}
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // V = D·R = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
    let ph = phase.conj();
    let v = [[Complex64::new(c, 0.0), Complex64::new(s, 0.0)], [-ph * s, ph * c]];
    let n = m.rows();
    // M ← M·V, U ← U·V
    for i in 0..n {
        let (mp, mq) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = mp * v[0][0] + mq * v[1][0];
        m[(i, q)] = mp * v[0][1] + mq * v[1][1];
        let (up, uq) = (u[(i, p)], u[(i, q)]);
        u[(i, p)] = up * v[0][0] + uq * v[1][0];
        u[(i, q)] = up * v[0][1] + uq * v[1][1];
    }
    // M ← V*·M
    for j in 0..n {
        let (mp, mq) = (m[(p, j)], m[(q, j)]);
        m[(p, j)] = v[0][0].conj() * mp + v[1][0].conj() * mq;
        m[(q, j)] = v[0][1].conj() * mp + v[1][1].conj() * mq;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
}

/// Determinant by LU factorization with partial pivoting.
pub fn det(x: &Mat) -> Scalar {
    assert!(x.is_square(), "determinant of a non-square matrix");
    let n = x.rows();
    let mut a = x.clone();
    let mut d = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .unwrap_or(col);
        if a[(pivot, col)] == ZERO {
            return ZERO;
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            d = -d;
        }
        let piv = a[(col, col)];
        d *= piv;
        for i in col + 1..n {
            let f = a[(i, col)] / piv;
            if f == ZERO {
                continue;
            }
            for j in col + 1..n {
                let sub = f * a[(col, j)];
                a[(i, j)] -= sub;
            }
        }
    }
    d
}

/// `X·X*`.
pub fn gram(x: &Mat) -> Herm {
    Herm::from_mat(x * &x.adjoint())
}

/// `Z*·Z`.
pub fn gram_t(z: &Mat) -> Herm {
    Herm::from_mat(&z.adjoint() * z)
}
