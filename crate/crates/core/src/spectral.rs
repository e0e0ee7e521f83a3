//! Coset representatives and PSD factorizations.
//!
//! * [`canonical_singular_rep`] picks the unique singular PSD matrix in
//!   `A + ℝE`.
//! * [`psd_root_factor`] writes a PSD matrix of rank `≤ m` as `Y·Y*` with
//!   `Y` of width `m`.
//! * [`pi_so`] and [`in_m`] describe the quotient of `End(W)` by
//!   `X ↦ X·C⁻¹`, `C ∈ SO(W)`, and its image.
//! * [`preimage_cor22`] inverts `X ↦ (X·X* + ℝE, det X)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{det, gram, herm_eigen, Herm, Mat, Scalar};
use crate::tol;

/// An element `A + ℝE` of `S(W)/ℝE`, stored through any representative.
#[derive(Debug, Clone)]
pub struct Coset {
    rep: Herm,
}

impl Coset {
    pub fn new(rep: Herm) -> Coset {
        Coset { rep }
    }

    /// The coset of `E` (equivalently of `0`).
    pub fn trivial(n: usize) -> Coset {
        Coset::new(Herm::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn rep(&self) -> &Herm {
        &self.rep
    }

    /// The traceless representative; two cosets agree iff these agree.
    pub fn normal_form(&self) -> Herm {
        self.rep.traceless()
    }

    /// Frobenius distance between normal forms.
    pub fn distance(&self, other: &Coset) -> f64 {
        assert_eq!(self.dim(), other.dim(), "coset dimension mismatch");
        (self.normal_form().as_mat() - other.normal_form().as_mat()).norm_fro()
    }

    pub fn approx_eq(&self, other: &Coset, rel_tol: f64) -> bool {
        let scale = tol::scale(
            self.normal_form()
                .as_mat()
                .norm_fro()
                .max(other.normal_form().as_mat().norm_fro()),
        );
        self.distance(other) <= rel_tol * scale
    }

    /// `C·A·C* + ℝE`.
    pub fn conjugate(&self, c: &Mat) -> Coset {
        Coset::new(self.rep.congruence(c))
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Coset) -> bool {
        self.dim() == other.dim() && self.approx_eq(other, tol::ALGEBRAIC)
    }
}

/// A pair `(A, λ)` that may or may not lie in `M(W)`.
#[derive(Debug, Clone)]
pub struct MPoint {
    pub a: Herm,
    pub lambda: Scalar,
}

/// `A₀ = rep − λ_min(rep)·E`, the unique singular PSD representative.
pub fn canonical_singular_rep(c: &Coset) -> Result<Herm> {
    if c.dim() == 0 {
        return Ok(Herm::zeros(0));
    }
    let eig = herm_eigen(c.rep())?;
    Ok(c.rep().shift(-eig.min()))
}

/// `Y` of shape `n × m` with `Y·Y* = A0`, from the `m` largest eigenpairs.
///
/// Eigenvalues past index `m` must vanish up to `tol::RANK · max(1, λ_max)`;
/// negative eigenvalues within the same band are clamped to zero.
pub fn psd_root_factor(a0: &Herm, m: usize) -> Result<Mat> {
    let n = a0.dim();
    let eig = herm_eigen(a0)?;
    let band = tol::RANK * tol::scale(eig.max());
    if let Some(&worst) = eig.values.last() {
        if worst < -band {
            return Err(Error::InvalidInput(format!(
                "matrix is not positive semidefinite (eigenvalue {worst:.3e})"
            )));
        }
    }
    if let Some((index, &value)) = eig.values.iter().enumerate().skip(m).find(|(_, &v)| v > band) {
        return Err(Error::RankTooHigh {
            rank: m,
            index,
            value,
            tol: band,
        });
    }
    let roots: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0).sqrt()).collect();
    Ok(Mat::from_fn(n, m, |i, j| {
        if j < n {
            eig.vectors[(i, j)] * roots[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `X ↦ (X·X*, det X)`.
pub fn pi_so(x: &Mat) -> (Herm, Scalar) {
    assert!(x.is_square(), "pi_so expects a square matrix");
    (gram(x), det(x))
}

/// Membership in `M(W) = {(A, λ) : A ≥ 0, det A = |λ|²}` up to `rel_tol`.
pub fn in_m(p: &MPoint, rel_tol: f64) -> bool {
    let Ok(eig) = herm_eigen(&p.a) else {
        return false;
    };
    let scale = tol::scale(eig.max());
    if eig.min() < -rel_tol * scale {
        return false;
    }
    let det_a: f64 = eig.values.iter().product();
    let target = p.lambda.norm_sqr();
    (det_a - target).abs() <= rel_tol * tol::scale(det_a.abs().max(target))
}

const BRACKET_MAX_DOUBLINGS: usize = 2100;
const BISECTION_MAX_STEPS: usize = 400;

/// Returns `X` with `X·X* + ℝE = c` and `det X = lambda`.
///
/// Finds the shift `t ≥ −λ_min` with `det(rep + t·E) = |lambda|²` by
/// bisection on the increasing function `t ↦ Π(μ_i + t)`, takes the full PSD
/// root of `rep + t·E` and corrects the phase of the determinant on the last
/// column.
pub fn preimage_cor22(c: &Coset, lambda: Scalar) -> Result<Mat> {
    let n = c.dim();
    if n == 0 {
        return Err(Error::InvalidInput("preimage_cor22 needs n ≥ 1".into()));
    }
    let eig = herm_eigen(c.rep())?;
    let mu_min = eig.min();
    let gaps: Vec<f64> = eig.values.iter().map(|&m| (m - mu_min).max(0.0)).collect();
    let target = lambda.norm_sqr();
    let f = |s: f64| gaps.iter().map(|g| g + s).product::<f64>();

    let shift = if target == 0.0 {
        0.0
    } else {
        let mut hi = 1.0_f64;
        let mut doublings = 0;
        while f(hi) < target {
            hi *= 2.0;
            doublings += 1;
            if doublings > BRACKET_MAX_DOUBLINGS || !hi.is_finite() {
                return Err(Error::NumericalFailure(format!(
                    "could not bracket det(rep + tE) = {target:.3e}"
                )));
            }
        }
        let mut lo = 0.0_f64;
        let mut steps = 0;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            steps += 1;
            if steps > BISECTION_MAX_STEPS {
                break;
            }
        }
        let best = if (f(lo) - target).abs() <= (f(hi) - target).abs() {
            lo
        } else {
            hi
        };
        if (f(best) - target).abs() > tol::ROOT_FIND * target {
            return Err(Error::NumericalFailure(format!(
                "root finder stalled: det = {:.6e}, target {target:.6e}",
                f(best)
            )));
        }
        best
    };

    let roots: Vec<f64> = gaps.iter().map(|g| (g + shift).sqrt()).collect();
    let mut y = Mat::from_fn(n, n, |i, j| eig.vectors[(i, j)] * roots[j]);
    if target > 0.0 {
        let ratio = lambda / det(&y);
        y.scale_column(n - 1, ratio / ratio.norm());
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};

    fn real_herm(rows: &[&[f64]]) -> Herm {
        Herm::from_mat(Mat::from_real_rows(rows))
    }

    #[test]
    fn canonical_rep_examples() {
        let r = canonical_singular_rep(&Coset::new(Herm::diag(&[2.0, 1.0]))).unwrap();
        assert_eq!(r, Herm::diag(&[1.0, 0.0]));
        let r = canonical_singular_rep(&Coset::new(Herm::identity(3))).unwrap();
        assert_eq!(r, Herm::zeros(3));
        let r = canonical_singular_rep(&Coset::new(real_herm(&[&[0.0, 1.0], &[1.0, 0.0]]))).unwrap();
        assert!((r.as_mat() - &Mat::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])).norm_fro() < 1e-15);
    }

    #[test]
    fn root_factor_examples() {
        let y = psd_root_factor(&Herm::diag(&[1.0, 0.0]), 1).unwrap();
        assert_eq!(y.shape(), (2, 1));
        assert_eq!(y[(0, 0)].norm(), 1.0);
        assert_eq!(y[(1, 0)], ZERO);

        let y = psd_root_factor(&real_herm(&[&[1.0, 1.0], &[1.0, 1.0]]), 1).unwrap();
        assert!((y[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((y[(0, 0)] - y[(1, 0)]).norm() < 1e-15);

        let y = psd_root_factor(&Herm::zeros(3), 2).unwrap();
        assert_eq!(y, Mat::zeros(3, 2));
    }

    #[test]
    fn root_factor_rejects_excess_rank() {
        let err = psd_root_factor(&Herm::diag(&[1.0, 1.0]), 1).unwrap_err();
        assert!(matches!(err, Error::RankTooHigh { rank: 1, index: 1, .. }));
        let err = psd_root_factor(&Herm::diag(&[1.0, -1.0]), 1).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn pi_so_examples() {
        let (a, d) = pi_so(&Mat::identity(2));
        assert_eq!((a, d), (Herm::identity(2), ONE));
        let (a, d) = pi_so(&Mat::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]));
        assert_eq!((a, d), (Herm::identity(2), ONE));
        let (a, d) = pi_so(&Mat::diag_real(&[1.0, -1.0]));
        assert_eq!((a, d), (Herm::identity(2), -ONE));
    }

    #[test]
    fn in_m_examples() {
        assert!(in_m(
            &MPoint {
                a: Herm::identity(2),
                lambda: ONE
            },
            1e-9
        ));
        assert!(in_m(
            &MPoint {
                a: Herm::diag(&[1.0, 0.0]),
                lambda: ZERO
            },
            1e-9
        ));
        assert!(!in_m(
            &MPoint {
                a: Herm::identity(2),
                lambda: Complex64::new(2.0, 0.0)
            },
            1e-9
        ));
        assert!(!in_m(
            &MPoint {
                a: Herm::diag(&[1.0, -1.0]),
                lambda: Complex64::new(0.0, 1.0)
            },
            1e-9
        ));
    }

    #[test]
    fn preimage_examples() {
        let x = preimage_cor22(&Coset::trivial(2), ONE).unwrap();
        assert!((&x - &Mat::identity(2)).norm_fro() < 1e-12, "{x:?}");

        let x = preimage_cor22(&Coset::new(Herm::diag(&[1.0, 0.0])), ZERO).unwrap();
        assert!((&gram(&x).into_mat() - &Mat::diag_real(&[1.0, 0.0])).norm_fro() < 1e-15);
        assert_eq!(det(&x), ZERO);

        let i = Complex64::new(0.0, 1.0);
        let x = preimage_cor22(&Coset::trivial(1), i).unwrap();
        assert!((x[(0, 0)] - i).norm() < 1e-12);
    }

    #[test]
    fn preimage_handles_large_and_tiny_targets() {
        let c = Coset::new(Herm::diag(&[3.0, -1.0, 0.5]));
        for lam in [1e-6, 1e6, 123.0] {
            let lambda = Complex64::new(0.0, -lam);
            let x = preimage_cor22(&c, lambda).unwrap();
            let (a, d) = pi_so(&x);
            assert!(Coset::new(a).approx_eq(&c, 1e-9));
            assert!((d - lambda).norm() <= 1e-9 * lam.max(1.0));
        }
    }

    #[test]
    fn coset_equality_ignores_representative() {
        let a = real_herm(&[&[1.0, 2.0], &[2.0, -3.0]]);
        assert_eq!(Coset::new(a.clone()), Coset::new(a.shift(17.5)));
        assert_ne!(Coset::new(a.clone()), Coset::new(a.scale(2.0)));
    }
}
