//! Sampling of `O(n)` / `SO(n)` over ℝ and ℂ, the block embedding
//! `O(W₁) ↪ O(W₁ ⊕ F^k)` and the three actions the quotient maps are built on.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{det, Field, Mat, Scalar, ONE};
use crate::sample::{gaussian_mat, rng_from_seed};
use crate::tower::ReprPoint;

/// Element of `O(W)` (orthogonal over ℝ, unitary over ℂ) with its cached
/// determinant.
#[derive(Debug, Clone)]
pub struct GroupElement {
    field: Field,
    c: Mat,
    det: Scalar,
}

impl GroupElement {
    /// Wraps `c`, recomputing the determinant. No unitarity check.
    pub fn from_matrix(field: Field, c: Mat) -> GroupElement {
        assert!(c.is_square(), "group elements are square");
        let c = c.coerce(field);
        let det = det(&c);
        GroupElement { field, c, det }
    }

    pub fn identity(field: Field, n: usize) -> GroupElement {
        GroupElement {
            field,
            c: Mat::identity(n),
            det: ONE,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.c.rows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.c
    }

    pub fn into_matrix(self) -> Mat {
        self.c
    }

    pub fn det(&self) -> Scalar {
        self.det
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            field: self.field,
            c: &self.c * &other.c,
            det: self.det * other.det,
        }
    }

    /// `C⁻¹ = C*`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            field: self.field,
            c: self.c.adjoint(),
            det: self.det.conj(),
        }
    }

    /// `max(‖CC* − E‖_F, |det C − cached|, ||det C| − 1|)`.
    pub fn defect(&self) -> f64 {
        let fresh = det(&self.c);
        self.c
            .unitarity_defect()
            .max((fresh - self.det).norm())
            .max((self.det.norm() - 1.0).abs())
    }
}

/// Orthonormalizes the columns of a Gaussian matrix (Gram–Schmidt, two
/// passes). The triangular factor then has positive real diagonal, which
/// fixes the sign/phase ambiguity and makes the law approximately Haar.
pub fn sample_orthogonal<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> GroupElement {
    loop {
        let g = gaussian_mat(field, n, n, rng);
        if let Some(q) = orthonormalize(&g) {
            return GroupElement::from_matrix(field, q);
        }
    }
}

fn orthonormalize(g: &Mat) -> Option<Mat> {
    let n = g.rows();
    let mut q = g.clone();
    for j in 0..n {
        for _pass in 0..2 {
            for l in 0..j {
                let dot: Scalar = (0..n).map(|i| q[(i, l)].conj() * q[(i, j)]).sum();
                for i in 0..n {
                    let sub = q[(i, l)] * dot;
                    q[(i, j)] -= sub;
                }
            }
        }
        let norm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-8) {
            return None;
        }
        q.scale_column(j, Complex64::new(1.0 / norm, 0.0));
    }
    Some(q)
}

/// Approximately Haar-distributed element of `O(n)`, deterministic per seed.
pub fn random_orthogonal(field: Field, n: usize, seed: u64) -> GroupElement {
    sample_orthogonal(field, n, &mut rng_from_seed(seed))
}

pub fn sample_special<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> GroupElement {
    let g = sample_orthogonal(field, n, rng);
    make_special(g)
}

/// Element of `SO(n)`: a sampled `C` with its last column multiplied by the
/// unit `conj(det C)/|det C|`.
pub fn random_special(field: Field, n: usize, seed: u64) -> GroupElement {
    sample_special(field, n, &mut rng_from_seed(seed))
}

fn make_special(g: GroupElement) -> GroupElement {
    let n = g.dim();
    if n == 0 {
        return g;
    }
    let field = g.field;
    let d = g.det;
    let mut c = g.c;
    c.scale_column(n - 1, d.conj() / d.norm());
    GroupElement::from_matrix(field, c)
}

/// `R(C₁) = diag(C₁, E_k)`.
pub fn embed_r(c1: &GroupElement, k: usize) -> GroupElement {
    GroupElement {
        field: c1.field,
        c: c1.c.block_diag(&Mat::identity(k)),
        det: c1.det,
    }
}

/// `C : (A + ℝE, B) ↦ (C·A·C⁻¹ + ℝE, C·B)`.
pub fn act_point(c: &GroupElement, p: &ReprPoint) -> ReprPoint {
    assert_eq!(c.dim(), p.n(), "group element and point dimensions differ");
    ReprPoint {
        field: p.field,
        coset: p.coset.conjugate(&c.c),
        b: &c.c * &p.b,
    }
}

/// `C : X ↦ X·C⁻¹` on `End(W)`.
pub fn act_end(c: &GroupElement, x: &Mat) -> Mat {
    assert!(x.is_square(), "act_end expects a square matrix");
    act_hom(c, x)
}

/// `C₁ : X ↦ X·C₁⁻¹` on `Hom(W₁, W)`.
pub fn act_hom(c1: &GroupElement, x: &Mat) -> Mat {
    assert_eq!(x.cols(), c1.dim(), "act_hom shape mismatch");
    x * &c1.c.adjoint()
}

/// Serialized form used by the command-line front end.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupElementJson {
    pub field: Field,
    pub n: usize,
    #[serde(rename = "C")]
    pub c: Vec<Vec<[f64; 2]>>,
    pub det: [f64; 2],
}

impl From<&GroupElement> for GroupElementJson {
    fn from(g: &GroupElement) -> Self {
        GroupElementJson {
            field: g.field,
            n: g.dim(),
            c: crate::io::mat_to_pairs(&g.c),
            det: [g.det.re, g.det.im],
        }
    }
}
