//! Seeded random inputs.
//!
//! All randomness flows from a `u64` seed into a [`ChaCha8Rng`]; per-trial
//! streams are derived with [`derive_seed`] so that parallel and sequential
//! runs draw identical samples.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{herm_eigen, Field, Herm, Mat, Scalar};
use crate::spectral::Coset;
use crate::tower::ReprPoint;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a base seed with a path of stream indices.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(base), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Standard Gaussian scalar; over ℂ the real and imaginary parts have
/// variance 1/2 each.
pub fn gaussian_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Real => Complex64::new(rng.sample(StandardNormal), 0.0),
        Field::Complex => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(h * re, h * im)
        }
    }
}

pub fn gaussian_mat<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
    Mat::from_fn(rows, cols, |_, _| gaussian_scalar(field, rng))
}

/// Uniform element of the unit group `𝕋` of the field.
pub fn random_unit<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Real => {
            if rng.gen::<bool>() {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        }
        Field::Complex => Complex64::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
    }
}

/// `(G + G*)/2` for Gaussian `G`.
pub fn random_herm<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Herm {
    Herm::from_mat(gaussian_mat(field, n, n, rng))
}

/// Self-adjoint matrix `U·diag(spectrum)·U*` with a random unitary `U`.
pub fn herm_with_spectrum<R: Rng + ?Sized>(field: Field, spectrum: &[f64], rng: &mut R) -> Herm {
    let n = spectrum.len();
    if n == 0 {
        return Herm::zeros(0);
    }
    let u = crate::group::sample_orthogonal(field, n, rng).into_matrix();
    Herm::diag(spectrum).congruence(&u)
}

/// Gaussian point of the representation space.
pub fn random_point<R: Rng + ?Sized>(field: Field, n: usize, k: usize, rng: &mut R) -> ReprPoint {
    let a = random_herm(field, n, rng);
    let b = gaussian_mat(field, n, k, rng);
    ReprPoint::new(field, Coset::new(a), b).expect("sampled shapes are valid")
}

/// Random point whose coset has an eigenvalue of multiplicity two.
///
/// `at_bottom` places the repeated pair at the smallest eigenvalue, so the
/// canonical singular representative has a two-dimensional kernel.
pub fn random_point_with_double_eigenvalue<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    k: usize,
    at_bottom: bool,
    rng: &mut R,
) -> ReprPoint {
    assert!(n >= 2, "a repeated eigenvalue needs n ≥ 2");
    let mut spectrum: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    if at_bottom {
        spectrum[n - 2] = spectrum[n - 1];
    } else {
        let i = rng.gen_range(0..n - 1);
        spectrum[i + 1] = spectrum[i];
    }
    let a = herm_with_spectrum(field, &spectrum, rng);
    let b = gaussian_mat(field, n, k, rng);
    ReprPoint::new(field, Coset::new(a), b).expect("sampled shapes are valid")
}

/// Random point whose coset has two eigenvalues within `gap` of each other.
pub fn random_point_near_crossing<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    k: usize,
    gap: f64,
    rng: &mut R,
) -> ReprPoint {
    assert!(n >= 2, "an eigenvalue crossing needs n ≥ 2");
    let mut p = random_point_with_double_eigenvalue(field, n, k, rng.gen(), rng);
    let eig = herm_eigen(p.coset.rep()).expect("eigensolve of a sampled matrix");
    // split the first repeated pair by `gap`
    let i = (0..n - 1)
        .min_by(|&i, &j| (eig.values[i] - eig.values[i + 1]).total_cmp(&(eig.values[j] - eig.values[j + 1])))
        .unwrap_or(0);
    let mut spectrum = eig.values.clone();
    spectrum[i] += gap;
    let rebuilt = crate::linalg::Eigen {
        values: spectrum,
        vectors: eig.vectors,
    }
    .reconstruct();
    p.coset = Coset::new(rebuilt);
    p
}
