//! Recursive quotient maps for `O(W)` acting on `(S(W)/ℝE) ⊕ Hom(F^k, W)`.
//!
//! One level of the recursion, for `n = dim W`:
//!
//! 1. pick a section `Z = [Y | B]` of `π₀ : Z ↦ (Z|_{W₁}·Z|_{W₁}* + ℝE, Z|_{F^k})`
//!    with `Y·Y*` the singular PSD representative of the coset;
//! 2. split `Z*Z + ℝE` into blocks `(v′, A₁ + ℝE, B₁)` over `W₁ ⊕ F^k`,
//!    `dim W₁ = n − 1`;
//! 3. recurse on `(A₁ + ℝE, B₁)`.
//!
//! For `k = 2` the values `v′` of all levels form the output. For `k = 1` the
//! recursion also returns a scalar `λ` that picks up `det C₁`; it is paired
//! with `det Z` through `γ(λ, μ) = (|λ|² − |μ|², λμ)`, which kills the
//! `O(W₁)` ambiguity of the section while keeping `det C` for `C ∈ O(W)`.
//!
//! Output layout of `v` (a compatibility contract):
//! * `k = 2`: `v′` of level `n`, then of `n − 1`, …, down to level 1. Levels
//!   `m ≥ 2` write the full self-adjoint `2 × 2` block; level 1 writes the
//!   coset of a `2 × 2` block through its traceless representative without
//!   the last diagonal entry.
//! * `k = 1`: `[v′_n] ++ v(level n − 1) ++ [t_n]`, nested, with the scalar
//!   `nu` of the outermost `γ` reported separately.
//!
//! Self-adjoint blocks serialize as the real diagonal followed by the strict
//! upper triangle in row-major order, each entry as `re` (ℝ) or `re, im` (ℂ).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det, gram_t, Field, Herm, Mat, Scalar};
use crate::spectral::{canonical_singular_rep, psd_root_factor, Coset};

/// A point `(A + ℝE, B)` with `B ∈ Hom(F^k, W)`.
#[derive(Debug, Clone)]
pub struct ReprPoint {
    pub field: Field,
    pub coset: Coset,
    pub b: Mat,
}

impl ReprPoint {
    /// Validates shapes: `B` is `n × k`, `k ∈ {1, 2}`, `n ≥ 2 − k`.
    pub fn new(field: Field, coset: Coset, b: Mat) -> Result<ReprPoint> {
        let n = coset.dim();
        let k = b.cols();
        if b.rows() != n {
            return Err(Error::InvalidInput(format!(
                "B has {} rows but the coset has dimension {n}",
                b.rows()
            )));
        }
        if !(k == 1 || k == 2) {
            return Err(Error::InvalidInput(format!("k must be 1 or 2, got {k}")));
        }
        if n + k < 2 {
            return Err(Error::InvalidInput(format!("need n ≥ 2 − k, got n = {n}, k = {k}")));
        }
        if field == Field::Real && !(coset.rep().as_mat().is_real() && b.is_real()) {
            return Err(Error::InvalidInput("complex entries in a real point".into()));
        }
        Ok(ReprPoint { field, coset, b })
    }

    pub fn n(&self) -> usize {
        self.coset.dim()
    }

    pub fn k(&self) -> usize {
        self.b.cols()
    }

    /// Distance between points: coset normal forms plus `B`, Frobenius.
    pub fn distance(&self, other: &ReprPoint) -> f64 {
        let dc = self.coset.distance(&other.coset);
        let db = (&self.b - &other.b).norm_fro();
        dc.hypot(db)
    }

    /// `p + ε·(H, D)` for a self-adjoint `H` and matrix `D`.
    pub fn perturbed(&self, h: &Herm, d: &Mat, eps: f64) -> ReprPoint {
        ReprPoint {
            field: self.field,
            coset: Coset::new(self.coset.rep().add(&h.scale(eps))),
            b: &self.b + &d.scale_real(eps),
        }
    }
}

/// The V′ component of `φ`.
#[derive(Debug, Clone)]
pub enum VPrime {
    /// `A₂ − (tr A₁ / (n − 1))·E_k`, used when `n − 1 > 0`.
    Block(Herm),
    /// `A₂ + ℝE`, used when `n − 1 = 0`.
    Coset(Coset),
}

/// `φ(S + ℝE) = (v′, A₁ + ℝE, B₁)`.
#[derive(Debug, Clone)]
pub struct PhiValue {
    pub v_prime: VPrime,
    pub coset_a1: Coset,
    pub b1: Mat,
}

/// Splits a coset over `W₁ ⊕ F^k` (first `n − 1` coordinates are `W₁`).
pub fn phi_split(s: &Coset, n: usize, k: usize) -> Result<PhiValue> {
    let n1 = n
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidInput("phi_split needs n ≥ 1".into()))?;
    if s.dim() != n1 + k {
        return Err(Error::InvalidInput(format!(
            "phi_split: coset of dimension {} does not split as {n1} + {k}",
            s.dim()
        )));
    }
    let rep = s.rep().as_mat();
    let a1 = Herm::from_mat(rep.block(0, 0, n1, n1));
    let b1 = rep.block(0, n1, n1, k);
    let a2 = Herm::from_mat(rep.block(n1, n1, k, k));
    let v_prime = if n1 > 0 {
        VPrime::Block(a2.shift(-a1.trace_real() / n1 as f64))
    } else {
        VPrime::Coset(Coset::new(a2))
    };
    Ok(PhiValue {
        v_prime,
        coset_a1: Coset::new(a1),
        b1,
    })
}

/// `Z = [Y | B]` with `Y·Y* = A₀`, the singular PSD representative.
pub fn section_pi0(p: &ReprPoint) -> Result<Mat> {
    section_with(p, None)
}

fn section_with(p: &ReprPoint, twist: Option<&Mat>) -> Result<Mat> {
    let n = p.n();
    if n == 0 {
        return Err(Error::InvalidInput("section_pi0 needs n ≥ 1".into()));
    }
    let a0 = canonical_singular_rep(&p.coset)?;
    let mut y = psd_root_factor(&a0, n - 1)?;
    if let Some(q) = twist {
        assert_eq!(q.shape(), (n - 1, n - 1), "section twist has the wrong size");
        y = &y * q;
    }
    Ok(y.hcat(&p.b))
}

/// `π₀(Z) = (Z|_{W₁}·Z|_{W₁}* + ℝE, Z|_{F^k})` for `Z` of shape `n × (n − 1 + k)`.
pub fn pi0(z: &Mat, k: usize) -> (Coset, Mat) {
    let n = z.rows();
    assert_eq!(z.cols() + 1, n + k, "pi0 shape mismatch");
    let y = z.block(0, 0, n, n - 1);
    let b = z.block(0, n - 1, n, k);
    (Coset::new(crate::linalg::gram(&y)), b)
}

/// `γ(λ, μ) = (|λ|² − |μ|², λ·μ)`.
pub fn gamma(lambda: Scalar, mu: Scalar) -> (f64, Scalar) {
    (lambda.norm_sqr() - mu.norm_sqr(), lambda * mu)
}

/// Value of the quotient map: `v ∈ V` and, for `k = 1`, the residual scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientValue {
    pub v: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "nu_pair")]
    pub nu: Option<Scalar>,
}

mod nu_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(nu: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        nu.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

impl QuotientValue {
    /// All real coordinates: `v`, then `re nu, im nu` when present.
    pub fn flat(&self) -> Vec<f64> {
        let mut out = self.v.clone();
        if let Some(nu) = self.nu {
            out.push(nu.re);
            out.push(nu.im);
        }
        out
    }

    /// `max(1, max |coordinate|)`.
    pub fn scale(&self) -> f64 {
        crate::tol::scale(self.flat().iter().fold(0.0, |m, x| f64::max(m, x.abs())))
    }

    /// Largest coordinate difference; infinite on a layout mismatch.
    pub fn max_diff(&self, other: &QuotientValue) -> f64 {
        if self.v.len() != other.v.len() || self.nu.is_some() != other.nu.is_some() {
            return f64::INFINITY;
        }
        let dv = self
            .v
            .iter()
            .zip(&other.v)
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()));
        match (self.nu, other.nu) {
            (Some(a), Some(b)) => dv.max((a - b).norm()),
            _ => dv,
        }
    }

    /// Euclidean distance over [`Self::flat`].
    pub fn distance(&self, other: &QuotientValue) -> f64 {
        if self.v.len() != other.v.len() || self.nu.is_some() != other.nu.is_some() {
            return f64::INFINITY;
        }
        self.flat()
            .iter()
            .zip(other.flat())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `max_diff ≤ rel_tol · max(scale, other.scale)`.
    pub fn approx_eq(&self, other: &QuotientValue, rel_tol: f64) -> bool {
        self.max_diff(other) <= rel_tol * self.scale().max(other.scale())
    }
}

/// Real dimension of the target space `V`.
pub fn dim_v(field: Field, k: usize, n: usize) -> usize {
    match k {
        1 => 2 * n.saturating_sub(1),
        2 if n == 0 => 0,
        2 => {
            let s = field.herm_dim(2);
            (n - 1) * s + (s - 1)
        }
        _ => panic!("k must be 1 or 2"),
    }
}

/// Diagonal, then strict upper triangle row-major.
pub fn serialize_herm(field: Field, h: &Herm, out: &mut Vec<f64>) {
    let m = h.as_mat();
    let n = h.dim();
    out.extend((0..n).map(|i| m[(i, i)].re));
    push_upper(field, m, out);
}

/// Traceless representative, last diagonal entry dropped.
pub fn serialize_coset(field: Field, c: &Coset, out: &mut Vec<f64>) {
    let t = c.normal_form();
    let m = t.as_mat();
    let n = t.dim();
    out.extend((0..n.saturating_sub(1)).map(|i| m[(i, i)].re));
    push_upper(field, m, out);
}

fn push_upper(field: Field, m: &Mat, out: &mut Vec<f64>) {
    let n = m.rows();
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(i, j)].re);
            if field == Field::Complex {
                out.push(m[(i, j)].im);
            }
        }
    }
}

/// Chooses a different section of `π₀`: given the width `m = dim W₁` of `Y`,
/// return a unitary `Q` (`m × m`) to replace `Y` with `Y·Q`, or `None`.
pub type SectionTwist<'a> = &'a mut dyn FnMut(usize) -> Option<Mat>;

/// The `k = 1` map: fibres are the `SO(W)`-orbits, `nu` scales by `det C`.
pub fn evaluate_k1(p: &ReprPoint) -> Result<QuotientValue> {
    evaluate_k1_with(p, &mut |_| None)
}

/// The `k = 2` map: fibres are the `O(W)`-orbits.
pub fn evaluate_k2(p: &ReprPoint) -> Result<QuotientValue> {
    evaluate_k2_with(p, &mut |_| None)
}

/// Dispatches on `k`.
pub fn evaluate(p: &ReprPoint) -> Result<QuotientValue> {
    match p.k() {
        1 => evaluate_k1(p),
        _ => evaluate_k2(p),
    }
}

/// [`evaluate`] with alternative sections at every level.
pub fn evaluate_with(p: &ReprPoint, twist: SectionTwist<'_>) -> Result<QuotientValue> {
    match p.k() {
        1 => evaluate_k1_with(p, twist),
        _ => evaluate_k2_with(p, twist),
    }
}

pub fn evaluate_k1_with(p: &ReprPoint, twist: SectionTwist<'_>) -> Result<QuotientValue> {
    if p.k() != 1 {
        return Err(Error::InvalidInput(format!("evaluate_k1 got k = {}", p.k())));
    }
    let mut v = Vec::with_capacity(dim_v(p.field, 1, p.n()));
    let nu = k1_level(p, twist, &mut v)?;
    Ok(QuotientValue { v, nu: Some(nu) })
}

fn k1_level(p: &ReprPoint, twist: SectionTwist<'_>, out: &mut Vec<f64>) -> Result<Scalar> {
    let n = p.n();
    if n == 1 {
        return Ok(p.field.coerce(p.b[(0, 0)]));
    }
    let q = twist(n - 1);
    let z = section_with(p, q.as_ref())?;
    let d = det(&z);
    let phi = phi_split(&Coset::new(gram_t(&z)), n, 1)?;
    match &phi.v_prime {
        VPrime::Block(h) => out.push(h.as_mat()[(0, 0)].re),
        VPrime::Coset(_) => unreachable!("n ≥ 2 here"),
    }
    let sub = ReprPoint {
        field: p.field,
        coset: phi.coset_a1,
        b: phi.b1,
    };
    let lambda = k1_level(&sub, twist, out)?;
    let (t, nu) = gamma(lambda, d);
    out.push(t);
    Ok(p.field.coerce(nu))
}

pub fn evaluate_k2_with(p: &ReprPoint, twist: SectionTwist<'_>) -> Result<QuotientValue> {
    if p.k() != 2 {
        return Err(Error::InvalidInput(format!("evaluate_k2 got k = {}", p.k())));
    }
    let mut v = Vec::with_capacity(dim_v(p.field, 2, p.n()));
    let mut cur = p.clone();
    while cur.n() > 0 {
        let n = cur.n();
        let q = twist(n - 1);
        let z = section_with(&cur, q.as_ref())?;
        let phi = phi_split(&Coset::new(gram_t(&z)), n, 2)?;
        match &phi.v_prime {
            VPrime::Block(h) => serialize_herm(p.field, h, &mut v),
            VPrime::Coset(c) => serialize_coset(p.field, c, &mut v),
        }
        cur = ReprPoint {
            field: p.field,
            coset: phi.coset_a1,
            b: phi.b1,
        };
    }
    Ok(QuotientValue { v, nu: None })
}

/// Convenience for tests and callers holding real data.
pub fn real_point(a: &[&[f64]], b: &[&[f64]]) -> Result<ReprPoint> {
    let a = if a.is_empty() {
        Mat::zeros(0, 0)
    } else {
        Mat::from_real_rows(a)
    };
    let k = b.first().map_or(2, |r| r.len());
    let b = if b.is_empty() {
        Mat::zeros(0, k)
    } else {
        Mat::from_real_rows(b)
    };
    ReprPoint::new(Field::Real, Coset::new(Herm::try_from_mat(a, 0.0)?), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{act_point, random_orthogonal, random_special};
    use crate::linalg::{ONE, ZERO};
    use crate::sample::{random_point, rng_from_seed};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Scalar {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_split_examples() {
        for (n, k) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (4, 2)] {
            let phi = phi_split(&Coset::new(Herm::identity(n - 1 + k)), n, k).unwrap();
            match phi.v_prime {
                VPrime::Block(h) => assert_eq!(h, Herm::zeros(k)),
                VPrime::Coset(c) => assert!(c.approx_eq(&Coset::trivial(k), 0.0)),
            }
            assert!(phi.coset_a1.approx_eq(&Coset::trivial(n - 1), 0.0));
            assert_eq!(phi.b1, Mat::zeros(n - 1, k));
        }

        let phi = phi_split(&Coset::new(Herm::diag(&[2.0, 0.0])), 2, 1).unwrap();
        let VPrime::Block(h) = phi.v_prime else { panic!() };
        assert_eq!(h, Herm::diag(&[-2.0]));
        assert_eq!(phi.coset_a1.rep(), &Herm::diag(&[2.0]));
        assert_eq!(phi.b1, Mat::zeros(1, 1));

        let swap = Herm::from_mat(Mat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]));
        let phi = phi_split(&Coset::new(swap), 2, 1).unwrap();
        let VPrime::Block(h) = phi.v_prime else { panic!() };
        assert_eq!(h, Herm::zeros(1));
        assert_eq!(phi.b1, Mat::from_real_rows(&[&[1.0]]));
    }

    #[test]
    fn phi_split_ignores_representative() {
        let mut rng = rng_from_seed(1);
        let s = crate::sample::random_herm(Field::Complex, 4, &mut rng);
        let a = phi_split(&Coset::new(s.clone()), 3, 2).unwrap();
        let b = phi_split(&Coset::new(s.shift(-3.25)), 3, 2).unwrap();
        let (VPrime::Block(ha), VPrime::Block(hb)) = (a.v_prime, b.v_prime) else {
            panic!()
        };
        assert!((ha.as_mat() - hb.as_mat()).norm_fro() < 1e-14);
        assert!(a.coset_a1.approx_eq(&b.coset_a1, 1e-14));
        assert_eq!(a.b1, b.b1);
    }

    #[test]
    fn phi_split_rejects_shape_mismatch() {
        assert!(phi_split(&Coset::trivial(3), 3, 2).is_err());
        assert!(phi_split(&Coset::trivial(3), 0, 2).is_err());
    }

    #[test]
    fn section_examples() {
        let p = real_point(&[&[2.0, 0.0], &[0.0, 1.0]], &[&[0.0], &[0.0]]).unwrap();
        let z = section_pi0(&p).unwrap();
        assert_eq!(z.shape(), (2, 2));
        assert_eq!(z[(0, 0)].norm(), 1.0);
        assert_eq!(z[(1, 0)], ZERO);
        assert_eq!(z.block(0, 1, 2, 1), Mat::zeros(2, 1));

        let p = real_point(&[&[0.0]], &[&[1.0, 0.0]]).unwrap();
        let z = section_pi0(&p).unwrap();
        assert_eq!(z, Mat::from_real_rows(&[&[1.0, 0.0]]));

        let p = real_point(&[&[1.0, 0.0], &[0.0, 1.0]], &[&[0.0], &[1.0]]).unwrap();
        let z = section_pi0(&p).unwrap();
        assert_eq!(z, Mat::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(ONE, ZERO), (1.0, ZERO));
        assert_eq!(gamma(ZERO, ONE), (-1.0, ZERO));
        assert_eq!(gamma(c(0.0, 1.0), c(0.0, 1.0)), (0.0, c(-1.0, 0.0)));
    }

    #[test]
    fn k1_base_case_is_tautological() {
        let p = real_point(&[&[0.0]], &[&[3.0]]).unwrap();
        let q = evaluate_k1(&p).unwrap();
        assert!(q.v.is_empty());
        assert_eq!(q.nu, Some(c(3.0, 0.0)));
    }

    #[test]
    fn k1_hand_trace() {
        // A₀ = diag(1,0), Y = ±e₁, det Z = 0, Z*Z = diag(1,0): v′ = 0 − 1 = −1,
        // sub-point (coset of (1), B₁ = 0) gives λ = 0, γ(0, 0) = (0, 0).
        let p = real_point(&[&[2.0, 0.0], &[0.0, 1.0]], &[&[0.0], &[0.0]]).unwrap();
        let q = evaluate_k1(&p).unwrap();
        assert_eq!(q.v, vec![-1.0, 0.0]);
        assert_eq!(q.nu, Some(ZERO));
    }

    #[test]
    fn k2_trivial_space() {
        let p = ReprPoint::new(Field::Real, Coset::trivial(0), Mat::zeros(0, 2)).unwrap();
        assert_eq!(evaluate_k2(&p).unwrap(), QuotientValue { v: vec![], nu: None });
    }

    #[test]
    fn k2_hand_trace() {
        // Z = B = (1, 0), Z*Z = diag(1, 0), traceless diag(1/2, −1/2): (s₁₁, s₁₂).
        let p = real_point(&[&[0.0]], &[&[1.0, 0.0]]).unwrap();
        assert_eq!(evaluate_k2(&p).unwrap().v, vec![0.5, 0.0]);
        let p = real_point(&[&[0.0]], &[&[-1.0, 0.0]]).unwrap();
        assert_eq!(evaluate_k2(&p).unwrap().v, vec![0.5, 0.0]);
    }

    #[test]
    fn k2_level_one_closed_form() {
        // b = (x, y): v = ((x² − y²)/2, x·y)
        let p = real_point(&[&[7.0]], &[&[0.3, -1.1]]).unwrap();
        let v = evaluate_k2(&p).unwrap().v;
        assert!((v[0] - (0.09 - 1.21) / 2.0).abs() < 1e-15);
        assert!((v[1] + 0.33).abs() < 1e-15);
    }

    #[test]
    fn dim_v_examples() {
        assert_eq!(dim_v(Field::Real, 1, 1), 0);
        assert_eq!(dim_v(Field::Real, 2, 1), 2);
        assert_eq!(dim_v(Field::Complex, 1, 3), 4);
        assert_eq!(dim_v(Field::Complex, 2, 1), 3);
        assert_eq!(dim_v(Field::Real, 2, 0), 0);
        assert_eq!(dim_v(Field::Real, 2, 3), 8);
    }

    #[test]
    fn output_length_matches_dim_v() {
        let mut rng = rng_from_seed(8);
        for field in Field::ALL {
            for k in 1..=2 {
                for n in (2 - k)..=7 {
                    let p = random_point(field, n, k, &mut rng);
                    let q = evaluate(&p).unwrap();
                    assert_eq!(q.v.len(), dim_v(field, k, n), "{field} k={k} n={n}");
                    assert_eq!(q.nu.is_some(), k == 1);
                }
            }
        }
    }

    #[test]
    fn k2_invariant_under_orthogonal_group() {
        let mut rng = rng_from_seed(21);
        for field in Field::ALL {
            for n in 1..=5 {
                for seed in 0..20 {
                    let p = random_point(field, n, 2, &mut rng);
                    let g = random_orthogonal(field, n, seed);
                    let a = evaluate_k2(&p).unwrap();
                    let b = evaluate_k2(&act_point(&g, &p)).unwrap();
                    assert!(a.approx_eq(&b, 1e-7), "{field} n={n}: {a:?} vs {b:?}");
                }
            }
        }
    }

    #[test]
    fn k1_invariant_under_special_and_equivariant_under_orthogonal() {
        let mut rng = rng_from_seed(22);
        for field in Field::ALL {
            for n in 1..=5 {
                for seed in 0..20 {
                    let p = random_point(field, n, 1, &mut rng);
                    let a = evaluate_k1(&p).unwrap();
                    let s = random_special(field, n, seed);
                    let b = evaluate_k1(&act_point(&s, &p)).unwrap();
                    assert!(a.approx_eq(&b, 1e-7), "{field} n={n}: {a:?} vs {b:?}");

                    let g = random_orthogonal(field, n, seed + 1000);
                    let b = evaluate_k1(&act_point(&g, &p)).unwrap();
                    let expected = QuotientValue {
                        v: a.v.clone(),
                        nu: a.nu.map(|nu| nu * g.det()),
                    };
                    assert!(expected.approx_eq(&b, 1e-7), "{field} n={n}");
                }
            }
        }
    }

    #[test]
    fn k1_separates_reflections_over_reals() {
        // generic point and its mirror image differ in the sign of nu
        let mut rng = rng_from_seed(23);
        let p = random_point(Field::Real, 3, 1, &mut rng);
        let refl = crate::group::GroupElement::from_matrix(Field::Real, Mat::diag_real(&[1.0, 1.0, -1.0]));
        let a = evaluate_k1(&p).unwrap();
        let b = evaluate_k1(&act_point(&refl, &p)).unwrap();
        assert!((a.nu.unwrap() + b.nu.unwrap()).norm() < 1e-9);
        assert!(a.nu.unwrap().norm() > 1e-6);
    }

    #[test]
    fn pi0_inverts_section() {
        let mut rng = rng_from_seed(4);
        for field in Field::ALL {
            for k in 1..=2 {
                for n in 1..=5 {
                    let p = random_point(field, n, k, &mut rng);
                    let z = section_pi0(&p).unwrap();
                    let (c, b) = pi0(&z, k);
                    assert!(c.approx_eq(&p.coset, 1e-9));
                    assert_eq!(b, p.b);
                }
            }
        }
    }

    #[test]
    fn quotient_value_json_layout() {
        let q = QuotientValue {
            v: vec![],
            nu: Some(c(3.0, 0.0)),
        };
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"v":[],"nu":[3.0,0.0]}"#);
        let q = QuotientValue {
            v: vec![0.5, 0.0],
            nu: None,
        };
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"v":[0.5,0.0]}"#);
        let back: QuotientValue = serde_json::from_str(r#"{"v":[0.5,0.0]}"#).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(ReprPoint::new(Field::Real, Coset::trivial(0), Mat::zeros(0, 1)).is_err());
        assert!(ReprPoint::new(Field::Real, Coset::trivial(2), Mat::zeros(2, 3)).is_err());
        assert!(ReprPoint::new(Field::Real, Coset::trivial(2), Mat::zeros(3, 1)).is_err());
        let cplx = Mat::column(&[c(0.0, 1.0)]);
        assert!(ReprPoint::new(Field::Real, Coset::trivial(1), cplx).is_err());
        let p = real_point(&[&[0.0]], &[&[1.0, 0.0]]).unwrap();
        assert!(evaluate_k1(&p).is_err());
    }
}
