//! Orbit-equality evidence that does not go through the quotient maps.
//!
//! * [`so_orbit_equal`] is an exact test for `X ↦ X·C⁻¹`, `C ∈ SO(W)`.
//! * [`signature`] collects manifestly `O(W)`-invariant functions of a point;
//!   distinct signatures prove distinct orbits (the converse is not claimed).
//! * [`alignment_search`] minimizes the distance between `C·p` and `p′` over
//!   the group by random restarts followed by coordinate descent over
//!   one-parameter subgroups (Givens rotations and phases).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::group::{sample_orthogonal, sample_special, GroupElement};
use crate::linalg::{det, gram, herm_eigen, Field, Mat};
use crate::sample::rng_from_seed;
use crate::spectral::canonical_singular_rep;
use crate::tol;
use crate::tower::ReprPoint;

/// `gram(X) = gram(X′)` and `det X = det X′`, both relative to `rel_tol`.
pub fn so_orbit_equal(x: &Mat, x2: &Mat, rel_tol: f64) -> bool {
    assert!(
        x.is_square() && x.shape() == x2.shape(),
        "so_orbit_equal shape mismatch"
    );
    let (g1, g2) = (gram(x), gram(x2));
    let scale = tol::scale(g1.as_mat().norm_fro().max(g2.as_mat().norm_fro()));
    if (g1.as_mat() - g2.as_mat()).norm_fro() > rel_tol * scale {
        return false;
    }
    let (d1, d2) = (det(x), det(x2));
    (d1 - d2).norm() <= rel_tol * tol::scale(d1.norm().max(d2.norm()))
}

/// `O(W)`-invariants of a point.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSignature {
    /// Eigenvalues of the singular PSD representative `A₀`, descending.
    pub spectrum: Vec<f64>,
    /// Entries of `B*·A₀ʲ·B`, `j = 0..n−1`, row-major, with `re, im` pairs
    /// over ℂ and only `re` over ℝ.
    pub moments: Vec<f64>,
}

impl InvariantSignature {
    pub fn spectrum_distance(&self, other: &InvariantSignature) -> f64 {
        max_abs_diff(&self.spectrum, &other.spectrum)
    }

    pub fn moment_distance(&self, other: &InvariantSignature) -> f64 {
        max_abs_diff(&self.moments, &other.moments)
    }

    /// Largest coordinate gap over both components.
    pub fn distance(&self, other: &InvariantSignature) -> f64 {
        self.spectrum_distance(other).max(self.moment_distance(other))
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
}

pub fn signature(p: &ReprPoint) -> Result<InvariantSignature> {
    let a0 = canonical_singular_rep(&p.coset)?;
    let spectrum = herm_eigen(&a0)?.values;
    let mut moments = Vec::new();
    let mut power_b = p.b.clone(); // A₀ʲ·B
    let b_adj = p.b.adjoint();
    for j in 0..p.n() {
        if j > 0 {
            power_b = a0.as_mat() * &power_b;
        }
        let m = &b_adj * &power_b;
        for z in m.as_slice() {
            moments.push(z.re);
            if p.field == Field::Complex {
                moments.push(z.im);
            }
        }
    }
    Ok(InvariantSignature { spectrum, moments })
}

/// Invariants of `X ↦ X·C⁻¹` on `End(W)`: eigenvalues of `X·X*` and `det X`.
pub fn end_invariants(x: &Mat) -> Result<Vec<f64>> {
    let mut out = herm_eigen(&gram(x))?.values;
    let d = det(x);
    out.push(d.re);
    out.push(d.im);
    Ok(out)
}

/// Which group the alignment search ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignGroup {
    Orthogonal,
    Special,
}

#[derive(Debug, Clone, Copy)]
pub struct AlignOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// Stop as soon as a distance at or below this is found.
    pub good_enough: f64,
}

impl AlignOptions {
    pub fn with_restarts(restarts: usize) -> Self {
        AlignOptions {
            restarts,
            max_sweeps: 100,
            good_enough: 1e-12,
        }
    }
}

/// Something `O(n)` acts on, with a squared distance to a target.
trait Alignable: Clone {
    fn act(&self, g: &Mat) -> Self;
    fn dist2(&self, target: &Self) -> f64;
}

#[derive(Clone)]
struct PointState {
    traceless: Mat,
    b: Mat,
}

impl PointState {
    fn new(p: &ReprPoint) -> Self {
        PointState {
            traceless: p.coset.normal_form().into_mat(),
            b: p.b.clone(),
        }
    }
}

impl Alignable for PointState {
    fn act(&self, g: &Mat) -> Self {
        PointState {
            traceless: &(g * &self.traceless) * &g.adjoint(),
            b: g * &self.b,
        }
    }

    fn dist2(&self, target: &Self) -> f64 {
        let da = (&self.traceless - &target.traceless).norm_fro();
        let db = (&self.b - &target.b).norm_fro();
        da * da + db * db
    }
}

#[derive(Clone)]
struct EndState(Mat);

impl Alignable for EndState {
    // group element C acts as X ↦ X·C⁻¹
    fn act(&self, g: &Mat) -> Self {
        EndState(&self.0 * &g.adjoint())
    }

    fn dist2(&self, target: &Self) -> f64 {
        let d = (&self.0 - &target.0).norm_fro();
        d * d
    }
}

#[derive(Debug, Clone, Copy)]
enum Generator {
    /// real rotation in the `(i, j)` plane
    Givens(usize, usize),
    /// `[[cos, i·sin], [i·sin, cos]]` in the `(i, j)` plane
    ImagGivens(usize, usize),
    /// `e^{iθ}` on coordinate `i`
    Phase(usize),
    /// `diag(e^{iθ}, e^{−iθ})` on `(i, j)`
    PhasePair(usize, usize),
}

impl Generator {
    fn matrix(self, n: usize, theta: f64) -> Mat {
        let (c, s) = (theta.cos(), theta.sin());
        let mut g = Mat::identity(n);
        match self {
            Generator::Givens(i, j) => {
                g[(i, i)] = Complex64::new(c, 0.0);
                g[(j, j)] = Complex64::new(c, 0.0);
                g[(i, j)] = Complex64::new(-s, 0.0);
                g[(j, i)] = Complex64::new(s, 0.0);
            }
            Generator::ImagGivens(i, j) => {
                g[(i, i)] = Complex64::new(c, 0.0);
                g[(j, j)] = Complex64::new(c, 0.0);
                g[(i, j)] = Complex64::new(0.0, s);
                g[(j, i)] = Complex64::new(0.0, s);
            }
            Generator::Phase(i) => g[(i, i)] = Complex64::new(c, s),
            Generator::PhasePair(i, j) => {
                g[(i, i)] = Complex64::new(c, s);
                g[(j, j)] = Complex64::new(c, -s);
            }
        }
        g
    }
}

fn generators(field: Field, n: usize, group: AlignGroup) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Generator::Givens(i, j));
            if field == Field::Complex {
                out.push(Generator::ImagGivens(i, j));
                if group == AlignGroup::Special {
                    out.push(Generator::PhasePair(i, j));
                }
            }
        }
        if field == Field::Complex && group == AlignGroup::Orthogonal {
            out.push(Generator::Phase(i));
        }
    }
    out
}

// Along any generator the objective is a trigonometric polynomial of degree
// ≤ 4 in θ, so nine equispaced samples determine it exactly.
const SAMPLES: usize = 9;
const DEGREE: usize = 4;
const GRID: usize = 96;

struct TrigPoly {
    a: [f64; DEGREE + 1],
    b: [f64; DEGREE + 1],
}

impl TrigPoly {
    fn fit(values: &[f64; SAMPLES]) -> TrigPoly {
        let mut a = [0.0; DEGREE + 1];
        let mut b = [0.0; DEGREE + 1];
        for (j, &f) in values.iter().enumerate() {
            let t = 2.0 * PI * j as f64 / SAMPLES as f64;
            for m in 0..=DEGREE {
                let w = if m == 0 { 1.0 } else { 2.0 } / SAMPLES as f64;
                a[m] += w * f * (m as f64 * t).cos();
                b[m] += w * f * (m as f64 * t).sin();
            }
        }
        TrigPoly { a, b }
    }

    /// Value and first two derivatives.
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        let (mut f, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for m in 0..=DEGREE {
            let mf = m as f64;
            let (s, c) = (mf * t).sin_cos();
            f += self.a[m] * c + self.b[m] * s;
            d1 += mf * (-self.a[m] * s + self.b[m] * c);
            d2 += -mf * mf * (self.a[m] * c + self.b[m] * s);
        }
        (f, d1, d2)
    }

    fn argmin(&self) -> f64 {
        let mut best = (0.0, self.eval(0.0).0);
        for g in 1..GRID {
            let t = 2.0 * PI * g as f64 / GRID as f64 - PI;
            let f = self.eval(t).0;
            if f < best.1 {
                best = (t, f);
            }
        }
        let mut t = best.0;
        for _ in 0..6 {
            let (_, d1, d2) = self.eval(t);
            if d2 <= 0.0 {
                break;
            }
            let step = d1 / d2;
            t -= step.clamp(-PI / GRID as f64, PI / GRID as f64);
        }
        t
    }
}

fn descend<S: Alignable>(start: S, target: &S, gens: &[Generator], n: usize, max_sweeps: usize) -> f64 {
    let mut cur = start;
    let mut f = cur.dist2(target);
    for _ in 0..max_sweeps {
        let before = f;
        for &g in gens {
            let mut samples = [0.0; SAMPLES];
            for (j, s) in samples.iter_mut().enumerate() {
                let t = 2.0 * PI * j as f64 / SAMPLES as f64;
                *s = if j == 0 {
                    f
                } else {
                    cur.act(&g.matrix(n, t)).dist2(target)
                };
            }
            let t = TrigPoly::fit(&samples).argmin();
            let candidate = cur.act(&g.matrix(n, t));
            let fc = candidate.dist2(target);
            if fc < f {
                cur = candidate;
                f = fc;
            }
        }
        if f == 0.0 || before - f <= 1e-13 * before {
            break;
        }
    }
    f
}

fn search<S: Alignable>(
    start: &S,
    target: &S,
    field: Field,
    n: usize,
    group: AlignGroup,
    opts: AlignOptions,
    seed: u64,
) -> f64 {
    let gens = generators(field, n, group);
    let mut rng = rng_from_seed(seed);
    let mut best = f64::INFINITY;
    for restart in 0..opts.restarts.max(1) {
        let c = if restart == 0 {
            GroupElement::identity(field, n)
        } else {
            match group {
                AlignGroup::Orthogonal => sample_orthogonal(field, n, &mut rng),
                AlignGroup::Special => sample_special(field, n, &mut rng),
            }
        };
        let f = descend(start.act(c.matrix()), target, &gens, n, opts.max_sweeps);
        best = best.min(f.max(0.0).sqrt());
        if best <= opts.good_enough {
            break;
        }
    }
    best
}

/// `min over C of ‖(C·A·C⁻¹ + ℝE, C·B) − p′‖` (traceless coset distance).
pub fn alignment_search(p: &ReprPoint, q: &ReprPoint, trials: usize, seed: u64, group: AlignGroup) -> f64 {
    alignment_search_with(p, q, seed, group, AlignOptions::with_restarts(trials))
}

pub fn alignment_search_with(p: &ReprPoint, q: &ReprPoint, seed: u64, group: AlignGroup, opts: AlignOptions) -> f64 {
    assert_eq!(
        (p.field, p.n(), p.k()),
        (q.field, q.n(), q.k()),
        "alignment of points of different type"
    );
    if p.n() == 0 {
        return 0.0;
    }
    search(
        &PointState::new(p),
        &PointState::new(q),
        p.field,
        p.n(),
        group,
        opts,
        seed,
    )
}

/// `min over C ∈ SO(n) of ‖X·C⁻¹ − X′‖`.
pub fn alignment_search_end(field: Field, x: &Mat, x2: &Mat, trials: usize, seed: u64) -> f64 {
    assert!(
        x.is_square() && x.shape() == x2.shape(),
        "alignment_search_end shape mismatch"
    );
    let n = x.rows();
    let opts = AlignOptions::with_restarts(trials);
    search(
        &EndState(x.clone()),
        &EndState(x2.clone()),
        field,
        n,
        AlignGroup::Special,
        opts,
        seed,
    )
}
