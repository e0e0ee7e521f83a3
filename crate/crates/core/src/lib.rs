//! Continuous quotient maps for the compact groups `O(W)` and `SO(W)` acting
//! on `(S(W)/ℝE) ⊕ Hom(F^k, W)`, `F ∈ {ℝ, ℂ}`, `k ∈ {1, 2}`.
//!
//! The maps are built by recursion on `dim W` ([`tower`]) from two classical
//! facts: `X ↦ (XX*, det X)` separates the orbits of `X ↦ XC⁻¹`, `C ∈ SO(W)`,
//! and `X ↦ XX*` separates the orbits of `X ↦ XC₁⁻¹`, `C₁ ∈ O(W₁)`
//! ([`spectral`]). The remaining modules sample group elements
//! ([`group`]), supply independent orbit-equality evidence ([`oracle`]) and
//! run property suites over many random trials ([`verify`]).
//!
//! ```
//! use orbitq::tower::{evaluate_k2, real_point};
//!
//! let p = real_point(&[&[0.0]], &[&[1.0, 0.0]]).unwrap();
//! assert_eq!(evaluate_k2(&p).unwrap().v, vec![0.5, 0.0]);
//! ```

pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod sample;
pub mod spectral;
pub mod tol;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Field, Herm, Mat, Scalar};
pub use spectral::Coset;
pub use tower::{dim_v, evaluate, evaluate_k1, evaluate_k2, QuotientValue, ReprPoint};
