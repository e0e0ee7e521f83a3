//! Tolerances shared across the crate.

/// Relative tolerance for algebraic identities (one or two factorizations deep).
pub const ALGEBRAIC: f64 = 1e-9;

/// Relative tolerance for end-to-end comparisons of quotient values.
pub const COMPOSITE: f64 = 1e-7;

/// Eigenvalues below `RANK * max(1, λ_max)` count as zero.
pub const RANK: f64 = 1e-9;

/// Relative accuracy of the determinant match in the surjectivity witness.
pub const ROOT_FIND: f64 = 1e-12;

/// Signature gaps above this certify distinct orbits.
pub const SEPARATION: f64 = 1e-5;

/// `max(1, x)`; the scale used by every relative comparison.
#[inline]
pub fn scale(x: f64) -> f64 {
    x.max(1.0)
}
