//! Exact spectral analysis for functions on a slice of the Boolean hypercube.
//!
//! A *slice* is the set of 0/1 vectors of length `n` with exactly `k` ones,
//! identified with the k-subsets of `{1, ..., n}`. This crate builds Young's
//! orthogonal basis for real-valued functions on a slice — and, more
//! generally, for harmonic multilinear polynomials — entirely in exact
//! rational arithmetic, and layers the standard analytic toolkit on top of
//! it: Fourier-style expansion, influences, the transposition Laplacian and
//! its heat semigroup, Johnson-scheme (Bose–Mesner) spectra, and a
//! junta-approximation procedure for low-influence Boolean functions.
//!
//! Module map:
//!
//! * [`combinatorics`] — top sets (the basis index set), ballot encoding,
//!   enumeration and counting, companion sequences, the norm coefficient.
//! * [`poly`] — sparse multilinear polynomials over `BigRational`,
//!   harmonicity, and the basis elements `chi_B`.
//! * [`measures`] — exchangeable measures as exact moment oracles; inner
//!   products and the closed-form basis norms.
//! * [`expansion`] — functions on a slice and their Young–Fourier
//!   expansions; moments and symmetrization.
//! * [`operators`] — transposition action, influences, eigenvalue formulas,
//!   Laplacian/noise operators, and intersection-profile (Bose–Mesner)
//!   matrices.
//! * [`friedgut`] — important coordinates via matching, and the
//!   average-then-round junta approximation.
//!
//! Everything except the noise operator is exact: values are
//! arbitrary-precision rationals and all algebraic identities hold with zero
//! tolerance.

pub mod combinatorics;
pub mod error;
pub mod expansion;
pub mod friedgut;
pub mod measures;
pub mod operators;
pub mod poly;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Builds the exact rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
