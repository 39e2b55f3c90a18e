//! Exact verification engine for the arithmetic classification of fake
//! projective planes.
//!
//! Layering, bottom up: [`exact`] (rationals, Bernoulli numbers, finite
//! fields, quadratic and biquadratic field elements), [`characters`]
//! (quadratic Dirichlet characters and L-values at negative integers),
//! [`catalog`] (the pair data and its validation), [`parahoric`] (Euler
//! factors and the covolume chain), [`torsion`], [`cubes`] (cube classes and
//! local cube tests) and [`classify`] (the census).

pub mod catalog;
pub mod characters;
pub mod classify;
pub mod cubes;
mod error;
pub mod exact;
pub mod parahoric;
pub mod torsion;

pub use error::{Error, Result};
pub use exact::biquad::BiquadElem;
pub use exact::fq::{Fq, FqElem};
pub use exact::quad::QuadElem;
pub use exact::scalar::Scalar;

/// Exact rational number; the value type for every covolume and L-value.
pub type Rat = num_rational::BigRational;
/// Element of a quadratic field with exact rational coordinates.
pub type Quad = QuadElem<Rat>;
/// Element of a biquadratic field with exact rational coordinates.
pub type Biquad = BiquadElem<Rat>;
