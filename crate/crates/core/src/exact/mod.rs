//! Exact arithmetic substrate.

pub mod bernoulli;
pub mod biquad;
pub mod fq;
pub mod int;
pub mod quad;
pub mod ratio;
pub mod residue;
pub mod scalar;
