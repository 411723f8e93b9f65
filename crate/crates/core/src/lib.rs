//! Exact Hankel determinants of forward- and backward-shifted Catalan-type
//! sequences, closed-form predictions for them, and a grid verifier.

pub mod closed_forms;
pub mod error;
pub mod exact_ring;
pub mod hankel;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use exact_ring::{binomial, ExactInt, Poly, Rational, Series};
pub use sequences::{SeqFamily, Sequence};
pub use hankel::{DetResult, Engine, HankelSpec, Matrix};
