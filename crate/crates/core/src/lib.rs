//! Lower bounds for van der Waerden numbers.
//!
//! A coloring of `1..n` with `r` colors and no monochromatic `k`-term
//! arithmetic progression certifies `W(k, r) > n`. This crate builds such
//! colorings from number-theoretic constructions, checks them, and keeps a
//! table of the best bounds found.

pub mod bounds;
pub mod colorings;
pub mod error;
pub mod numtheory;
pub mod sweep;
pub mod transforms;
pub mod verifier;

pub use error::{Error, Result};
