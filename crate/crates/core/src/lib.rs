//! Exact computer algebra for the quantum torus model of the torus skein
//! algebra, annihilating polynomials of skein module generators, and the
//! finiteness analysis of Dehn fillings: excluded slopes, explicit
//! spanning sets and dimension bounds, with replayable reduction
//! certificates.
//!
//! All arithmetic is exact; there is no floating point anywhere. Values
//! are immutable and operations are pure functions, so everything is safe
//! to use from concurrent callers.

pub mod annihilator;
pub mod coeff;
pub mod doc;
pub mod filling;
pub mod lattice;
pub mod qtorus;
pub mod skein_t2;

pub use coeff::{CoeffError, CoeffField, CoeffTag, LaurentPoly, QAm2, RatFunc};
pub use qtorus::{ExponentPair, SymmetricClass, SymmetricElement, TorusElement};
