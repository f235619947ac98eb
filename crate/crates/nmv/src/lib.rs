//! Exact computation of multidegrees of closed images of rational maps
//! from projective space into a product of projective spaces.
//!
//! Three independent routes are provided and cross-validated: mixed volumes
//! of projected Newton polytopes (monomial maps), closed-form family
//! formulas, and a brute-force oracle that samples graded dimensions of
//! saturated products of ideal powers and fits multivariate Hilbert
//! polynomials. All arithmetic is exact.

pub mod engine;
pub mod error;
pub mod formulas;
pub mod linear;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod polytope;

pub use error::{Error, Result};
