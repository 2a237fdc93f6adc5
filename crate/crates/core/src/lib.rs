//! Exact computational dynamics of commuting rational maps on the
//! projective line: cyclotomic scalars, polynomial kernels, rational-map
//! algebra, Ritt sequences, correspondences, periodic points, numeric
//! exponent probes and semigroup orbits.

pub mod catalog;
pub mod chebylattes;
pub mod correspondence;
pub mod error;
pub mod exponents;
pub mod field;
pub mod golden;
pub mod mobius;
pub mod numeric;
pub mod parse;
pub mod periodic;
pub mod poly;
mod quotient;
pub mod ratmap;
pub mod ritt;
pub mod semigroup;

pub use error::{Error, Result};
pub use field::FieldElement;
pub use mobius::Mobius;
pub use poly::{BiPoly, Poly, Polynomial};
pub use ratmap::{compose, iterate, ProjPoint, RatFunc, RationalMap};
