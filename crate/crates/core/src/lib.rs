//! Exact computations around EPW sextics and their duals: exterior algebra
//! on a six-dimensional space, determinantal sextics and their duality, the
//! discriminant-form arithmetic of the relevant period lattices, and the
//! Mukai-lattice isometry identities.

pub mod epw;
pub mod error;
pub mod exactalg;
pub mod exterior;
pub mod lattice;
pub mod mukai;
pub mod sampler;

pub use error::{Error, Result};
pub use exactalg::{Field, Matrix, MultiPoly, Scalar};
