//! Exact arithmetic substrate: scalars, dense matrices, integer normal forms
//! and sparse multivariate polynomials.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod smith;

pub use matrix::Matrix;
pub use poly::{poly_determinant, Monomial, MultiPoly};
pub use scalar::{Field, Scalar};
pub use smith::{hnf, integer_kernel, smith_normal_form, snf, IntRows, Smith};
