//! Exact rational and integer linear algebra, polynomials, Sturm root counting.

mod intmatrix;
mod matrix;
mod mpoly;
mod poly;
mod rational;

pub use intmatrix::{smith_normal_form, IntMatrix, SmithForm};
pub use matrix::{kernel_basis, symmetric_signature, Matrix};
pub use mpoly::{mpoly_det, MPoly};
pub use poly::{all_roots_real_nonpositive, char_poly, rational_roots, sturm_chain, Polynomial};
pub use rational::*;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero polynomial has no root structure")]
    ZeroPolynomial,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
