//! Exact coefficient ring of trigonometric Laurent functions and matrix-valued
//! differential operators over it.

mod diffop;
mod matrix;
mod trig;
mod weight;

pub use diffop::{DerivIndex, MatrixDiffOp, MAX_ORDER};
pub use matrix::FunMatrix;
pub use trig::{Exponents, TrigLaurentFun, Var};
pub use weight::WeightFun;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("monomial {exponents:?} is not integrable on the open quadrant")]
    NonIntegrable { exponents: Exponents },
    #[error("operator order {order} exceeds the cap of {max}")]
    OrderOverflow { order: usize, max: usize },
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("expected a single-term element, found {terms} terms")]
    NotMonomial { terms: usize },
    #[error("weight must be a real, positive, θ-independent function: {0}")]
    InvalidWeight(String),
}
