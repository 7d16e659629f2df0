//! Exact scalar arithmetic and exact linear algebra.

mod matrix;
mod scalar;

pub use matrix::{mat_rank_kernel, Matrix, Vector};
pub use scalar::{exact_arith, ArithOp, Scalar};
