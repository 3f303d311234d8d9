//! Exact rational scalars, vectors and matrices.

mod matrix;
mod scalar;
mod vector;

pub(crate) use matrix::rank_of_int_rows;
pub use matrix::{nullspace, RationalMatrix};
pub use scalar::{
    denominator_lcm, format_rational, frac, int, make_primitive, parse_rational, primitive_integers, to_f64, Rational,
};
pub use vector::{rational_string, SpectralVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("matrix not invertible")]
    Singular,
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("{0}")]
    Parse(String),
}
