//! Exact linear algebra over `Q` and over a quadratic extension `Q(sqrt d)`.

mod matrix;
mod scalar;
mod vector;

pub use matrix::{
    orthogonal_complement, project_onto_span, rank, reaches_rank, reduce_modulo, row_reduce, rref, rref_coordinates, span_basis,
    Matrix, RowReduction,
};
pub use scalar::{Field, Rational, Scalar};
pub use vector::Vector;
