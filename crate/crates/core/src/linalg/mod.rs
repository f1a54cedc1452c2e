//! Exact rational linear algebra: scalars, sparse vectors and matrices,
//! rank, kernels and linear solves.

mod elimination;
mod rational;
mod sparse;

pub use elimination::Span;
pub use rational::{cmp_integer, common_denominator, Rational};
pub use sparse::{kernel_basis, rank, solve, Accumulator, SparseMatrix, SparseVector};
