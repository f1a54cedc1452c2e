//! Exact-arithmetic toolkit for the Lie superalgebra `W(n)` of derivations of
//! a Grassmann algebra: the algebra itself, `gl(n)` highest-weight theory,
//! Kac modules, Chevalley–Eilenberg cohomology in low degrees, blocks,
//! Ext-quiver fragments and quiver representation type.

pub mod blocks;
pub mod cohomology;
pub mod error;
pub mod gl;
pub mod grassmann;
pub mod kac;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod verify;
pub mod walg;
pub mod weight;

pub use error::{Error, Result};
pub use linalg::{Rational, SparseMatrix, SparseVector};
pub use module::{FiniteModule, Representation};
pub use weight::Weight;
