//! Highest-weight theory of `gl(n)`.

mod character;
mod combinatorics;
mod irrep;

pub use character::{decomposition_entries, Character, WeightMult};
pub use combinatorics::{
    decompose_character, freudenthal, klimyk_tensor, tensor_by_characters, weyl_dim,
};
pub use irrep::{build_irrep, build_irrep_capped, GlIrrep, DEFAULT_IRREP_CAP};
