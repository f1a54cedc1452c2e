//! The Lie superalgebra `W(n)` of derivations of `Λ[ξ_1, …, ξ_n]` and its
//! subalgebras `sl(1, n)` and `gl(n) = W_0`.

mod algebra;
pub mod checks;
mod derivation;
pub mod roots;

pub use algebra::{Algebra, AlgebraKind};
pub use checks::{simplicity_probe, verify_super_jacobi, JacobiReport, SimplicityReport};
pub use derivation::{basis, BasisDerivation, SuperDerivation};
pub use roots::{
    complement_basis, complement_degree_one_character, complement_roots, complement_weights,
    component_character, euler_field, min_complement_height, root_data, sl_embedding, weight_space,
    xi_euler, RootDatum, SpaceParity, WeightSpace,
};
