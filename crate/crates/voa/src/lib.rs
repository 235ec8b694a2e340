//! Lattice vertex algebra V_Λ = Fock ⊗ ℚ[Λ]_ε, truncated by Fock degree,
//! with exact relation checks for the Frenkel–Kac action.

pub mod algebra;
pub mod cocycle;
pub mod engine;
pub mod fock;
pub mod matrix;
pub mod relations;

pub use algebra::{weight_decomposition, Chevalley, LatticeVOA, ModeOperator};
pub use cocycle::{build_cocycle, Cocycle};
pub use fock::{Monomial, State, VOAElement};
