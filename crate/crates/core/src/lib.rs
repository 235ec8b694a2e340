//! Exact combinatorics of wall-crossing: lattices, root systems, quiver
//! GIT chambers, Bridgeland walls on K3 surfaces and positive-cone
//! geometry of Hilbert schemes of points.

pub mod arrangement;
pub mod cone;
pub mod error;
pub mod k3;
pub mod lattice;
pub mod linalg;
pub mod quiver;
pub mod rational;
pub mod roots;
pub mod slice;

pub use error::{Error, Result};
pub use rational::Q;
