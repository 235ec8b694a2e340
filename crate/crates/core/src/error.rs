use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("isotropic vector where a non-isotropic one is required")]
    Isotropic,
    #[error("result is not integral")]
    NotIntegral,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("expected a finite root system")]
    NotFinite,
    #[error("expected an affine quiver")]
    NotAffine,
    #[error("root system is reducible")]
    Reducible,
    #[error("point lies on a wall: {0}")]
    OnWall(String),
    #[error("negative count {what} = {value}")]
    NegativeCount { what: String, value: i64 },
    #[error("subspace is not invariant under the representation")]
    NotInvariant,
    #[error("central charge vanishes")]
    VanishingCharge,
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("no solution found: {0}")]
    Infeasible(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
