//! Sparse multivariate polynomials and commutative ideal theory.

mod groebner;
mod ideal;
mod multipoly;
mod order;
mod solve;
mod space;

use thiserror::Error;

use crate::scalar::FieldError;

pub use groebner::{groebner_basis, Budget, GroebnerBasis, DEFAULT_BUDGET};
pub use ideal::{
    eliminate, krull_dim_zero_check, multigrade_decompose, point_ideal, poly_gcd,
    radical_membership, Ideal,
};
pub use multipoly::{poly_arith, MultiPoly, PolyOp};
pub use order::MonomialOrder;
pub use solve::{field_points, rational_points, squarefree_eliminants};
pub use space::VarSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different variable spaces")]
    SpaceMismatch,
    #[error("invalid variable space: {0}")]
    InvalidSpace(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("step budget of {0} reductions exceeded")]
    BudgetExceeded(u64),
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error(transparent)]
    Field(#[from] FieldError),
}
