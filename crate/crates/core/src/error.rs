use thiserror::Error;

use crate::poly::PolyError;
use crate::scalar::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the form is zero")]
    ZeroForm,
    #[error("the form does not define a distribution")]
    NotADistribution,
    #[error("the form is not invariant under the diagonal torus")]
    NotTorusInvariant,
    #[error("no logarithmic normal form: {0}")]
    NotLogarithmic(String),
    #[error("the binary form is identically zero")]
    DegeneratePencil,
    #[error("the function is constant")]
    ConstantFunction,
    #[error("the variety is empty (unit ideal)")]
    EmptyVariety,
    #[error("the vector field is zero")]
    ZeroField,
    #[error("the point is not a singular point: component {0} does not vanish")]
    NotASingularPoint(usize),
    #[error("characteristic polynomial has the unresolved factor {0}")]
    UnresolvedFactor(String),
    #[error("the reference eigenvalue is zero")]
    ZeroEigenvalue,
    #[error("the leaf is not invariant: {0}")]
    LeafNotInvariant(String),
    #[error("the operator is zero")]
    ZeroOperator,
    #[error("operands have different sizes")]
    SizeMismatch,
    #[error("infinitely many solutions: {0}")]
    InfiniteFamily(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Poly(PolyError::BudgetExceeded(_)))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
