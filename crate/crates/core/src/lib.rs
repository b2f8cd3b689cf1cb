//! Exact symbolic computations for polynomial foliations: characteristic
//! varieties, Hamiltonian prolongation, singularity analysis, differential
//! forms and Weyl algebra symbols.

pub mod error;
pub mod exterior;
pub mod foliation;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod singularity;
pub mod univariate;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::{Budget, Ideal, MonomialOrder, MultiPoly, PolyError, VarSpace};
pub use scalar::{FieldError, NfElement, NumberField, Scalar};
