//! Exact sparse multivariate polynomials, rewrite-rule normal forms and
//! grading.

mod monomial;
mod polynomial;
mod rewrite;
mod varset;

pub use monomial::Monomial;
pub(crate) use polynomial::render_terms;
pub use polynomial::{Degree, Polynomial};
pub use rewrite::RewriteSystem;
pub use varset::VarSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("polynomials are over different variable sets")]
    VarSetMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("elementary symmetric degree {k} exceeds the {available} listed variables")]
    SymmetricDegree { k: usize, available: usize },
    #[error("invalid rewrite rule for `{var}`: {reason}")]
    InvalidRule { var: String, reason: &'static str },
}
