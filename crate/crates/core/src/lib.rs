//! Exact quantum and equivariant cohomology for manifolds with a semi-free
//! circle action whose fixed points are isolated.
//!
//! Such a manifold has the cohomology ring of `(P^1)^n`, with one fixed
//! point `p_I` for each subset `I ⊆ {1..n}`. This crate models
//!
//! - [`ring`]: exact sparse polynomials with rewrite-rule normal forms,
//! - [`morse`]: the fixed-point hypercube (indices, weights, gradient
//!   spheres, moment values),
//! - [`gkm`]: equivariant classes as tables of fixed-point restrictions,
//! - [`quantum`]: the quantum ring `Q[x, q]/(x_i^2 - q_i)`, the Seidel
//!   automorphism and a structure-constant solver,
//! - [`blowup`]: the one-point blow-up of `P^2`, where the Seidel element
//!   has higher-order terms,
//! - [`expr`]: the expression language used by the command line.
//!
//! Polynomial arithmetic is generic over the coefficient [`Scalar`]; the
//! geometry is done over [`Rational`].

pub mod blowup;
pub mod expr;
pub mod gkm;
pub mod linalg;
pub mod morse;
pub mod quantum;
pub mod ring;
pub mod scalar;

pub use scalar::{Field, Scalar};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers, for the `Z[y]` sub-case.
pub type Integer = num_bigint::BigInt;

/// Polynomials over [`Rational`].
pub type Poly = ring::Polynomial<Rational>;
/// Polynomials over [`Integer`].
pub type IntPoly = ring::Polynomial<Integer>;
/// Polynomials over machine floats; only for experiments, never used internally.
pub type FloatPoly = ring::Polynomial<f64>;

pub use blowup::{BlowupBasis, BlowupClass};
pub use gkm::EquivariantClass;
pub use morse::{MomentAssignment, SphereClassVector, SubsetPoint};
pub use quantum::{GWQuery, QuantumClass, QuantumRing};
pub use ring::{Degree, Monomial, Polynomial, RewriteSystem, VarSet};
