//! The quantum cohomology ring `Q[x_1..x_n, q_1..q_n] / (x_i^2 - q_i)`.
//!
//! Classes are kept in normal form, with every `x`-exponent 0 or 1, so a
//! class is a `Λ = Q[q_1..q_n]`-combination of the basis `x_I = Π_{i∈I} x_i`.
//! The Novikov variable `e^B` for `B = Σ d_i A_i` is the monomial `q^d`.

pub mod solver;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::morse::{self, MorseError, SphereClassVector, SubsetPoint};
use crate::ring::{Degree, Monomial, RewriteSystem, RingError, VarSet};
use crate::{Poly, Rational};

pub use solver::{
    solve_structure_constants, solve_structure_constants_with, SolverConfig, SolverError, StructureTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("classes belong to rings of different dimension")]
    DimensionMismatch,
    #[error("operation needs q-free inputs")]
    NotQFree,
    #[error("sphere class {0} is not effective")]
    NotEffective(SphereClassVector),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Variable layout and reduction rules for a fixed `n`.
///
/// Variables are declared `q_1..q_n, x_1..x_n`, so `q`-factors render first.
#[derive(Debug)]
pub struct QuantumRing {
    n: usize,
    vars: Arc<VarSet>,
    quantum_rules: RewriteSystem<Rational>,
    classical_rules: RewriteSystem<Rational>,
}

impl QuantumRing {
    pub fn new(n: usize) -> Result<Arc<Self>, QuantumError> {
        morse::check_dimension(n)?;
        let vars = VarSet::new(
            (1..=n)
                .map(|i| (format!("q{i}"), Some(4)))
                .chain((1..=n).map(|i| (format!("x{i}"), Some(2)))),
        )?;
        let mut quantum_rules = RewriteSystem::new(&vars);
        let mut classical_rules = RewriteSystem::new(&vars);
        for i in 1..=n {
            let q = Poly::var_index(&vars, i - 1);
            quantum_rules = quantum_rules.with_rule(&format!("x{i}"), 2, q)?;
            classical_rules = classical_rules.with_rule(&format!("x{i}"), 2, Poly::zero(&vars))?;
        }
        Ok(Arc::new(QuantumRing {
            n,
            vars,
            quantum_rules,
            classical_rules,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn quantum_rules(&self) -> &RewriteSystem<Rational> {
        &self.quantum_rules
    }

    pub(crate) fn x_var(&self, i: usize) -> usize {
        self.n + i - 1
    }

    pub(crate) fn q_var(&self, i: usize) -> usize {
        i - 1
    }

    /// The monomial `x_I · q^d`.
    pub(crate) fn basis_monomial(&self, x: &SubsetPoint, q: &[u32]) -> Monomial {
        Monomial::from_pairs(
            x.members()
                .map(|i| (self.x_var(i), 1))
                .chain(q.iter().enumerate().map(|(idx, &e)| (self.q_var(idx + 1), e))),
        )
    }

    pub(crate) fn split_monomial(&self, m: &Monomial) -> (SubsetPoint, Vec<u32>) {
        let mut mask = 0u32;
        let mut q = vec![0u32; self.n];
        for (v, e) in m.iter() {
            if v < self.n {
                q[v] = e;
            } else {
                debug_assert_eq!(e, 1, "monomial not in normal form");
                mask |= 1 << (v - self.n);
            }
        }
        (SubsetPoint::from_mask(self.n, mask), q)
    }

    pub fn zero(self: &Arc<Self>) -> QuantumClass {
        self.wrap(Poly::zero(&self.vars))
    }

    pub fn one(self: &Arc<Self>) -> QuantumClass {
        self.constant(Rational::from_integer(1.into()))
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> QuantumClass {
        self.wrap(Poly::constant(&self.vars, c))
    }

    /// The generator `x_i` (1-based).
    pub fn x(self: &Arc<Self>, i: usize) -> Result<QuantumClass, QuantumError> {
        self.check_index(i)?;
        Ok(self.wrap(Poly::var_index(&self.vars, self.x_var(i))))
    }

    /// The Novikov variable `q_i` (1-based).
    pub fn q(self: &Arc<Self>, i: usize) -> Result<QuantumClass, QuantumError> {
        self.check_index(i)?;
        Ok(self.wrap(Poly::var_index(&self.vars, self.q_var(i))))
    }

    fn check_index(&self, i: usize) -> Result<(), QuantumError> {
        if i == 0 || i > self.n {
            Err(MorseError::MemberOutOfRange { member: i, n: self.n }.into())
        } else {
            Ok(())
        }
    }

    /// The basis class `x_I`.
    pub fn basis(self: &Arc<Self>, subset: &SubsetPoint) -> Result<QuantumClass, QuantumError> {
        if subset.n() != self.n {
            return Err(QuantumError::DimensionMismatch);
        }
        let m = self.basis_monomial(subset, &[]);
        Ok(self.wrap(Poly::term(&self.vars, m, Rational::from_integer(1.into()))))
    }

    /// `e^B = q^d` for an effective class `B = Σ d_i A_i`.
    pub fn novikov(self: &Arc<Self>, class: &SphereClassVector) -> Result<QuantumClass, QuantumError> {
        if class.n() != self.n {
            return Err(QuantumError::DimensionMismatch);
        }
        if !class.is_effective() {
            return Err(QuantumError::NotEffective(class.clone()));
        }
        let q: Vec<u32> = class.coefficients().iter().map(|&d| d as u32).collect();
        let m = self.basis_monomial(&SubsetPoint::empty(self.n), &q);
        Ok(self.wrap(Poly::term(&self.vars, m, Rational::from_integer(1.into()))))
    }

    /// Import a polynomial over this ring's variables, reducing it to normal form.
    pub fn from_poly(self: &Arc<Self>, p: &Poly) -> Result<QuantumClass, QuantumError> {
        let p = p.reembed(&self.vars)?;
        Ok(self.wrap(self.quantum_rules.normal_form(&p)))
    }

    fn wrap(self: &Arc<Self>, poly: Poly) -> QuantumClass {
        QuantumClass {
            ring: self.clone(),
            poly,
        }
    }

    /// The three-point invariant `⟨x_I, x_J, x_K⟩_B`, read off the product
    /// `x_I * x_J` as the coefficient of `x_{K^c} e^B`.
    pub fn gw_coefficient(self: &Arc<Self>, query: &GWQuery) -> Result<Rational, QuantumError> {
        if query.i.n() != self.n {
            return Err(QuantumError::DimensionMismatch);
        }
        let lhs = 2 * (query.i.len() + query.j.len() + query.k.len()) as i64;
        if lhs != 2 * self.n as i64 + 2 * morse::chern_number(&query.d) {
            return Ok(Rational::from_integer(0.into()));
        }
        let product = self.basis(&query.i)?.qmul(&self.basis(&query.j)?)?;
        let q: Vec<u32> = query.d.coefficients().iter().map(|&d| d as u32).collect();
        Ok(product
            .poly
            .coefficient(&self.basis_monomial(&query.k.complement(), &q)))
    }
}

/// The data of a genus-zero three-point invariant `⟨x_I, x_J, x_K⟩_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWQuery {
    pub i: SubsetPoint,
    pub j: SubsetPoint,
    pub k: SubsetPoint,
    pub d: SphereClassVector,
}

impl GWQuery {
    pub fn new(i: SubsetPoint, j: SubsetPoint, k: SubsetPoint, d: SphereClassVector) -> Result<Self, QuantumError> {
        let n = i.n();
        if j.n() != n || k.n() != n {
            return Err(QuantumError::DimensionMismatch);
        }
        if d.n() != n {
            return Err(MorseError::LengthMismatch {
                expected: n,
                got: d.n(),
            }
            .into());
        }
        if !d.is_effective() {
            return Err(QuantumError::NotEffective(d));
        }
        Ok(GWQuery { i, j, k, d })
    }
}

/// A term of a [`QuantumClass`] in the `x_I q^d` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisTerm {
    pub x: SubsetPoint,
    pub q: Vec<u32>,
    pub coefficient: Rational,
}

/// An element of `QH*(M; Λ)` in normal form.
#[derive(Clone)]
pub struct QuantumClass {
    ring: Arc<QuantumRing>,
    poly: Poly,
}

impl QuantumClass {
    pub fn ring(&self) -> &Arc<QuantumRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn graded_degree(&self) -> Degree {
        self.poly.graded_degree()
    }

    pub fn is_q_free(&self) -> bool {
        self.basis_terms().iter().all(|t| t.q.iter().all(|&e| e == 0))
    }

    /// Terms in canonical (descending) order.
    pub fn basis_terms(&self) -> Vec<BasisTerm> {
        self.poly
            .terms()
            .rev()
            .map(|(m, c)| {
                let (x, q) = self.ring.split_monomial(m);
                BasisTerm {
                    x,
                    q,
                    coefficient: c.clone(),
                }
            })
            .collect()
    }

    fn same_ring(&self, other: &QuantumClass) -> Result<(), QuantumError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.n == other.ring.n {
            Ok(())
        } else {
            Err(QuantumError::DimensionMismatch)
        }
    }

    fn lift(&self, poly: Poly) -> QuantumClass {
        QuantumClass {
            ring: self.ring.clone(),
            poly,
        }
    }

    pub fn add(&self, other: &QuantumClass) -> Result<QuantumClass, QuantumError> {
        self.same_ring(other)?;
        Ok(self.lift(self.poly.checked_add(&other.poly.reembed(&self.ring.vars)?)?))
    }

    pub fn sub(&self, other: &QuantumClass) -> Result<QuantumClass, QuantumError> {
        self.same_ring(other)?;
        Ok(self.lift(self.poly.checked_sub(&other.poly.reembed(&self.ring.vars)?)?))
    }

    pub fn neg(&self) -> QuantumClass {
        self.lift(-&self.poly)
    }

    pub fn scale(&self, c: &Rational) -> QuantumClass {
        self.lift(self.poly.scale(c))
    }

    /// Quantum product: polynomial product reduced by `x_i^2 -> q_i`.
    pub fn qmul(&self, other: &QuantumClass) -> Result<QuantumClass, QuantumError> {
        self.same_ring(other)?;
        let product = self.poly.checked_mul(&other.poly.reembed(&self.ring.vars)?)?;
        Ok(self.lift(self.ring.quantum_rules.normal_form(&product)))
    }

    /// Cup product: polynomial product reduced by `x_i^2 -> 0`.
    pub fn cup(&self, other: &QuantumClass) -> Result<QuantumClass, QuantumError> {
        self.same_ring(other)?;
        let product = self.poly.checked_mul(&other.poly.reembed(&self.ring.vars)?)?;
        Ok(self.lift(self.ring.classical_rules.normal_form(&product)))
    }

    /// Poincaré pairing: the coefficient of `x_S` in the cup product.
    pub fn pairing(&self, other: &QuantumClass) -> Result<Rational, QuantumError> {
        if !self.is_q_free() || !other.is_q_free() {
            return Err(QuantumError::NotQFree);
        }
        let cup = self.cup(other)?;
        let top = self.ring.basis_monomial(&SubsetPoint::full(self.ring.n), &[]);
        Ok(cup.poly.coefficient(&top))
    }

    /// The Seidel automorphism of the maximal circle action: quantum
    /// multiplication by `x_S`.
    pub fn seidel(&self) -> QuantumClass {
        let top = self.ring.basis(&SubsetPoint::full(self.ring.n)).expect("same ring");
        top.qmul(self).expect("same ring")
    }

    /// Split `a * b` into its cup product and the quantum correction.
    pub fn positivity_decomposition(&self, other: &QuantumClass) -> Result<(QuantumClass, QuantumClass), QuantumError> {
        let classical = self.cup(other)?;
        let tail = self.qmul(other)?.sub(&classical)?;
        Ok((classical, tail))
    }

    /// JSON export: `[{"monomial": {"x": "{1,3}", "q": [..]}, "coeff": "p/q"}, ..]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.basis_terms()
                .into_iter()
                .map(|t| {
                    json!({
                        "monomial": { "x": t.x.to_string(), "q": t.q },
                        "coeff": t.coefficient.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl PartialEq for QuantumClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.poly == other.poly
    }
}

impl fmt::Display for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl fmt::Debug for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantumClass[n={}]({})", self.ring.n, self.poly)
    }
}
