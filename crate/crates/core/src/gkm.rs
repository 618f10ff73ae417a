//! Equivariant cohomology in the localization model.
//!
//! A class is the table of its restrictions to the `2^n` fixed points, each a
//! polynomial in the equivariant parameter `y`. The generator `a_i` restricts
//! to `-y` at `p_J` when `i ∈ J` and to `0` otherwise, so products of the
//! `a_i` give the triangular basis `a_I` and the dual classes
//! `b_I = Π_{i∉I} (a_i + y)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::morse::{self, MorseError, SubsetPoint};
use crate::quantum::{QuantumClass, QuantumError, QuantumRing};
use crate::ring::{render_terms, Monomial, RingError, VarSet};
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("classes have different dimensions")]
    DimensionMismatch,
    #[error("expected {expected} fixed-point values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("restriction at {0:?} is not a polynomial in y")]
    NotInY(SubsetPoint),
    #[error("edge {from:?} -> {to:?} violates y-divisibility")]
    NotGkm { from: SubsetPoint, to: SubsetPoint },
    #[error("class is not in the Z[y]-span of the a_I basis (stuck at {0:?})")]
    NotInSpan(SubsetPoint),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// The single-variable set `{y}` with `deg y = 2`.
pub fn y_vars() -> &'static Arc<VarSet> {
    static VARS: OnceLock<Arc<VarSet>> = OnceLock::new();
    VARS.get_or_init(|| VarSet::uniform(["y"], 2).expect("valid"))
}

/// `y` and the ungraded Chern-series parameter `t`.
fn chern_vars() -> &'static Arc<VarSet> {
    static VARS: OnceLock<Arc<VarSet>> = OnceLock::new();
    VARS.get_or_init(|| VarSet::new([("y", Some(2)), ("t", None)]).expect("valid"))
}

fn y_power(coeff: Rational, exp: u32) -> Poly {
    Poly::term(y_vars(), Monomial::pow(0, exp), coeff)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn is_y_divisible(p: &Poly) -> bool {
    p.constant_term() == int(0)
}

/// `true` when every upward-edge difference of the table is divisible by `y`.
///
/// `values` is indexed by subset bitmask.
pub fn gkm_check(n: usize, values: &[Poly]) -> bool {
    first_gkm_violation(n, values).is_none()
}

fn first_gkm_violation(n: usize, values: &[Poly]) -> Option<(SubsetPoint, SubsetPoint)> {
    morse::all_edges(n).into_iter().find_map(|(from, to, _)| {
        let diff = &values[to.mask() as usize] - &values[from.mask() as usize];
        (!is_y_divisible(&diff)).then_some((from, to))
    })
}

fn validate_table(n: usize, values: &[Poly]) -> Result<(), GkmError> {
    morse::check_dimension(n)?;
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(GkmError::WrongLength {
            expected,
            got: values.len(),
        });
    }
    for (mask, v) in values.iter().enumerate() {
        if !Arc::ptr_eq(v.vars(), y_vars()) && v.vars().as_ref() != y_vars().as_ref() {
            return Err(GkmError::NotInY(SubsetPoint::from_mask(n, mask as u32)));
        }
    }
    Ok(())
}

/// An equivariant class satisfying the edge divisibility condition.
#[derive(Clone, PartialEq)]
pub struct EquivariantClass {
    n: usize,
    values: Vec<Poly>,
}

impl EquivariantClass {
    /// Build from restrictions indexed by subset bitmask.
    pub fn from_values(n: usize, values: Vec<Poly>) -> Result<Self, GkmError> {
        validate_table(n, &values)?;
        if let Some((from, to)) = first_gkm_violation(n, &values) {
            return Err(GkmError::NotGkm { from, to });
        }
        Ok(EquivariantClass { n, values })
    }

    /// Build from a function of the fixed point.
    pub fn from_fn(n: usize, f: impl Fn(&SubsetPoint) -> Poly) -> Result<Self, GkmError> {
        morse::check_dimension(n)?;
        let values = (0..1u32 << n).map(|mask| f(&SubsetPoint::from_mask(n, mask))).collect();
        Self::from_values(n, values)
    }

    pub fn zero(n: usize) -> Result<Self, GkmError> {
        Self::constant(n, int(0))
    }

    pub fn one(n: usize) -> Result<Self, GkmError> {
        Self::constant(n, int(1))
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self, GkmError> {
        Self::from_fn(n, |_| Poly::constant(y_vars(), c.clone()))
    }

    /// The class `y` pulled back from `BS^1`.
    pub fn y(n: usize) -> Result<Self, GkmError> {
        Self::from_fn(n, |_| y_power(int(1), 1))
    }

    /// The generator `a_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Result<Self, GkmError> {
        basis_a(&SubsetPoint::singleton(n, i)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Restrictions indexed by subset bitmask.
    pub fn values(&self) -> &[Poly] {
        &self.values
    }

    pub fn restrict(&self, p: &SubsetPoint) -> Result<&Poly, GkmError> {
        if p.n() != self.n {
            return Err(GkmError::DimensionMismatch);
        }
        Ok(&self.values[p.mask() as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Self, GkmError> {
        if self.n != other.n {
            return Err(GkmError::DimensionMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(EquivariantClass { n: self.n, values })
    }

    pub fn add(&self, other: &Self) -> Result<Self, GkmError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GkmError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn multiply(&self, other: &Self) -> Result<Self, GkmError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        EquivariantClass {
            n: self.n,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// Multiply by a polynomial in `y` (the `H*(BS^1)`-module structure).
    pub fn scale_by(&self, coeff: &Poly) -> Result<Self, GkmError> {
        let coeff = coeff.reembed(y_vars())?;
        Ok(EquivariantClass {
            n: self.n,
            values: self.values.iter().map(|v| v * &coeff).collect(),
        })
    }

    /// Common degree of all restrictions, if homogeneous.
    pub fn graded_degree(&self) -> crate::ring::Degree {
        use crate::ring::Degree;
        self.values
            .iter()
            .fold(Degree::Any, |acc, v| match (acc, v.graded_degree()) {
                (Degree::Any, d) | (d, Degree::Any) => d,
                (a, b) if a == b => a,
                _ => Degree::Inhomogeneous,
            })
    }

    pub fn decompose(&self) -> Result<BTreeMap<SubsetPoint, Poly>, GkmError> {
        decompose_table(self.n, &self.values)
    }

    /// Set `y = 0` in the `a_I` expansion.
    pub fn reduce_to_ordinary(&self) -> Result<QuantumClass, GkmError> {
        let ring = QuantumRing::new(self.n)?;
        let y_to_zero = HashMap::from([("y", Poly::zero(y_vars()))]);
        let mut out = ring.zero();
        for (subset, coeff) in self.decompose()? {
            let c = coeff.substitute(&y_to_zero)?.constant_term();
            if c != int(0) {
                out = out.add(&ring.basis(&subset)?.scale(&c))?;
            }
        }
        Ok(out)
    }

    /// JSON export: `{"{}": "...", "{1}": "...", ...}` in canonical key order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for p in SubsetPoint::all(self.n) {
            map.insert(p.to_string(), Value::String(self.values[p.mask() as usize].to_string()));
        }
        Value::Object(map)
    }

    /// Text form `Σ c·y^k·a{I}` from the basis expansion; `None` when the
    /// class is not in the span.
    pub fn render(&self) -> Option<String> {
        let coeffs = self.decompose().ok()?;
        let mut terms: Vec<(u32, SubsetPoint, Rational)> = Vec::new();
        for (subset, poly) in coeffs {
            for (m, c) in poly.terms() {
                terms.push((m.exponent(0), subset, c.clone()));
            }
        }
        // Highest total degree first, then larger |I|, then members ascending.
        terms.sort_by(|a, b| {
            let da = a.1.len() as u32 + a.0;
            let db = b.1.len() as u32 + b.0;
            db.cmp(&da).then(b.1.len().cmp(&a.1.len())).then(a.1.cmp(&b.1))
        });
        Some(render_terms(terms.into_iter().map(|(e, subset, c)| {
            let mut parts = Vec::new();
            if !subset.is_empty() {
                parts.push(format!("a{subset}"));
            }
            match e {
                0 => {}
                1 => parts.push("y".to_string()),
                _ => parts.push(format!("y^{e}")),
            }
            (c, parts.join("*"))
        })))
    }
}

impl fmt::Display for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Some(text) => f.write_str(&text),
            None => f.write_str(&self.to_json().to_string()),
        }
    }
}

impl fmt::Debug for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EquivariantClass[n={}]{}", self.n, self.to_json())
    }
}

/// `a_I`: restricts to `(-y)^{|I|}` at `p_J` when `I ⊆ J`, else `0`.
pub fn basis_a(subset: &SubsetPoint) -> Result<EquivariantClass, GkmError> {
    let k = subset.len() as u32;
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    EquivariantClass::from_fn(subset.n(), |p| {
        if subset.is_subset_of(p) {
            y_power(sign.clone(), k)
        } else {
            Poly::zero(y_vars())
        }
    })
}

/// `b_I = Π_{i∉I} (a_i + y)`, evaluated pointwise.
pub fn basis_b(subset: &SubsetPoint) -> Result<EquivariantClass, GkmError> {
    let n = subset.n();
    let mut out = EquivariantClass::one(n)?;
    let y = EquivariantClass::y(n)?;
    for i in subset.non_members() {
        out = out.multiply(&EquivariantClass::generator(n, i)?.add(&y)?)?;
    }
    Ok(out)
}

/// Triangular elimination in canonical order: at `p_I` all later basis
/// elements vanish, so the coefficient of `a_I` is the residual at `p_I`
/// divided by `(-y)^{|I|}`.
pub fn decompose_table(n: usize, values: &[Poly]) -> Result<BTreeMap<SubsetPoint, Poly>, GkmError> {
    validate_table(n, values)?;
    let mut residual: Vec<Poly> = values.to_vec();
    let mut out = BTreeMap::new();
    for subset in SubsetPoint::all(n) {
        let k = subset.len() as u32;
        let at_point = &residual[subset.mask() as usize];
        let quotient = at_point.div_var_pow(0, k).ok_or(GkmError::NotInSpan(subset))?;
        let coeff = if k.is_multiple_of(2) { quotient } else { -&quotient };
        if !coeff.is_zero() {
            let basis = basis_a(&subset)?;
            for (r, b) in residual.iter_mut().zip(basis.values()) {
                *r = &*r - &(&coeff * b);
            }
        }
        out.insert(subset, coeff);
    }
    debug_assert!(residual.iter().all(Poly::is_zero));
    Ok(out)
}

/// Equivariant Chern classes `c_1..c_n`: the `t^k` coefficients of
/// `Π_i (1 + t(2a_i - y))`.
pub fn chern_series(n: usize) -> Result<Vec<EquivariantClass>, GkmError> {
    morse::check_dimension(n)?;
    let vars = chern_vars();
    let y = Poly::var(vars, "y")?;
    let t = Poly::var(vars, "t")?;
    let one = Poly::one(vars);
    let mut columns: Vec<Vec<Poly>> = vec![Vec::with_capacity(1 << n); n];
    for mask in 0..1u32 << n {
        let p = SubsetPoint::from_mask(n, mask);
        let mut total = one.clone();
        for i in 1..=n {
            let a_i = if p.contains(i) { -&y } else { Poly::zero(vars) };
            let factor = &one + &(&t * &(&a_i.scale(&int(2)) - &y));
            total = &total * &factor;
        }
        let by_t = total.coefficients_in(1);
        for (k, column) in columns.iter_mut().enumerate() {
            let coeff = by_t.get(&(k as u32 + 1)).cloned().unwrap_or_else(|| Poly::zero(vars));
            column.push(coeff.reembed(y_vars())?);
        }
    }
    columns
        .into_iter()
        .map(|values| EquivariantClass::from_values(n, values))
        .collect()
}

/// `b_I` expanded through elementary symmetric functions of `{a_i : i ∉ I}`,
/// `Σ_m σ_m · y^{|I^c| - m}`, then restricted pointwise. Independent of the
/// product form used by [`basis_b`].
pub fn basis_b_symmetric(subset: &SubsetPoint) -> Result<EquivariantClass, GkmError> {
    let n = subset.n();
    let names: Vec<String> = subset.non_members().map(|i| format!("a{i}")).collect();
    let vars = VarSet::new(
        names
            .iter()
            .map(|s| (s.clone(), Some(2)))
            .chain(std::iter::once(("y".to_string(), Some(2)))),
    )?;
    let y = Poly::var(&vars, "y")?;
    let m_total = names.len();
    let mut expansion = Poly::zero(&vars);
    for m in 0..=m_total {
        let sigma = Poly::elementary_symmetric(&vars, m, &names)?;
        expansion = &expansion + &(&sigma * &y.pow((m_total - m) as u32));
    }
    EquivariantClass::from_fn(n, |p| {
        let assignment: HashMap<&str, Poly> = names
            .iter()
            .zip(subset.non_members())
            .map(|(name, i)| (name.as_str(), if p.contains(i) { -&y } else { Poly::zero(&vars) }))
            .collect();
        expansion
            .substitute(&assignment)
            .and_then(|v| v.reembed(y_vars()))
            .expect("only y remains after substitution")
    })
}
