use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::varset::same_vars;
use super::{Monomial, RingError, VarSet};
use crate::scalar::Scalar;

/// Homogeneity of a polynomial under the declared variable degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero polynomial, compatible with every degree.
    Any,
    Homogeneous(i64),
    Inhomogeneous,
}

impl Degree {
    /// Degree of a product; `Any` absorbs.
    pub fn of_product(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Any, _) | (_, Degree::Any) => Degree::Any,
            (Degree::Homogeneous(a), Degree::Homogeneous(b)) => Degree::Homogeneous(a + b),
            _ => Degree::Inhomogeneous,
        }
    }

    pub fn is_compatible(self, degree: i64) -> bool {
        matches!(self, Degree::Any) || self == Degree::Homogeneous(degree)
    }
}

/// A sparse multivariate polynomial with coefficients in `C`.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`] (graded
/// lexicographic), zero coefficients are never stored, so two equal
/// polynomials over the same [`VarSet`] have identical representations.
#[derive(Clone)]
pub struct Polynomial<C> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        Self::term(vars, Monomial::one(), c)
    }

    pub fn term(vars: &Arc<VarSet>, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self, RingError> {
        let idx = vars.require(name)?;
        Ok(Self::term(vars, Monomial::var(idx), C::one()))
    }

    pub fn var_index(vars: &Arc<VarSet>, idx: usize) -> Self {
        Self::term(vars, Monomial::var(idx), C::one())
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), RingError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(RingError::VarSetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.iter()
            .map(|(v, e)| self.vars.degree(v).unwrap_or(0) * i64::from(e))
            .sum()
    }

    pub fn graded_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|m| self.monomial_degree(m));
        match degrees.next() {
            None => Degree::Any,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Inhomogeneous
                }
            }
        }
    }

    /// Simultaneous substitution of the named variables.
    pub fn substitute<S: AsRef<str>>(&self, assignment: &HashMap<S, Polynomial<C>>) -> Result<Self, RingError> {
        let mut images: HashMap<usize, &Polynomial<C>> = HashMap::new();
        for (name, value) in assignment {
            let idx = self.vars.require(name.as_ref())?;
            if !same_vars(&self.vars, &value.vars) {
                return Err(RingError::VarSetMismatch);
            }
            images.insert(idx, value);
        }
        if images.is_empty() {
            return Ok(self.clone());
        }
        let mut powers: HashMap<(usize, u32), Polynomial<C>> = HashMap::new();
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Self::constant(&self.vars, c.clone());
            for (v, e) in m.iter() {
                match images.get(&v) {
                    Some(image) => {
                        let power = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        factor = &factor * power;
                    }
                    None => kept.push((v, e)),
                }
            }
            let factor = factor.mul_monomial(&Monomial::from_pairs(kept));
            for (k, x) in factor.terms {
                out.add_term(k, x);
            }
        }
        Ok(out)
    }

    /// The elementary symmetric polynomial of degree `k` in the named variables.
    pub fn elementary_symmetric<S: AsRef<str>>(vars: &Arc<VarSet>, k: usize, names: &[S]) -> Result<Self, RingError> {
        if k > names.len() {
            return Err(RingError::SymmetricDegree {
                k,
                available: names.len(),
            });
        }
        let indices = names
            .iter()
            .map(|n| vars.require(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        // e_j(v_1..v_m) built incrementally: e_j <- e_j + v_m * e_{j-1}.
        let mut table: Vec<Polynomial<C>> = vec![Self::zero(vars); k + 1];
        table[0] = Self::one(vars);
        for &idx in &indices {
            for j in (1..=k).rev() {
                let shifted = table[j - 1].mul_monomial(&Monomial::var(idx));
                table[j] = &table[j] + &shifted;
            }
        }
        Ok(table.swap_remove(k))
    }

    /// Split into coefficients of powers of `var`; the coefficients do not
    /// contain `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Polynomial<C>> {
        let mut out: BTreeMap<u32, Polynomial<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Exact division by `var^exp`; `None` when some term is not divisible.
    pub fn div_var_pow(&self, var: usize, exp: u32) -> Option<Self> {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.div_var(var, exp)?, c.clone());
        }
        Some(out)
    }

    /// Move into another variable set, matching variables by name.
    pub fn reembed(&self, target: &Arc<VarSet>) -> Result<Self, RingError> {
        let mut map = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut pairs = Vec::new();
            for (v, e) in m.iter() {
                let t = match map.get(&v) {
                    Some(&t) => t,
                    None => {
                        let t = target.require(self.vars.name(v))?;
                        map.insert(v, t);
                        t
                    }
                };
                pairs.push((t, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub(crate) fn render_monomial(&self, m: &Monomial) -> String {
        m.iter()
            .map(|(v, e)| {
                if e == 1 {
                    self.vars.name(v).to_string()
                } else {
                    format!("{}^{}", self.vars.name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Render `(coefficient, monomial text)` pairs as `a - 3/2*b + c`.
pub(crate) fn render_terms<C: Scalar>(terms: impl IntoIterator<Item = (C, String)>) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    /// Canonical text: leading (largest) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = render_terms(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c.clone(), self.render_monomial(m))),
        );
        f.write_str(&text)
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<C: Scalar> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Scalar> Eq for Polynomial<C> where C: Eq {}

// Operator forms panic on a variable-set mismatch; use the `checked_*`
// methods where the inputs are not known to agree.
impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("variable sets differ")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("variable sets differ")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("variable sets differ")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
