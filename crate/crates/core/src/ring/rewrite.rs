use std::collections::BTreeMap;
use std::sync::Arc;

use super::varset::same_vars;
use super::{Monomial, Polynomial, RingError, VarSet};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
struct Rule<C: Scalar> {
    threshold: u32,
    replacement: Polynomial<C>,
}

/// Rules of the form `v^k -> r` with `k >= 2` and `r` of lower degree in `v`.
///
/// Each rule touches a single variable, so the induced reduction is
/// confluent and the normal form does not depend on the rewrite order.
#[derive(Debug, Clone)]
pub struct RewriteSystem<C: Scalar> {
    vars: Arc<VarSet>,
    rules: BTreeMap<usize, Rule<C>>,
}

impl<C: Scalar> RewriteSystem<C> {
    pub fn new(vars: &Arc<VarSet>) -> Self {
        RewriteSystem {
            vars: vars.clone(),
            rules: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// Register `name^threshold -> replacement`.
    pub fn with_rule(mut self, name: &str, threshold: u32, replacement: Polynomial<C>) -> Result<Self, RingError> {
        let var = self.vars.require(name)?;
        if !same_vars(&self.vars, replacement.vars()) {
            return Err(RingError::VarSetMismatch);
        }
        if threshold < 2 {
            return Err(RingError::InvalidRule {
                var: name.to_string(),
                reason: "exponent threshold below 2",
            });
        }
        if replacement.terms().any(|(m, _)| m.exponent(var) >= threshold) {
            return Err(RingError::InvalidRule {
                var: name.to_string(),
                reason: "replacement does not lower the exponent",
            });
        }
        if self.rules.insert(var, Rule { threshold, replacement }).is_some() {
            return Err(RingError::InvalidRule {
                var: name.to_string(),
                reason: "duplicate rule",
            });
        }
        Ok(self)
    }

    pub fn is_reduced(&self, p: &Polynomial<C>) -> bool {
        p.terms().all(|(m, _)| self.reducible_var(m).is_none())
    }

    fn reducible_var(&self, m: &Monomial) -> Option<(usize, &Rule<C>)> {
        m.iter().find_map(|(v, e)| {
            self.rules
                .get(&v)
                .filter(|rule| e >= rule.threshold)
                .map(|rule| (v, rule))
        })
    }

    pub fn normal_form(&self, p: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero(p.vars());
        let mut pending: Vec<(Monomial, C)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = pending.pop() {
            match self.reducible_var(&m) {
                None => out.add_term(m, c),
                Some((v, rule)) => {
                    let (e, rest) = m.split_off(v);
                    let (q, r) = (e / rule.threshold, e % rule.threshold);
                    let cofactor = rest.mul(&Monomial::pow(v, r));
                    let image = rule.replacement.pow(q).mul_monomial(&cofactor);
                    for (k, x) in image.terms() {
                        pending.push((k.clone(), x.clone() * c.clone()));
                    }
                }
            }
        }
        out
    }
}
