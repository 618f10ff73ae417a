//! Recover the quantum multiplication table from associativity with the
//! Seidel element alone.
//!
//! Every product `x_I * x_j` is an unknown combination of the monomials
//! `x_J q^d` of the right degree (`deg q_i = 4`), with its `q`-free part fixed
//! to the cup product. The only further input is the known action
//! `x_S * x_I = x_{I^c} q_I`. Associativity
//! `(x_S * x_I) * x_j = x_S * (x_I * x_j)` then gives
//! `q_I · (x_{I^c} * x_j) = x_S * (x_I * x_j)`, which is linear in the
//! unknowns.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::{QuantumClass, QuantumError, QuantumRing};
use crate::linalg::{LinearError, LinearSystem};
use crate::morse::SubsetPoint;
use crate::ring::Monomial;
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("n={n} exceeds the configured solver bound {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("structure constants are underdetermined ({kernel_dim}-dimensional kernel)")]
    Underdetermined { kernel_dim: usize },
    #[error("structure-constant system is inconsistent")]
    Inconsistent,
    #[error("solved product x_{subset} * x{j} disagrees with the quantum product")]
    DisagreesWithProduct { subset: SubsetPoint, j: usize },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_n: 4 }
    }
}

/// The solved products `x_I * x_j`, keyed by `(I, j)` in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    pub n: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub entries: BTreeMap<(SubsetPoint, usize), QuantumClass>,
}

impl fmt::Display for StructureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((subset, j), value) in &self.entries {
            let lhs = if subset.is_empty() {
                "1".to_string()
            } else {
                subset.members().map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
            };
            writeln!(f, "({lhs}) * x{j} = {value}")?;
        }
        Ok(())
    }
}

/// `(x-subset mask, q exponents)`; a basis monomial of `QH*`.
type Key = (u32, Vec<u32>);

/// Linear expression: constant part plus unknown coefficients.
#[derive(Default)]
struct Affine {
    constant: Rational,
    coeffs: BTreeMap<usize, Rational>,
}

struct Unknowns {
    /// For each product `(I, j)`: the unknown columns with their monomials.
    by_product: HashMap<(u32, usize), Vec<(usize, Key)>>,
    count: usize,
}

/// Exponent vectors of length `n` summing to `total`.
fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn classical(subset: &SubsetPoint, j: usize) -> Option<Key> {
    (!subset.contains(j)).then(|| (subset.with(j).mask(), vec![0; subset.n()]))
}

/// `x_S * x_J q^d = x_{J^c} q^{d + 1_J}`.
fn seidel_image(n: usize, key: &Key) -> Key {
    let j = SubsetPoint::from_mask(n, key.0);
    let mut q = key.1.clone();
    for i in j.members() {
        q[i - 1] += 1;
    }
    (j.complement().mask(), q)
}

fn enumerate_unknowns(ring: &QuantumRing) -> Unknowns {
    let n = ring.n();
    let mut all: Vec<(usize, SubsetPoint, usize, Monomial, Key)> = Vec::new();
    for subset in SubsetPoint::all(n) {
        for j in 1..=n {
            // Product degree in units of 2: |I| + 1 = |J| + 2|d|.
            let half_degree = subset.len() + 1;
            for q_total in 1..=(half_degree / 2) {
                let x_size = half_degree - 2 * q_total;
                for target in SubsetPoint::of_size(n, x_size) {
                    for q in compositions(n, q_total as u32) {
                        let monomial = ring.basis_monomial(&target, &q);
                        all.push((half_degree, subset, j, monomial, (target.mask(), q)));
                    }
                }
            }
        }
    }
    // Ascending total degree, then canonical monomial order.
    all.sort_by(|a, b| (a.0, &a.3, a.1, a.2).cmp(&(b.0, &b.3, b.1, b.2)));
    let count = all.len();
    let mut by_product: HashMap<(u32, usize), Vec<(usize, Key)>> = HashMap::new();
    for (col, (_, subset, j, _, key)) in all.into_iter().enumerate() {
        by_product.entry((subset.mask(), j)).or_default().push((col, key));
    }
    Unknowns { by_product, count }
}

fn add_to(
    target: &mut BTreeMap<Key, Affine>,
    key: Key,
    constant: Option<Rational>,
    unknown: Option<(usize, Rational)>,
) {
    let entry = target.entry(key).or_default();
    if let Some(c) = constant {
        entry.constant += c;
    }
    if let Some((col, c)) = unknown {
        *entry
            .coeffs
            .entry(col)
            .or_insert_with(|| Rational::from_integer(0.into())) += c;
    }
}

pub fn solve_structure_constants(n: usize) -> Result<StructureTable, SolverError> {
    solve_structure_constants_with(n, SolverConfig::default())
}

pub fn solve_structure_constants_with(n: usize, config: SolverConfig) -> Result<StructureTable, SolverError> {
    if n > config.max_n {
        return Err(SolverError::TooLarge { n, max_n: config.max_n });
    }
    let ring = QuantumRing::new(n)?;
    let unknowns = enumerate_unknowns(&ring);
    let one = Rational::from_integer(1.into());
    let mut system = LinearSystem::new(unknowns.count);

    for subset in SubsetPoint::all(n) {
        let comp = subset.complement();
        let q_subset: Vec<u32> = (1..=n).map(|i| u32::from(subset.contains(i))).collect();
        for j in 1..=n {
            // LHS - RHS, collected per basis monomial.
            let mut eq: BTreeMap<Key, Affine> = BTreeMap::new();
            // LHS: q_I · (x_{I^c} * x_j).
            let shift = |key: &Key| -> Key { (key.0, key.1.iter().zip(&q_subset).map(|(a, b)| a + b).collect()) };
            if let Some(key) = classical(&comp, j) {
                add_to(&mut eq, shift(&key), Some(one.clone()), None);
            }
            for (col, key) in unknowns.by_product.get(&(comp.mask(), j)).into_iter().flatten() {
                add_to(&mut eq, shift(key), None, Some((*col, one.clone())));
            }
            // RHS: x_S * (x_I * x_j).
            if let Some(key) = classical(&subset, j) {
                add_to(&mut eq, seidel_image(n, &key), Some(-one.clone()), None);
            }
            for (col, key) in unknowns.by_product.get(&(subset.mask(), j)).into_iter().flatten() {
                add_to(&mut eq, seidel_image(n, key), None, Some((*col, -one.clone())));
            }
            for (_, affine) in eq {
                system.push_sparse(affine.coeffs, -affine.constant);
            }
        }
    }

    let solution = system.solve_unique().map_err(|e| match e {
        LinearError::Underdetermined { kernel_dim } => SolverError::Underdetermined { kernel_dim },
        _ => SolverError::Inconsistent,
    })?;

    let mut entries = BTreeMap::new();
    for subset in SubsetPoint::all(n) {
        for j in 1..=n {
            let mut poly = Poly::zero(ring.vars());
            if let Some((mask, q)) = classical(&subset, j) {
                let m = ring.basis_monomial(&SubsetPoint::from_mask(n, mask), &q);
                poly = &poly + &Poly::term(ring.vars(), m, one.clone());
            }
            for (col, (mask, q)) in unknowns.by_product.get(&(subset.mask(), j)).into_iter().flatten() {
                let m = ring.basis_monomial(&SubsetPoint::from_mask(n, *mask), q);
                poly = &poly + &Poly::term(ring.vars(), m, solution[*col].clone());
            }
            let solved = ring.from_poly(&poly)?;
            let expected = ring.basis(&subset)?.qmul(&ring.x(j)?)?;
            if solved != expected {
                return Err(SolverError::DisagreesWithProduct { subset, j });
            }
            entries.insert((subset, j), solved);
        }
    }
    Ok(StructureTable {
        n,
        unknowns: system.unknowns(),
        equations: system.equations(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn n1_table() {
        let table = solve_structure_constants(1).unwrap();
        let r = QuantumRing::new(1).unwrap();
        let x = SubsetPoint::full(1);
        assert_eq!(table.entries[&(x, 1)], r.q(1).unwrap());
        assert_eq!(table.entries[&(SubsetPoint::empty(1), 1)], r.x(1).unwrap());
    }

    #[test]
    fn n2_table() {
        let table = solve_structure_constants(2).unwrap();
        let r = QuantumRing::new(2).unwrap();
        for i in 1..=2 {
            let xi = SubsetPoint::singleton(2, i).unwrap();
            assert_eq!(table.entries[&(xi, i)], r.q(i).unwrap());
        }
        let x1 = SubsetPoint::singleton(2, 1).unwrap();
        assert_eq!(table.entries[&(x1, 2)], r.basis(&SubsetPoint::full(2)).unwrap());
    }

    #[test]
    fn respects_bound() {
        assert_eq!(
            solve_structure_constants_with(3, SolverConfig { max_n: 2 }).unwrap_err(),
            SolverError::TooLarge { n: 3, max_n: 2 }
        );
    }
}
