//! The fixed-point combinatorics of a semi-free circle action with isolated
//! fixed points.
//!
//! Fixed points are indexed by subsets `I` of `{1..n}`. The point `p_I` has
//! Morse index `2|I|` and weight sum `m(p_I) = n - 2|I|`. Each upward
//! gradient edge `I -> I ∪ {i}` sweeps out a sphere in the class `A_i`, and
//! every class `A_i` has first Chern number 2.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::scalar::Field;
use crate::Rational;

/// Largest supported `n`; subsets are stored as `u32` bitmasks.
pub const MAX_N: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("dimension n={0} is outside 1..={MAX_N}")]
    BadDimension(usize),
    #[error("member {member} is outside 1..={n}")]
    MemberOutOfRange { member: usize, n: usize },
    #[error("malformed subset literal `{0}`")]
    BadSubsetLiteral(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("area {index} is not positive")]
    NonPositiveArea { index: usize },
    #[error("fixed points have equal weight sums; the invariant sphere class must vanish")]
    EqualWeights,
    #[error("multiplicity {0} gives a non-positive Chern number for this ordered pair")]
    NonPositive(i64),
    #[error("points belong to different dimensions")]
    DimensionMismatch,
}

pub(crate) fn check_dimension(n: usize) -> Result<(), MorseError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(MorseError::BadDimension(n))
    }
}

/// The fixed point `p_I`, encoded by its subset `I ⊆ {1..n}`.
///
/// Points order by cardinality and then lexicographically by their sorted
/// members, which is the canonical iteration order everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetPoint {
    n: usize,
    mask: u32,
}

impl SubsetPoint {
    pub fn new(n: usize, members: &[usize]) -> Result<Self, MorseError> {
        check_dimension(n)?;
        let mut mask = 0u32;
        for &m in members {
            if m == 0 || m > n {
                return Err(MorseError::MemberOutOfRange { member: m, n });
            }
            mask |= 1 << (m - 1);
        }
        Ok(SubsetPoint { n, mask })
    }

    /// Bit `i - 1` of `mask` marks member `i`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        debug_assert!(n <= MAX_N && (n == 32 || mask >> n == 0));
        SubsetPoint { n, mask }
    }

    pub fn empty(n: usize) -> Self {
        SubsetPoint { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        SubsetPoint { n, mask: full_mask(n) }
    }

    pub fn singleton(n: usize, i: usize) -> Result<Self, MorseError> {
        Self::new(n, &[i])
    }

    /// Parse `{1,3}` (or `{}` for the empty set).
    pub fn parse(n: usize, text: &str) -> Result<Self, MorseError> {
        let bad = || MorseError::BadSubsetLiteral(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(bad)?;
        let members = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(n, &members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.mask & (1 << (i - 1)) != 0
    }

    /// Members in ascending order, 1-based.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|&i| self.contains(i))
    }

    pub fn non_members(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|&i| !self.contains(i))
    }

    pub fn complement(&self) -> Self {
        SubsetPoint {
            n: self.n,
            mask: full_mask(self.n) & !self.mask,
        }
    }

    pub fn with(&self, i: usize) -> Self {
        SubsetPoint {
            n: self.n,
            mask: self.mask | (1 << (i - 1)),
        }
    }

    pub fn is_subset_of(&self, other: &SubsetPoint) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &SubsetPoint) -> Self {
        SubsetPoint {
            n: self.n,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &SubsetPoint) -> Self {
        SubsetPoint {
            n: self.n,
            mask: self.mask & other.mask,
        }
    }

    pub fn symmetric_difference(&self, other: &SubsetPoint) -> Self {
        SubsetPoint {
            n: self.n,
            mask: self.mask ^ other.mask,
        }
    }

    /// All `2^n` points in canonical order.
    pub fn all(n: usize) -> Vec<SubsetPoint> {
        let mut points: Vec<SubsetPoint> = (0..=full_mask(n)).map(|mask| SubsetPoint { n, mask }).collect();
        points.sort();
        points
    }

    /// Points of a fixed cardinality, in canonical order.
    pub fn of_size(n: usize, k: usize) -> Vec<SubsetPoint> {
        Self::all(n).into_iter().filter(|p| p.len() == k).collect()
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Ord for SubsetPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for SubsetPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

impl fmt::Debug for SubsetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{self}")
    }
}

/// Symplectic areas `ω(A_1), …, ω(A_n)` of the gradient spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentAssignment<F = Rational> {
    areas: Vec<F>,
}

impl<F: Field> MomentAssignment<F> {
    pub fn new(areas: Vec<F>) -> Result<Self, MorseError> {
        if let Some(index) = areas.iter().position(|a| !a.is_positive()) {
            return Err(MorseError::NonPositiveArea { index: index + 1 });
        }
        Ok(MomentAssignment { areas })
    }

    /// Every sphere of area one.
    pub fn unit(n: usize) -> Self {
        MomentAssignment {
            areas: vec![F::one(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.areas.len()
    }

    pub fn areas(&self) -> &[F] {
        &self.areas
    }
}

/// An integral class `Σ d_i A_i` in `H_2(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereClassVector {
    coefficients: Vec<i64>,
}

impl SphereClassVector {
    pub fn new(coefficients: Vec<i64>) -> Self {
        SphereClassVector { coefficients }
    }

    pub fn zero(n: usize) -> Self {
        SphereClassVector {
            coefficients: vec![0; n],
        }
    }

    /// The class `A_i` (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coefficients = vec![0; n];
        coefficients[i - 1] = 1;
        SphereClassVector { coefficients }
    }

    /// `A_I = Σ_{i∈I} A_i`.
    pub fn of_subset(p: &SubsetPoint) -> Self {
        SphereClassVector {
            coefficients: (1..=p.n()).map(|i| i64::from(p.contains(i))).collect(),
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&d| d == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coefficients.iter().all(|&d| d >= 0)
    }

    pub fn add(&self, other: &SphereClassVector) -> SphereClassVector {
        SphereClassVector {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for SphereClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn morse_index(p: &SubsetPoint) -> usize {
    2 * p.len()
}

/// `m(p_I) = n - 2|I|`.
pub fn weight_sum(p: &SubsetPoint) -> i64 {
    p.n() as i64 - 2 * p.len() as i64
}

/// Gradient edges leaving `p_I` upward, with the index `i` of the sphere class `A_i`.
pub fn upward_edges(p: &SubsetPoint) -> Vec<(SubsetPoint, usize)> {
    p.non_members().map(|i| (p.with(i), i)).collect()
}

/// All upward edges of the hypercube, in canonical order of the source point.
pub fn all_edges(n: usize) -> Vec<(SubsetPoint, SubsetPoint, usize)> {
    SubsetPoint::all(n)
        .into_iter()
        .flat_map(|p| upward_edges(&p).into_iter().map(move |(q, i)| (p, q, i)))
        .collect()
}

/// The class `A_{I^c}` of the broken gradient line from the maximum down to `p_I`.
pub fn broken_line_class(p: &SubsetPoint) -> SphereClassVector {
    SphereClassVector::of_subset(&p.complement())
}

/// `c_1(Σ d_i A_i) = 2 Σ d_i`.
pub fn chern_number(v: &SphereClassVector) -> i64 {
    2 * v.coefficients.iter().sum::<i64>()
}

pub fn area<F: Field>(v: &SphereClassVector, m: &MomentAssignment<F>) -> Result<F, MorseError> {
    if v.n() != m.n() {
        return Err(MorseError::LengthMismatch {
            expected: m.n(),
            got: v.n(),
        });
    }
    Ok(v.coefficients
        .iter()
        .zip(&m.areas)
        .fold(F::zero(), |acc, (&d, w)| acc + F::from_i64(d) * w.clone()))
}

/// Normalized moment map value `H(p_I) = (Σ_{i∈I} ω_i - Σ_{i∉I} ω_i) / 2`.
pub fn moment_value<F: Field>(p: &SubsetPoint, m: &MomentAssignment<F>) -> Result<F, MorseError> {
    if p.n() != m.n() {
        return Err(MorseError::LengthMismatch {
            expected: p.n(),
            got: m.n(),
        });
    }
    let signed = m.areas.iter().enumerate().fold(F::zero(), |acc, (idx, w)| {
        if p.contains(idx + 1) {
            acc + w.clone()
        } else {
            acc - w.clone()
        }
    });
    Ok(signed / F::from_i64(2))
}

/// First Chern number `p·(m(x) - m(y))` of a `p`-fold invariant sphere from `x` to `y`.
pub fn invariant_sphere_chern(x: &SubsetPoint, y: &SubsetPoint, multiplicity: i64) -> Result<i64, MorseError> {
    if x.n() != y.n() {
        return Err(MorseError::DimensionMismatch);
    }
    let diff = weight_sum(x) - weight_sum(y);
    if diff == 0 {
        return Err(MorseError::EqualWeights);
    }
    let c1 = multiplicity * diff;
    if c1 <= 0 {
        return Err(MorseError::NonPositive(multiplicity));
    }
    Ok(c1)
}

/// A cardinality triple `(|I|, |J|, |K|)` for source, target and root of an
/// invariant chain.
pub type ChainCardinalities = (usize, usize, usize);

/// Cardinality triples that would allow a higher-order term in the Seidel
/// action of the maximal circle action.
///
/// With `c_B = |I| - |J|` and `c_A = 2|K| - |I| - |J|`, a contribution needs
/// `c_B > 0`, `c_A >= 0` and the chain estimate `c_A >= 2 c_A`. When
/// `c_A = 0` the chain collapses to its root, so additionally
/// `c_B = 2(|K| - |J|) > 0` while `|K| <= |J|` because the root lies in the
/// closure of the unstable manifold of `p_J`. The result is always empty.
pub fn higher_order_infeasibility(n: usize) -> Vec<ChainCardinalities> {
    chain_constraint_solutions(n, true)
}

/// The same enumeration with the closure constraint `|K| <= |J|` dropped.
pub fn relaxed_chain_solutions(n: usize) -> Vec<ChainCardinalities> {
    chain_constraint_solutions(n, false)
}

fn chain_constraint_solutions(n: usize, root_in_closure: bool) -> Vec<ChainCardinalities> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let (ii, jj, kk) = (i as i64, j as i64, k as i64);
                let c_b = ii - jj;
                let c_a = 2 * kk - ii - jj;
                if c_b <= 0 || c_a < 0 || c_a < 2 * c_a {
                    continue;
                }
                if c_a == 0 {
                    let collapsed = 2 * (kk - jj);
                    if collapsed != c_b || collapsed <= 0 {
                        continue;
                    }
                    if root_in_closure && kk > jj {
                        continue;
                    }
                }
                out.push((i, j, k));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, members: &[usize]) -> SubsetPoint {
        SubsetPoint::new(n, members).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn index_and_weight_examples() {
        assert_eq!(morse_index(&p(3, &[])), 0);
        assert_eq!(morse_index(&p(3, &[2])), 2);
        assert_eq!(morse_index(&p(2, &[1, 2])), 4);
        assert_eq!(weight_sum(&p(4, &[])), 4);
        assert_eq!(weight_sum(&p(4, &[1, 2, 3, 4])), -4);
        assert_eq!(weight_sum(&p(3, &[1])), 1);
    }

    #[test]
    fn upward_edge_examples() {
        assert_eq!(upward_edges(&p(2, &[])), vec![(p(2, &[1]), 1), (p(2, &[2]), 2)]);
        assert!(upward_edges(&p(2, &[1, 2])).is_empty());
        assert_eq!(upward_edges(&p(3, &[2])), vec![(p(3, &[1, 2]), 1), (p(3, &[2, 3]), 3)]);
    }

    #[test]
    fn broken_line_examples() {
        let full = broken_line_class(&p(3, &[1, 2, 3]));
        assert!(full.is_zero());
        assert_eq!(chern_number(&full), 0);
        let v = broken_line_class(&p(3, &[1]));
        assert_eq!(v.coefficients(), &[0, 1, 1]);
        assert_eq!(chern_number(&v), 4);
        assert_eq!(chern_number(&v), 3 + weight_sum(&p(3, &[1])));
        let w = broken_line_class(&p(2, &[]));
        assert_eq!(w.coefficients(), &[1, 1]);
        assert_eq!(chern_number(&w), 4);
    }

    #[test]
    fn chern_number_examples() {
        for n in 1..5 {
            assert_eq!(chern_number(&SphereClassVector::basis(n, 1)), 2);
        }
        assert_eq!(chern_number(&SphereClassVector::zero(3)), 0);
        assert_eq!(chern_number(&SphereClassVector::new(vec![1, 1, 1])), 6);
    }

    #[test]
    fn area_and_moment_examples() {
        let omega = MomentAssignment::new(vec![q(1, 1), q(3, 2)]).unwrap();
        assert_eq!(area(&SphereClassVector::basis(2, 2), &omega).unwrap(), q(3, 2));
        assert_eq!(area(&SphereClassVector::zero(2), &omega).unwrap(), q(0, 1));

        let unit = MomentAssignment::<Rational>::unit(2);
        let h_max = moment_value(&SubsetPoint::full(2), &unit).unwrap();
        assert_eq!(h_max, q(1, 1));
        let line = area(&broken_line_class(&p(2, &[1])), &unit).unwrap();
        assert_eq!(line, h_max - moment_value(&p(2, &[1]), &unit).unwrap());
        assert_eq!(line, q(1, 1));

        let sphere = MomentAssignment::new(vec![q(1, 1)]).unwrap();
        assert_eq!(moment_value(&p(1, &[1]), &sphere).unwrap(), q(1, 2));
    }

    #[test]
    fn moment_is_antisymmetric() {
        let omega = MomentAssignment::new(vec![q(1, 3), q(2, 1), q(5, 7)]).unwrap();
        for pt in SubsetPoint::all(3) {
            let sum = moment_value(&pt, &omega).unwrap() + moment_value(&pt.complement(), &omega).unwrap();
            assert_eq!(sum, q(0, 1));
        }
    }

    #[test]
    fn rejects_bad_areas() {
        assert_eq!(
            MomentAssignment::new(vec![q(1, 1), q(0, 1)]).unwrap_err(),
            MorseError::NonPositiveArea { index: 2 }
        );
        let omega = MomentAssignment::new(vec![q(1, 1)]).unwrap();
        assert!(moment_value(&p(2, &[]), &omega).is_err());
    }

    #[test]
    fn invariant_sphere_examples() {
        assert_eq!(invariant_sphere_chern(&p(2, &[]), &p(2, &[1]), 1).unwrap(), 2);
        assert_eq!(invariant_sphere_chern(&p(2, &[]), &p(2, &[1]), 2).unwrap(), 4);
        assert_eq!(
            invariant_sphere_chern(&p(2, &[1]), &p(2, &[2]), 1).unwrap_err(),
            MorseError::EqualWeights
        );
        assert_eq!(
            invariant_sphere_chern(&p(2, &[]), &p(2, &[1]), -1).unwrap_err(),
            MorseError::NonPositive(-1)
        );
    }

    #[test]
    fn infeasibility_examples() {
        assert!(higher_order_infeasibility(2).is_empty());
        assert!(higher_order_infeasibility(6).is_empty());
        let relaxed = relaxed_chain_solutions(3);
        assert!(relaxed.contains(&(2, 0, 1)));
    }

    #[test]
    fn subset_literals() {
        assert_eq!(p(3, &[3, 1]).to_string(), "{1,3}");
        assert_eq!(SubsetPoint::empty(3).to_string(), "{}");
        assert_eq!(SubsetPoint::parse(3, "{ 1, 3 }").unwrap(), p(3, &[1, 3]));
        assert_eq!(SubsetPoint::parse(3, "{}").unwrap(), SubsetPoint::empty(3));
        assert!(matches!(
            SubsetPoint::parse(3, "{4}"),
            Err(MorseError::MemberOutOfRange { .. })
        ));
        assert!(matches!(
            SubsetPoint::parse(3, "1,2"),
            Err(MorseError::BadSubsetLiteral(_))
        ));
    }

    #[test]
    fn canonical_order() {
        let order: Vec<String> = SubsetPoint::all(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(order, ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }
}
