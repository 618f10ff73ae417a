//! Quantum cohomology of the one-point blow-up of `P^2`.
//!
//! The circle action fixing the exceptional divisor and a line pointwise has
//! non-isolated fixed points, and its Seidel element `b` acts with
//! higher-order Novikov terms. The cohomology basis is `{1, b, f, bf}` where
//! `b`, `f` are dual to the exceptional divisor `E` and the fibre `F = L - E`.
//! Novikov monomials are `e^{dE + eF}`, with `e^L = e^E e^F`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{LinearError, LinearSystem};
use crate::ring::{render_terms, Degree};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("no sign assignment reproduces the product table")]
    Inconsistent,
    #[error("degree system: {0}")]
    DegreeSystem(LinearError),
    #[error("derived Chern number {0} is not positive")]
    NonPositiveChern(Rational),
}

/// Basis element of `H*`, ordered so that descending order reads `bf, b, f, 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlowupBasis {
    One,
    F,
    B,
    BF,
}

impl BlowupBasis {
    pub const ALL: [BlowupBasis; 4] = [BlowupBasis::One, BlowupBasis::B, BlowupBasis::F, BlowupBasis::BF];

    pub fn degree(self) -> i64 {
        match self {
            BlowupBasis::One => 0,
            BlowupBasis::B | BlowupBasis::F => 2,
            BlowupBasis::BF => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BlowupBasis::One => "1",
            BlowupBasis::B => "b",
            BlowupBasis::F => "f",
            BlowupBasis::BF => "bf",
        }
    }

    fn index(self) -> usize {
        match self {
            BlowupBasis::One => 0,
            BlowupBasis::B => 1,
            BlowupBasis::F => 2,
            BlowupBasis::BF => 3,
        }
    }
}

impl fmt::Display for BlowupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Exponents `(d, e)` of `e^{dE + eF}`.
pub type Novikov = (u32, u32);

pub const CLASS_E: Novikov = (1, 0);
pub const CLASS_F: Novikov = (0, 1);
pub const CLASS_L: Novikov = (1, 1);

/// Degree of `e^E` and `e^F` in the grading of this example.
pub const DEG_E: i64 = 2;
pub const DEG_F: i64 = 4;

fn novikov_degree(n: Novikov) -> i64 {
    DEG_E * i64::from(n.0) + DEG_F * i64::from(n.1)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// A `Q`-combination of `basis · e^{dE + eF}`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BlowupClass {
    terms: BTreeMap<(BlowupBasis, Novikov), Rational>,
}

impl BlowupClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(BlowupBasis::One)
    }

    pub fn basis(b: BlowupBasis) -> Self {
        Self::term(b, (0, 0), int(1))
    }

    pub fn novikov(n: Novikov) -> Self {
        Self::term(BlowupBasis::One, n, int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(BlowupBasis::One, (0, 0), c)
    }

    pub fn term(b: BlowupBasis, n: Novikov, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, n, c);
        out
    }

    fn add_term(&mut self, b: BlowupBasis, n: Novikov, c: Rational) {
        if c == int(0) {
            return;
        }
        let entry = self.terms.entry((b, n)).or_insert_with(|| int(0));
        *entry += c;
        if *entry == int(0) {
            self.terms.remove(&(b, n));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: BlowupBasis, n: Novikov) -> Rational {
        self.terms.get(&(b, n)).cloned().unwrap_or_else(|| int(0))
    }

    /// Terms in canonical order: Novikov degree ascending, then basis descending.
    pub fn terms(&self) -> Vec<(BlowupBasis, Novikov, Rational)> {
        let mut out: Vec<_> = self.terms.iter().map(|(&(b, n), c)| (b, n, c.clone())).collect();
        out.sort_by(|x, y| {
            novikov_degree(x.1)
                .cmp(&novikov_degree(y.1))
                .then(y.1.cmp(&x.1))
                .then(y.0.cmp(&x.0))
        });
        out
    }

    /// Distinct Novikov exponents present.
    pub fn strata(&self) -> Vec<Novikov> {
        let mut s: Vec<Novikov> = self.terms.keys().map(|&(_, n)| n).collect();
        s.sort();
        s.dedup();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(b, n), c) in &other.terms {
            out.add_term(b, n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(b, n), x) in &self.terms {
            out.add_term(b, n, x.clone() * c.clone());
        }
        out
    }

    pub fn graded_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|&(b, n)| b.degree() + novikov_degree(n));
        match degrees.next() {
            None => Degree::Any,
            Some(d) if degrees.all(|e| e == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// Quantum product, extended bilinearly from [`basis_product`].
    pub fn bmul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(b1, n1), c1) in &self.terms {
            for (&(b2, n2), c2) in &other.terms {
                for (b, n, c) in basis_product(b1, b2) {
                    out.add_term(
                        b,
                        (n.0 + n1.0 + n2.0, n.1 + n1.1 + n2.1),
                        int(c) * c1.clone() * c2.clone(),
                    );
                }
            }
        }
        out
    }

    /// JSON export mirroring the quantum-class schema with `x ∈ {1,b,f,bf}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|(b, n, c)| {
                    json!({
                        "monomial": { "x": b.symbol(), "q": [n.0, n.1] },
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

fn render_monomial(b: BlowupBasis, n: Novikov) -> String {
    let mut parts = Vec::new();
    if b != BlowupBasis::One {
        parts.push(b.symbol().to_string());
    }
    for (name, e) in [("eE", n.0), ("eF", n.1)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms().into_iter().map(|(b, n, c)| (c, render_monomial(b, n))),
        ))
    }
}

impl fmt::Debug for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlowupClass({self})")
    }
}

/// The quantum product of two basis elements, as `(basis, novikov, coefficient)`.
pub fn basis_product(x: BlowupBasis, y: BlowupBasis) -> Vec<(BlowupBasis, Novikov, i64)> {
    use BlowupBasis::*;
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    match (x, y) {
        (One, other) => vec![(other, (0, 0), 1)],
        (B, B) => vec![(BF, (0, 0), -1), (B, CLASS_E, 1), (One, CLASS_F, 1)],
        (F, B) => vec![(BF, (0, 0), 1), (B, CLASS_E, -1)],
        (F, F) => vec![(B, CLASS_E, 1)],
        (B, BF) => vec![(F, CLASS_F, 1)],
        (F, BF) => vec![(One, CLASS_L, 1)],
        (BF, BF) => vec![(B, CLASS_L, 1), (F, CLASS_L, 1)],
        _ => unreachable!("pairs are ordered"),
    }
}

/// The Seidel automorphism of the example: quantum multiplication by `b`.
pub fn seidel_blowup(a: &BlowupClass) -> BlowupClass {
    BlowupClass::basis(BlowupBasis::B).bmul(a)
}

/// `true` when `result` spreads over more than one Novikov stratum.
///
/// `a` is the basis element the automorphism was applied to.
pub fn has_higher_order_terms(a: &BlowupClass, result: &BlowupClass) -> bool {
    debug_assert!(a.terms.len() == 1, "expected a pure basis element");
    result.strata().len() > 1
}

/// Solve for `(c_1(E), c_1(F))` making every table entry degree-homogeneous
/// under `deg e^B = 2 c_1(B)`.
pub fn derive_chern_numbers() -> Result<(Rational, Rational), BlowupError> {
    let mut system = LinearSystem::new(2);
    for (i, &x) in BlowupBasis::ALL.iter().enumerate() {
        for &y in &BlowupBasis::ALL[i..] {
            for (b, n, _) in basis_product(x, y) {
                let drop = x.degree() + y.degree() - b.degree();
                system.push_sparse([(0, int(2 * i64::from(n.0))), (1, int(2 * i64::from(n.1)))], int(drop));
            }
        }
    }
    let solution = system.solve_unique().map_err(BlowupError::DegreeSystem)?;
    for c in &solution {
        if *c <= int(0) {
            return Err(BlowupError::NonPositiveChern(c.clone()));
        }
    }
    Ok((solution[0].clone(), solution[1].clone()))
}

/// Poincaré pairing on the basis: `1·bf = 1`, `b·b = -1`, `b·f = 1`, `f·f = 0`.
pub fn pairing(x: BlowupBasis, y: BlowupBasis) -> i64 {
    use BlowupBasis::*;
    match (x, y) {
        (One, BF) | (BF, One) => 1,
        (B, B) => -1,
        (B, F) | (F, B) => 1,
        _ => 0,
    }
}

/// The inverse pairing matrix `g^{kj}`, indexed in `ALL` order.
pub fn inverse_pairing() -> [[Rational; 4]; 4] {
    let mut out: [[Rational; 4]; 4] = Default::default();
    for col in 0..4 {
        let mut system = LinearSystem::new(4);
        for &x in &BlowupBasis::ALL {
            let row = BlowupBasis::ALL.iter().map(|&y| int(pairing(x, y))).collect();
            let rhs = int(i64::from(x.index() == col));
            system.push(row, rhs).expect("square");
        }
        let inv = system.solve_unique().expect("pairing is nondegenerate");
        for (out_row, v) in out.iter_mut().zip(inv) {
            out_row[col] = v;
        }
    }
    out
}

fn sorted_triple(a: BlowupBasis, b: BlowupBasis, c: BlowupBasis) -> [BlowupBasis; 3] {
    let mut t = [a, b, c];
    t.sort();
    t
}

/// Symmetric three-point invariants `⟨a,b,c⟩_B`, keyed by class and sorted triple.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InvariantTable {
    values: BTreeMap<(Novikov, [BlowupBasis; 3]), Rational>,
}

impl InvariantTable {
    pub fn set(&mut self, class: Novikov, a: BlowupBasis, b: BlowupBasis, c: BlowupBasis, value: Rational) {
        self.values.insert((class, sorted_triple(a, b, c)), value);
    }

    pub fn get(&self, class: Novikov, a: BlowupBasis, b: BlowupBasis, c: BlowupBasis) -> Rational {
        self.values
            .get(&(class, sorted_triple(a, b, c)))
            .cloned()
            .unwrap_or_else(|| int(0))
    }

    pub fn classes(&self) -> Vec<Novikov> {
        let mut v: Vec<Novikov> = self.values.keys().map(|(n, _)| *n).collect();
        v.dedup();
        v
    }

    /// Classical triple intersections: `∫ 1·x·y = x·y`, everything else of
    /// degree above 4 vanishes.
    pub fn with_classical(mut self) -> Self {
        for &x in &BlowupBasis::ALL {
            for &y in &BlowupBasis::ALL {
                let v = pairing(x, y);
                if v != 0 {
                    self.set((0, 0), BlowupBasis::One, x, y, int(v));
                }
            }
        }
        self
    }

    /// The invariants listed for the example in classes `L` and `F`.
    pub fn known() -> Self {
        let mut t = InvariantTable::default();
        t.set(CLASS_L, BlowupBasis::BF, BlowupBasis::BF, BlowupBasis::F, int(1));
        t.set(CLASS_F, BlowupBasis::BF, BlowupBasis::B, BlowupBasis::B, int(1));
        t
    }

    /// `a * c = Σ_B Σ_{k,j} ⟨a,c,e_k⟩_B g^{kj} e_j e^B`.
    pub fn quantum_product(&self, a: BlowupBasis, c: BlowupBasis) -> BlowupClass {
        let inv = inverse_pairing();
        let mut out = BlowupClass::zero();
        for class in self.classes() {
            for &k in &BlowupBasis::ALL {
                let gw = self.get(class, a, c, k);
                if gw == int(0) {
                    continue;
                }
                for &j in &BlowupBasis::ALL {
                    let g = &inv[k.index()][j.index()];
                    out.add_term(j, class, gw.clone() * g.clone());
                }
            }
        }
        out
    }
}

/// Signs of the class-`E` invariants on `{b, f}` consistent with the
/// `e^E` terms of the product table, for all eight ordered triples.
pub fn gw_sign_solver() -> Result<BTreeMap<[BlowupBasis; 3], i64>, BlowupError> {
    use BlowupBasis::{B, F as Fb};
    let unknowns = [[B, B, B], [B, B, Fb], [B, Fb, Fb], [Fb, Fb, Fb]].map(|t| sorted_triple(t[0], t[1], t[2]));
    let column = |t: [BlowupBasis; 3]| {
        unknowns
            .iter()
            .position(|u| *u == sorted_triple(t[0], t[1], t[2]))
            .expect("b/f triple")
    };
    let inv = inverse_pairing();
    let mut system = LinearSystem::new(unknowns.len());
    for (a, c) in [(B, B), (B, Fb), (Fb, Fb)] {
        let product = BlowupClass::basis(a).bmul(&BlowupClass::basis(c));
        for &j in &BlowupBasis::ALL {
            // Degree forces the inserted class to be b or f.
            let entries = [B, Fb].map(|k| (column([a, c, k]), inv[k.index()][j.index()].clone()));
            system.push_sparse(entries, product.coefficient(j, CLASS_E));
        }
    }
    let solution = system.solve_unique().map_err(|_| BlowupError::Inconsistent)?;
    let mut signs = Vec::new();
    for v in solution {
        if v == int(1) {
            signs.push(1);
        } else if v == int(-1) {
            signs.push(-1);
        } else {
            return Err(BlowupError::Inconsistent);
        }
    }
    let mut out = BTreeMap::new();
    for x in [B, Fb] {
        for y in [B, Fb] {
            for z in [B, Fb] {
                out.insert([x, y, z], signs[column([x, y, z])]);
            }
        }
    }
    Ok(out)
}

/// All invariants of the example: classical, solved class `E`, and the
/// listed classes `L`, `F`.
pub fn full_invariant_table() -> Result<InvariantTable, BlowupError> {
    let mut table = InvariantTable::known().with_classical();
    for (t, s) in gw_sign_solver()? {
        table.set(CLASS_E, t[0], t[1], t[2], int(s));
    }
    Ok(table)
}
