//! Expression language over the ring generators.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := RATIONAL | GENERATOR | '(' expr ')'
//! ```
//!
//! `RATIONAL` is `INT` or `INT/INT`. Generators depend on the context:
//! `x1`, `q2` in the quantum ring; `y`, `a{1,3}`, `b{2}` in the equivariant
//! model; `b`, `f`, `bf`, `eE`, `eF` in the blow-up example. Whitespace is
//! ignored. Every canonical rendering produced by the crate parses back to
//! the same value.

use std::convert::Infallible;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::blowup::{self, BlowupBasis, BlowupClass};
use crate::gkm::{self, EquivariantClass, GkmError};
use crate::morse::{MorseError, SubsetPoint};
use crate::quantum::{QuantumClass, QuantumError, QuantumRing};
use crate::ring::{RingError, VarSet};
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator `{name}` at byte {offset}")]
    UnknownGenerator { name: String, offset: usize },
    #[error("index of `{name}` at byte {offset} is outside 1..={n}")]
    IndexOutOfRange { name: String, offset: usize, n: usize },
    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

/// Which generators an expression may use.
#[derive(Debug, Clone)]
pub enum ParseContext {
    Quantum { n: usize },
    Equivariant { n: usize },
    Blowup,
    Polynomial(Arc<VarSet>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupSymbol {
    Basis(BlowupBasis),
    ExpE,
    ExpF,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    X(usize),
    Q(usize),
    Y,
    A(SubsetPoint),
    B(SubsetPoint),
    Blowup(BlowupSymbol),
    Var(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(Rational),
    Generator(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Group(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Subset(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Tokens paired with their 1-based byte offsets.
fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i + 1;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Token::Plus, start)),
            b'-' => out.push((Token::Minus, start)),
            b'*' => out.push((Token::Star, start)),
            b'/' => out.push((Token::Slash, start)),
            b'^' => out.push((Token::Caret, start)),
            b'(' => out.push((Token::LParen, start)),
            b')' => out.push((Token::RParen, start)),
            b'{' => {
                let end = input[i..]
                    .find('}')
                    .ok_or_else(|| syntax(start, "unterminated subset literal"))?;
                out.push((Token::Subset(input[i..=i + end].to_string()), start));
                i += end + 1;
                continue;
            }
            b'0'..=b'9' => {
                let len = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                let value: BigInt = input[i..i + len].parse().expect("digits");
                out.push((Token::Int(value), start));
                i += len;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let len = bytes[i..]
                    .iter()
                    .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                    .count();
                out.push((Token::Ident(input[i..i + len].to_string()), start));
                i += len;
                continue;
            }
            _ => {
                let ch = input[i..].chars().next().expect("non-empty");
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_offset: usize,
    context: &'a ParseContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end_offset)
    }

    fn next(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let offset = self.offset();
            match self.next() {
                Some((Token::Int(e), _)) => {
                    let e = u32::try_from(e).map_err(|_| syntax(offset, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(syntax(offset, "expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.next() {
            Some((Token::Int(num), _)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    let den_offset = self.offset();
                    match self.next() {
                        Some((Token::Int(den), _)) if den != BigInt::from(0) => {
                            Ok(Expr::Rational(Rational::new(num, den)))
                        }
                        Some((Token::Int(_), _)) => Err(syntax(den_offset, "zero denominator")),
                        _ => Err(syntax(den_offset, "expected a denominator")),
                    }
                } else {
                    Ok(Expr::Rational(Rational::from_integer(num)))
                }
            }
            Some((Token::Ident(name), _)) => {
                let subset = match self.peek() {
                    Some(Token::Subset(s)) => {
                        let s = s.clone();
                        self.pos += 1;
                        Some(s)
                    }
                    _ => None,
                };
                resolve(self.context, &name, subset.as_deref(), offset).map(Expr::Generator)
            }
            Some((Token::LParen, _)) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.next() {
                    Some((Token::RParen, _)) => Ok(Expr::Group(Box::new(inner))),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some((t, _)) => Err(syntax(offset, format!("unexpected token {t:?}"))),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn resolve(context: &ParseContext, name: &str, subset: Option<&str>, offset: usize) -> Result<Generator, ExprError> {
    let unknown = || ExprError::UnknownGenerator {
        name: format!("{name}{}", subset.unwrap_or("")),
        offset,
    };
    let out_of_range = |n: usize| ExprError::IndexOutOfRange {
        name: format!("{name}{}", subset.unwrap_or("")),
        offset,
        n,
    };
    match context {
        ParseContext::Quantum { n } => {
            if subset.is_some() {
                return Err(unknown());
            }
            let (ctor, idx): (fn(usize) -> Generator, _) = if let Some(i) = indexed(name, 'x') {
                (Generator::X, i)
            } else if let Some(i) = indexed(name, 'q') {
                (Generator::Q, i)
            } else {
                return Err(unknown());
            };
            if idx == 0 || idx > *n {
                return Err(out_of_range(*n));
            }
            Ok(ctor(idx))
        }
        ParseContext::Equivariant { n } => match (name, subset) {
            ("y", None) => Ok(Generator::Y),
            ("a" | "b", Some(literal)) => {
                let point = SubsetPoint::parse(*n, literal).map_err(|e| match e {
                    MorseError::MemberOutOfRange { .. } => out_of_range(*n),
                    _ => syntax(offset + name.len(), format!("malformed subset literal `{literal}`")),
                })?;
                Ok(if name == "a" {
                    Generator::A(point)
                } else {
                    Generator::B(point)
                })
            }
            _ => Err(unknown()),
        },
        ParseContext::Blowup => {
            if subset.is_some() {
                return Err(unknown());
            }
            let symbol = match name {
                "b" => BlowupSymbol::Basis(BlowupBasis::B),
                "f" => BlowupSymbol::Basis(BlowupBasis::F),
                "bf" => BlowupSymbol::Basis(BlowupBasis::BF),
                "eE" => BlowupSymbol::ExpE,
                "eF" => BlowupSymbol::ExpF,
                _ => return Err(unknown()),
            };
            Ok(Generator::Blowup(symbol))
        }
        ParseContext::Polynomial(vars) => {
            if subset.is_some() {
                return Err(unknown());
            }
            vars.position(name).map(Generator::Var).ok_or_else(unknown)
        }
    }
}

pub fn parse(input: &str, context: &ParseContext) -> Result<Expr, ExprError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_offset: input.len() + 1,
        context,
    };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.offset(), "trailing input"));
    }
    Ok(expr)
}

/// Interprets an [`Expr`] in some algebra.
pub trait Evaluator {
    type Value: Clone;
    type Error;

    fn rational(&self, c: &Rational) -> Result<Self::Value, Self::Error>;
    fn generator(&self, g: &Generator) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, Self::Error>;
}

impl Expr {
    pub fn evaluate<E: Evaluator>(&self, ev: &E) -> Result<E::Value, E::Error> {
        match self {
            Expr::Rational(c) => ev.rational(c),
            Expr::Generator(g) => ev.generator(g),
            Expr::Neg(a) => ev.neg(&a.evaluate(ev)?),
            Expr::Add(a, b) => ev.add(&a.evaluate(ev)?, &b.evaluate(ev)?),
            Expr::Sub(a, b) => ev.sub(&a.evaluate(ev)?, &b.evaluate(ev)?),
            Expr::Mul(a, b) => ev.mul(&a.evaluate(ev)?, &b.evaluate(ev)?),
            Expr::Group(a) => a.evaluate(ev),
            Expr::Pow(a, e) => {
                let base = a.evaluate(ev)?;
                let mut acc = ev.rational(&Rational::from_integer(1.into()))?;
                for _ in 0..*e {
                    acc = ev.mul(&acc, &base)?;
                }
                Ok(acc)
            }
        }
    }
}

fn wrong_context<E>(g: &Generator) -> Result<E, ExprError> {
    Err(ExprError::Evaluation(format!(
        "generator {g:?} is not valid in this context"
    )))
}

impl Evaluator for Arc<QuantumRing> {
    type Value = QuantumClass;
    type Error = ExprError;

    fn rational(&self, c: &Rational) -> Result<QuantumClass, ExprError> {
        Ok(self.constant(c.clone()))
    }
    fn generator(&self, g: &Generator) -> Result<QuantumClass, ExprError> {
        match g {
            Generator::X(i) => self.x(*i).map_err(eval_err),
            Generator::Q(i) => self.q(*i).map_err(eval_err),
            other => wrong_context(other),
        }
    }
    fn add(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass, ExprError> {
        a.add(b).map_err(eval_err)
    }
    fn sub(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass, ExprError> {
        a.sub(b).map_err(eval_err)
    }
    fn mul(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass, ExprError> {
        a.qmul(b).map_err(eval_err)
    }
    fn neg(&self, a: &QuantumClass) -> Result<QuantumClass, ExprError> {
        Ok(a.neg())
    }
}

fn eval_err<E: std::fmt::Display>(e: E) -> ExprError {
    ExprError::Evaluation(e.to_string())
}

/// Evaluates in the equivariant model of dimension `n`.
pub struct EquivariantEvaluator {
    pub n: usize,
}

impl Evaluator for EquivariantEvaluator {
    type Value = EquivariantClass;
    type Error = ExprError;

    fn rational(&self, c: &Rational) -> Result<EquivariantClass, ExprError> {
        EquivariantClass::constant(self.n, c.clone()).map_err(eval_err)
    }
    fn generator(&self, g: &Generator) -> Result<EquivariantClass, ExprError> {
        let r: Result<EquivariantClass, GkmError> = match g {
            Generator::Y => EquivariantClass::y(self.n),
            Generator::A(s) => gkm::basis_a(s),
            Generator::B(s) => gkm::basis_b(s),
            other => return wrong_context(other),
        };
        r.map_err(eval_err)
    }
    fn add(&self, a: &EquivariantClass, b: &EquivariantClass) -> Result<EquivariantClass, ExprError> {
        a.add(b).map_err(eval_err)
    }
    fn sub(&self, a: &EquivariantClass, b: &EquivariantClass) -> Result<EquivariantClass, ExprError> {
        a.sub(b).map_err(eval_err)
    }
    fn mul(&self, a: &EquivariantClass, b: &EquivariantClass) -> Result<EquivariantClass, ExprError> {
        a.multiply(b).map_err(eval_err)
    }
    fn neg(&self, a: &EquivariantClass) -> Result<EquivariantClass, ExprError> {
        Ok(a.neg())
    }
}

/// Evaluates in the blow-up example.
pub struct BlowupEvaluator;

impl Evaluator for BlowupEvaluator {
    type Value = BlowupClass;
    type Error = ExprError;

    fn rational(&self, c: &Rational) -> Result<BlowupClass, ExprError> {
        Ok(BlowupClass::constant(c.clone()))
    }
    fn generator(&self, g: &Generator) -> Result<BlowupClass, ExprError> {
        match g {
            Generator::Blowup(BlowupSymbol::Basis(b)) => Ok(BlowupClass::basis(*b)),
            Generator::Blowup(BlowupSymbol::ExpE) => Ok(BlowupClass::novikov(blowup::CLASS_E)),
            Generator::Blowup(BlowupSymbol::ExpF) => Ok(BlowupClass::novikov(blowup::CLASS_F)),
            other => wrong_context(other),
        }
    }
    fn add(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass, ExprError> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass, ExprError> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass, ExprError> {
        Ok(a.bmul(b))
    }
    fn neg(&self, a: &BlowupClass) -> Result<BlowupClass, ExprError> {
        Ok(a.neg())
    }
}

impl Evaluator for Arc<VarSet> {
    type Value = Poly;
    type Error = Infallible;

    fn rational(&self, c: &Rational) -> Result<Poly, Infallible> {
        Ok(Poly::constant(self, c.clone()))
    }
    fn generator(&self, g: &Generator) -> Result<Poly, Infallible> {
        match g {
            Generator::Var(idx) => Ok(Poly::var_index(self, *idx)),
            _ => unreachable!("polynomial context only yields variables"),
        }
    }
    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly, Infallible> {
        Ok(a + b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Result<Poly, Infallible> {
        Ok(a - b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly, Infallible> {
        Ok(a * b)
    }
    fn neg(&self, a: &Poly) -> Result<Poly, Infallible> {
        Ok(-a)
    }
}

pub fn parse_quantum(input: &str, ring: &Arc<QuantumRing>) -> Result<QuantumClass, ExprError> {
    parse(input, &ParseContext::Quantum { n: ring.n() })?.evaluate(ring)
}

pub fn parse_equivariant(input: &str, n: usize) -> Result<EquivariantClass, ExprError> {
    parse(input, &ParseContext::Equivariant { n })?.evaluate(&EquivariantEvaluator { n })
}

pub fn parse_blowup(input: &str) -> Result<BlowupClass, ExprError> {
    parse(input, &ParseContext::Blowup)?.evaluate(&BlowupEvaluator)
}

pub fn parse_polynomial(input: &str, vars: &Arc<VarSet>) -> Result<Poly, ExprError> {
    let expr = parse(input, &ParseContext::Polynomial(vars.clone()))?;
    Ok(expr.evaluate(vars).unwrap_or_else(|never| match never {}))
}

impl From<QuantumError> for ExprError {
    fn from(e: QuantumError) -> Self {
        eval_err(e)
    }
}

impl From<RingError> for ExprError {
    fn from(e: RingError) -> Self {
        eval_err(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn quantum_example() {
        let ring = QuantumRing::new(2).unwrap();
        let v = parse_quantum("x1*x1 + 3/2*q2", &ring).unwrap();
        let expected = ring.q(1).unwrap().add(&ring.q(2).unwrap().scale(&q(3, 2))).unwrap();
        assert_eq!(v, expected);
        assert_eq!(v.to_string(), "q1 + 3/2*q2");
    }

    #[test]
    fn equivariant_example() {
        let expr = parse("a{1,3}*b{2}", &ParseContext::Equivariant { n: 3 }).unwrap();
        let a13 = SubsetPoint::new(3, &[1, 3]).unwrap();
        let b2 = SubsetPoint::new(3, &[2]).unwrap();
        assert_eq!(
            expr,
            Expr::Mul(
                Box::new(Expr::Generator(Generator::A(a13))),
                Box::new(Expr::Generator(Generator::B(b2)))
            )
        );
        let v = parse_equivariant("a{1,3} * b{2}", 3).unwrap();
        assert_eq!(
            v,
            gkm::basis_a(&a13)
                .unwrap()
                .multiply(&gkm::basis_b(&b2).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn index_out_of_range() {
        let err = parse("x3", &ParseContext::Quantum { n: 2 }).unwrap_err();
        assert_eq!(
            err,
            ExprError::IndexOutOfRange {
                name: "x3".into(),
                offset: 1,
                n: 2
            }
        );
        let err = parse("a{4}", &ParseContext::Equivariant { n: 3 }).unwrap_err();
        assert!(matches!(err, ExprError::IndexOutOfRange { n: 3, .. }));
    }

    #[test]
    fn errors_carry_offsets() {
        let ctx = ParseContext::Quantum { n: 2 };
        assert_eq!(
            parse("x1 + z", &ctx).unwrap_err(),
            ExprError::UnknownGenerator {
                name: "z".into(),
                offset: 6
            }
        );
        assert!(matches!(parse("x1 +", &ctx), Err(ExprError::Syntax { offset: 5, .. })));
        assert!(matches!(parse("(x1", &ctx), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("x1 x2", &ctx), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(
            parse("x1 # 2", &ctx),
            Err(ExprError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(parse("1/0", &ctx), Err(ExprError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("", &ctx), Err(ExprError::Syntax { offset: 1, .. })));
    }

    #[test]
    fn precedence_and_powers() {
        let ring = QuantumRing::new(2).unwrap();
        let v = parse_quantum("-x1^3 + 2*(x1 - x2)*x2", &ring).unwrap();
        let expected = parse_quantum("-q1*x1 + 2*x1*x2 - 2*q2", &ring).unwrap();
        assert_eq!(v, expected);
        assert_eq!(parse_quantum("2 - -1", &ring).unwrap(), ring.constant(q(3, 1)));
    }

    #[test]
    fn blowup_context() {
        let v = parse_blowup("b*f").unwrap();
        assert_eq!(v.to_string(), "bf - b*eE");
        assert_eq!(parse_blowup(&v.to_string()).unwrap(), v);
        assert!(matches!(
            parse("x1", &ParseContext::Blowup),
            Err(ExprError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn polynomial_context() {
        let vars = VarSet::new([("x1", Some(2)), ("q3", Some(4)), ("t", None)]).unwrap();
        let p = parse_polynomial("x1^2*q3 - 1/3*t", &vars).unwrap();
        assert_eq!(p.to_string(), "x1^2*q3 - 1/3*t");
    }
}
