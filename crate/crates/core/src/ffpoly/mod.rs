//! Sparse multivariate polynomials over a prime field `F_p`.
//!
//! A [`Polynomial`] is a list of `(exponent vector, coefficient)` pairs kept
//! sorted in graded-lex descending order with no zero coefficients. Every
//! polynomial carries an `Arc` to the [`PolyRing`] it lives in; binary
//! operations check that both operands agree on the characteristic and the
//! variable names.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extint::ExtInt;
use crate::set::{ElementSet, MAX_ELEMENTS};

pub use parse::parse_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfpolyError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} does not fit in 32 bits")]
    FieldTooLarge(u64),
    #[error("variable name {0:?} is not an identifier")]
    InvalidVariableName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
    #[error("too many variables ({0}); at most {MAX_ELEMENTS} are supported")]
    TooManyVariables(usize),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("operands live in different polynomial rings")]
    ContextMismatch,
    #[error("the zero polynomial has no circuit vector")]
    ZeroPolynomial,
    #[error("p-adic valuation of 0 is undefined")]
    ZeroValuation,
    #[error("a circuit vector needs at least one finite entry")]
    AllInfinite,
}

pub type Result<T> = std::result::Result<T, FfpolyError>;

/// Trial-division primality test; characteristics are word-sized.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest `e` with `p^e | k`.
pub fn p_adic_valuation(k: u64, p: u64) -> Result<u32> {
    if k == 0 {
        return Err(FfpolyError::ZeroValuation);
    }
    let mut k = k;
    let mut e = 0;
    while k.is_multiple_of(p) {
        k /= p;
        e += 1;
    }
    Ok(e)
}

/// The prime field `F_p` with `p < 2^32`, so products of reduced values fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(FfpolyError::FieldTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FfpolyError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Ambient context: the coefficient field and the variable names `X_1 .. X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(p: u64, vars: Vec<String>) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        if vars.len() > MAX_ELEMENTS {
            return Err(FfpolyError::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(FfpolyError::InvalidVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(FfpolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    /// Ring with variables `x1 .. xn`.
    pub fn with_indexed_vars(p: u64, n: usize) -> Result<Arc<Self>> {
        PolyRing::new(p, (1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Exponent vector `u` of a monomial `X^u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> ElementSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; requires `other | self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Graded-lex comparison with `X_1 > X_2 > ...`.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    fn scaled(&self, factor: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| {
                    e.checked_mul(factor)
                        .expect("exponent overflow in Frobenius power")
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial over `F_p` in sparse form.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::from_terms(ring, [(Monomial::var(ring.nvars(), i), 1)])
    }

    /// Collects terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let field = ring.field();
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            let c = field.reduce(c);
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: BTreeMap<Monomial, u64>) -> Self {
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms in graded-lex descending order; coefficients in `[1, p)`.
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Indices of the variables occurring in some term.
    pub fn support(&self) -> ElementSet {
        self.terms
            .iter()
            .fold(ElementSet::EMPTY, |s, (m, _)| s.union(m.support()))
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(FfpolyError::ContextMismatch)
        }
    }

    fn combine(&self, other: &Polynomial, negate_other: bool) -> Result<Polynomial> {
        self.same_ring(other)?;
        let field = self.ring.field();
        let mut acc: BTreeMap<Monomial, u64> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let c = if negate_other { field.neg(*c) } else { *c };
            let slot = acc.entry(m.clone()).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let field = self.ring.field();
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let slot = acc.entry(m1.mul(m2)).or_insert(0);
                *slot = field.add(*slot, field.mul(*c1, *c2));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    /// `f^(p^m)`: over `F_p` every exponent is multiplied by `p^m` and the
    /// coefficients stay put.
    pub fn frobenius_power(&self, m: u32) -> Polynomial {
        let p = self.ring.characteristic();
        let factor = p
            .checked_pow(m)
            .and_then(|f| u32::try_from(f).ok())
            .expect("Frobenius exponent overflow");
        let mut terms: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .map(|(mono, c)| (mono.scaled(factor), *c))
            .collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Entry `i` is the least `val_p` of the nonzero `i`-th exponents, or `∞`
    /// when `X_i` does not occur.
    pub fn circuit_vector(&self) -> Result<CircuitVector> {
        if self.is_zero() {
            return Err(FfpolyError::ZeroPolynomial);
        }
        let p = self.ring.characteristic();
        let mut entries = vec![ExtInt::Inf; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = ExtInt::Fin(p_adic_valuation(e as u64, p)? as i64);
                if v < entries[i] {
                    entries[i] = v;
                }
            }
        }
        // a nonzero constant has no finite entry
        CircuitVector::new(entries)
    }

    /// Substitutes this polynomial into a larger ring via `index_map[i]` =
    /// position of variable `i` in `target`.
    pub fn embed(&self, target: &Arc<PolyRing>, index_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[index_map[i]] += x;
            }
            (Monomial(e), *c as i64)
        });
        Polynomial::from_terms(target, terms)
    }
}

/// `f op g` with a context check.
pub fn poly_arithmetic(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    f.arith(g, op)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Renders coefficients in the symmetric range `(-p/2, p/2]`, which the
/// parser reads back to the same polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let p = self.ring.characteristic();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A vector in `(ℤ ∪ {∞})^n` with at least one finite entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircuitVector {
    entries: Vec<ExtInt>,
}

impl CircuitVector {
    pub fn new(entries: Vec<ExtInt>) -> Result<Self> {
        if entries.iter().all(|e| !e.is_finite()) {
            return Err(FfpolyError::AllInfinite);
        }
        Ok(CircuitVector { entries })
    }

    pub fn entries(&self) -> &[ExtInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> ExtInt {
        self.entries[i]
    }

    /// Positions holding a finite entry.
    pub fn support(&self) -> ElementSet {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_finite())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn min_finite(&self) -> i64 {
        self.entries
            .iter()
            .filter_map(|e| e.finite())
            .min()
            .expect("circuit vector has a finite entry")
    }

    /// Adds `lambda` to every finite entry.
    pub fn shift(&self, lambda: i64) -> CircuitVector {
        CircuitVector {
            entries: self.entries.iter().map(|e| e.shift(lambda)).collect(),
        }
    }

    /// The representative of `self + ℤ·𝟙` whose least finite entry is 0.
    pub fn canonical(&self) -> CircuitVector {
        self.shift(-self.min_finite())
    }

    pub fn is_canonical(&self) -> bool {
        self.min_finite() == 0
    }
}

impl PartialOrd for CircuitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Support (lexicographic), then entries.
impl Ord for CircuitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support()
            .cmp(&other.support())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl fmt::Display for CircuitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, n: usize) -> Arc<PolyRing> {
        PolyRing::with_indexed_vars(p, n).unwrap()
    }

    fn poly(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    fn fin(v: &[Option<i64>]) -> Vec<ExtInt> {
        v.iter()
            .map(|e| e.map(ExtInt::Fin).unwrap_or(ExtInt::Inf))
            .collect()
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(PrimeField::new(9), Err(FfpolyError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(FfpolyError::NotPrime(1)));
    }

    #[test]
    fn valuations() {
        assert_eq!(p_adic_valuation(12, 2), Ok(2));
        assert_eq!(p_adic_valuation(1, 5), Ok(0));
        assert_eq!(p_adic_valuation(8, 2), Ok(3));
        assert_eq!(p_adic_valuation(0, 2), Err(FfpolyError::ZeroValuation));
    }

    #[test]
    fn ring_rejects_bad_variables() {
        assert_eq!(
            PolyRing::new(2, vec!["x".into(), "x".into()]).unwrap_err(),
            FfpolyError::DuplicateVariable("x".into())
        );
        assert!(PolyRing::new(2, vec!["1x".into()]).is_err());
    }

    #[test]
    fn char_two_doubling_vanishes() {
        let r = ring(2, 2);
        let f = poly(&r, "x1 + x2");
        assert!(f.add(&f).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares_mod_three() {
        let r = ring(3, 2);
        let prod = poly(&r, "x1 - x2").mul(&poly(&r, "x1 + x2")).unwrap();
        assert_eq!(prod, poly(&r, "x1^2 - x2^2"));
        assert_eq!(prod.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn multiplicative_identity() {
        let r = ring(5, 3);
        let f = poly(&r, "2*x1^3*x2 - x3 + 4");
        assert_eq!(f.mul(&Polynomial::one(&r)).unwrap(), f);
    }

    #[test]
    fn context_mismatch() {
        let f = poly(&ring(2, 2), "x1");
        let g = poly(&ring(3, 2), "x1");
        assert_eq!(f.add(&g), Err(FfpolyError::ContextMismatch));
        let h = poly(&ring(2, 3), "x1");
        assert_eq!(f.mul(&h), Err(FfpolyError::ContextMismatch));
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(2, 4);
        assert_eq!(poly(&r, "x1 + x2").frobenius_power(1), poly(&r, "x1^2 + x2^2"));
        let f = poly(&r, "x1*x2 - x4");
        assert_eq!(f.frobenius_power(2), poly(&r, "x1^4*x2^4 - x4^4"));
        // repeated squaring agrees with term-wise scaling
        let sq = f.mul(&f).unwrap();
        let quartic = sq.mul(&sq).unwrap();
        assert_eq!(quartic, f.frobenius_power(2));
        assert_eq!(f.frobenius_power(0), f);
    }

    #[test]
    fn circuit_vector_examples() {
        let r = ring(2, 7);
        let f = poly(&r, "x1^2*x6 - x4*x5");
        assert_eq!(
            f.circuit_vector().unwrap().entries(),
            fin(&[Some(1), None, None, Some(0), Some(0), Some(0), None]).as_slice()
        );
        let g = poly(&r, "x1 - x2");
        assert_eq!(
            g.circuit_vector().unwrap().entries(),
            fin(&[Some(0), Some(0), None, None, None, None, None]).as_slice()
        );
        let r3 = ring(2, 3);
        let h = poly(&r3, "x1^4 + x1^2*x2 + x3");
        assert_eq!(
            h.circuit_vector().unwrap().entries(),
            fin(&[Some(1), Some(0), Some(0)]).as_slice()
        );
        assert_eq!(
            Polynomial::zero(&r).circuit_vector(),
            Err(FfpolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn canonical_form() {
        let v = CircuitVector::new(fin(&[Some(3), None, Some(5)])).unwrap();
        assert_eq!(v.canonical().entries(), fin(&[Some(0), None, Some(2)]).as_slice());
        assert!(v.canonical().is_canonical());
        assert_eq!(
            CircuitVector::new(vec![ExtInt::Inf; 2]),
            Err(FfpolyError::AllInfinite)
        );
    }

    fn arb_poly(p: u64, n: usize) -> impl Strategy<Value = Polynomial> {
        let r = ring(p, n);
        prop::collection::vec(
            (prop::collection::vec(0u32..6, n), -20i64..20),
            0..6,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(&r, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
        })
    }

    proptest! {
        #[test]
        fn frobenius_shifts_circuit_vector(f in arb_poly(3, 4), m in 0u32..3) {
            prop_assume!(!f.is_constant());
            let base = f.circuit_vector().unwrap();
            let lifted = f.frobenius_power(m).circuit_vector().unwrap();
            prop_assert_eq!(lifted, base.shift(m as i64));
        }

        #[test]
        fn circuit_vector_support_is_variable_set(f in arb_poly(2, 5)) {
            prop_assume!(!f.is_constant());
            prop_assert_eq!(f.circuit_vector().unwrap().support(), f.support());
        }

        #[test]
        fn circuit_vector_ignores_scalars(f in arb_poly(5, 3), c in 1u64..5) {
            prop_assume!(!f.is_constant());
            prop_assert_eq!(f.scale(c).circuit_vector(), f.circuit_vector());
        }

        #[test]
        fn print_parse_fixed_point(f in arb_poly(7, 3)) {
            let text = f.to_string();
            let back = Polynomial::parse(&text, f.ring()).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn ring_axioms(f in arb_poly(3, 3), g in arb_poly(3, 3), h in arb_poly(3, 3)) {
            let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
            let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f.sub(&f).unwrap().is_zero());
        }
    }
}
