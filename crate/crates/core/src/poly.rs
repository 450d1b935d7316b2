//! Sparse polynomials whose exponents are rational numbers.
//!
//! Ring elements have nonnegative exponents. The same container also holds
//! Laurent polynomials (negative exponents), which appear as derivatives and
//! as cohomology basis elements; operations that need ring elements check
//! [`QPolynomial::has_negative_exponents`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A reduced fraction used as an exponent or a degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalExponent(BigRational);

impl RationalExponent {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalExponent(BigRational::new(numerator.into(), den)))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        RationalExponent(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        RationalExponent(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalExponent(BigRational::one())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        RationalExponent(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        RationalExponent(self.0.abs())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RationalExponent(&self.0 * BigRational::from_integer(k.clone()))
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        RationalExponent(&self.0 / BigRational::from_integer(k.clone()))
    }

    /// Parses `"a"` or `"a/b"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::SyntaxError {
            offset: 0,
            message: format!("`{text}` is not a rational number"),
        };
        let (n, d) = match text.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Self::new(n, d)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for &RationalExponent {
    type Output = RationalExponent;
    fn add(self, rhs: &RationalExponent) -> RationalExponent {
        RationalExponent(&self.0 + &rhs.0)
    }
}

impl Sub for &RationalExponent {
    type Output = RationalExponent;
    fn sub(self, rhs: &RationalExponent) -> RationalExponent {
        RationalExponent(&self.0 - &rhs.0)
    }
}

impl Neg for &RationalExponent {
    type Output = RationalExponent;
    fn neg(self) -> RationalExponent {
        RationalExponent(-&self.0)
    }
}

/// `T_0^{e_0} ... T_{n-1}^{e_{n-1}}`, storing only nonzero exponents.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the lowest-index variable where the two differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(usize, RationalExponent)>,
    degree: RationalExponent,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: Vec::new(),
            degree: RationalExponent::zero(),
        }
    }

    pub fn var(index: usize, exp: RationalExponent) -> Self {
        Self::from_pairs([(index, exp)])
    }

    /// Builds a monomial; repeated indices multiply, zero exponents vanish.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, RationalExponent)>) -> Self {
        let mut map: BTreeMap<usize, RationalExponent> = BTreeMap::new();
        for (i, e) in pairs {
            let slot = map.entry(i).or_insert_with(RationalExponent::zero);
            *slot = &*slot + &e;
        }
        let exps: Vec<_> = map.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        let degree = exps
            .iter()
            .fold(RationalExponent::zero(), |acc, (_, e)| &acc + e);
        Monomial { exps, degree }
    }

    pub fn from_dense(exps: &[RationalExponent]) -> Self {
        Self::from_pairs(exps.iter().cloned().enumerate())
    }

    pub fn exponent(&self, index: usize) -> RationalExponent {
        self.exps
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|pos| self.exps[pos].1.clone())
            .unwrap_or_else(|_| RationalExponent::zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RationalExponent)> {
        self.exps.iter().map(|(i, e)| (*i, e))
    }

    pub fn degree(&self) -> &RationalExponent {
        &self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|(i, _)| *i)
    }

    pub fn has_negative(&self) -> bool {
        self.exps.iter().any(|(_, e)| e.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.exps.iter().all(|(_, e)| e.is_integer())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Self::from_pairs(self.exps.iter().chain(other.exps.iter()).cloned())
    }

    /// Applies `f` to every stored exponent and renames variables through `rename`.
    pub fn map(
        &self,
        mut rename: impl FnMut(usize) -> Option<usize>,
        mut f: impl FnMut(usize, &RationalExponent) -> RationalExponent,
    ) -> Monomial {
        Self::from_pairs(
            self.exps
                .iter()
                .filter_map(|(i, e)| rename(*i).map(|j| (j, f(*i, e)))),
        )
    }

    /// Lowest common multiple of exponent denominators of variable `index`.
    pub fn denominator_of(&self, index: usize) -> BigInt {
        self.exponent(index).denom().clone()
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        let zero = RationalExponent::zero();
        loop {
            let (ia, ib) = (a.peek().map(|x| x.0), b.peek().map(|x| x.0));
            let (idx, ea, eb) = match (ia, ib) {
                (None, None) => return Ordering::Equal,
                (Some(i), None) => (i, &a.peek().unwrap().1, &zero),
                (None, Some(j)) => (j, &zero, &b.peek().unwrap().1),
                (Some(i), Some(j)) => {
                    let idx = i.min(j);
                    let ea = if i == idx {
                        &a.peek().unwrap().1
                    } else {
                        &zero
                    };
                    let eb = if j == idx {
                        &b.peek().unwrap().1
                    } else {
                        &zero
                    };
                    (idx, ea, eb)
                }
            };
            match ea.cmp(eb) {
                Ordering::Equal => {}
                o => return o,
            }
            if ia == Some(idx) {
                a.next();
            }
            if ib == Some(idx) {
                b.next();
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.lex_cmp(other))
    }
}

/// Sparse polynomial over a [`Field`] in a fixed universe of `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

/// Same container; exponents may be negative.
pub type LaurentQPolynomial = QPolynomial;

impl QPolynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        QPolynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, nvars);
        assert_eq!(c.field(), field, "field mismatch");
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// `T_index^exp` with coefficient one.
    pub fn var_power(
        field: Field,
        nvars: usize,
        index: usize,
        exp: RationalExponent,
    ) -> Result<Self> {
        Self::from_terms(field, nvars, [(Monomial::var(index, exp), field.one())])
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Result<Self> {
        Self::var_power(field, nvars, index, RationalExponent::one())
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if let Some(i) = m.max_var() {
                if i >= nvars {
                    return Err(Error::VariableOutOfRange { index: i, nvars });
                }
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Accumulates a term in place, dropping it if the coefficient cancels.
    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one())
    }

    /// Highest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(Monomial::is_integral)
    }

    /// Variables with a nonzero exponent in some term.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(i, _)| i))
            .collect()
    }

    /// Maximum total degree over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<RationalExponent> {
        self.terms.keys().map(|m| m.degree().clone()).max()
    }

    pub fn degree_in(&self, index: usize) -> Option<RationalExponent> {
        self.terms.keys().map(|m| m.exponent(index)).max()
    }

    fn check_compatible(&self, other: &QPolynomial) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &QPolynomial) -> Result<QPolynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &QPolynomial) -> Result<QPolynomial> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> QPolynomial {
        QPolynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &QPolynomial) -> Result<QPolynomial> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> QPolynomial {
        let mut out = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElement) -> QPolynomial {
        let mut out = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect();
        out
    }

    pub fn pow(&self, mut exp: u64) -> QPolynomial {
        let mut acc = Self::one(self.field, self.nvars);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> QPolynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Rebuilds the term map from scratch.
    pub fn renormalized(&self) -> QPolynomial {
        Self::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial::from_pairs(m.iter().map(|(i, e)| (i, e.clone()))),
                    c.clone(),
                )
            }),
        )
        .expect("already valid")
    }

    /// Maps every term through `f`, re-collecting like terms in a universe of `nvars`.
    pub fn map_terms(
        &self,
        nvars: usize,
        mut f: impl FnMut(&Monomial, &FieldElement) -> (Monomial, FieldElement),
    ) -> Result<QPolynomial> {
        let mapped: Vec<_> = self.terms.iter().map(|(m, c)| f(m, c)).collect();
        Self::from_terms(self.field, nvars, mapped)
    }

    /// Same polynomial viewed in a larger universe.
    pub fn with_nvars(&self, nvars: usize) -> Result<QPolynomial> {
        self.map_terms(nvars, |m, c| (m.clone(), c.clone()))
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

impl QPolynomial {
    /// Least common multiple of exponent denominators of variable `index`.
    pub fn denominator_lcm(&self, index: usize) -> BigInt {
        self.terms
            .keys()
            .map(|m| m.denominator_of(index))
            .fold(BigInt::one(), |a, b| lcm_big(&a, &b))
    }
}

macro_rules! poly_ops {
    ($($tr:ident $method:ident $checked:ident),*) => {$(
        impl $tr for &QPolynomial {
            type Output = QPolynomial;
            /// Panics on mismatched fields or universes; use the inherent method to get a `Result`.
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                QPolynomial::$checked(self, rhs).expect("field mismatch")
            }
        }
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                QPolynomial::$checked(&self, &rhs).expect("field mismatch")
            }
        }
    )*};
}
poly_ops!(Add add checked_add, Sub sub checked_sub, Mul mul checked_mul);

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::neg(self)
    }
}
