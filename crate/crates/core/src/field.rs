//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Elements are plain values. Mixing elements of different fields in an
//! arithmetic operator is an invariant violation and panics; every public
//! polynomial operation checks field agreement first and reports
//! [`Error::FieldMismatch`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// Descriptor of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`; primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElement::PrimeField {
                residue: v.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                FieldElement::PrimeField {
                    residue: r.to_u64().expect("residue below p"),
                    p: *p,
                }
            }
        }
    }

    /// Maps a rational number into this field; over `F_p` the denominator must be invertible.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Rational => Ok(FieldElement::Rational(v.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                Ok(&num * &den.inv()?)
            }
        }
    }

    /// Parses `"a"` or `"a/b"` (optionally signed) into the field.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        let bad = || Error::SyntaxError {
            offset: 0,
            message: format!("`{text}` is not a field element"),
        };
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        let q = rat_reduce(num, den)?;
        match q {
            FieldElement::Rational(r) => self.from_rational(&r),
            FieldElement::PrimeField { .. } => unreachable!(),
        }
    }

    /// All elements of a prime field in residue order.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(
                (0..*p)
                    .map(|r| FieldElement::PrimeField { residue: r, p: *p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q` (always reduced) or of `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    PrimeField { residue: u64, p: u64 },
}

/// Reduced rational with positive denominator.
pub fn rat_reduce(
    numerator: impl Into<BigInt>,
    denominator: impl Into<BigInt>,
) -> Result<FieldElement> {
    let den = denominator.into();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(FieldElement::Rational(BigRational::new(
        numerator.into(),
        den,
    )))
}

/// Inverse of `a` modulo the prime `p`.
pub fn fp_inv(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::NotInvertible(format!("0 mod {p}")));
    }
    // Fermat: a^(p-2)
    Ok(pow_mod(a, p - 2, p))
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::PrimeField { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::PrimeField { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::PrimeField { residue, .. } => *residue == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::PrimeField { .. } => None,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_negative())
    }

    pub fn abs(&self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.abs()),
            other => other.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(Error::NotInvertible("0".into()))
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::PrimeField { residue, p } => Ok(FieldElement::PrimeField {
                residue: fp_inv(*residue, *p)?,
                p: *p,
            }),
        }
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        match self {
            FieldElement::Rational(r) => {
                let mut acc = BigRational::one();
                let mut base = r.clone();
                let mut e = exp;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                FieldElement::Rational(acc)
            }
            FieldElement::PrimeField { residue, p } => FieldElement::PrimeField {
                residue: pow_mod(*residue, exp, *p),
                p: *p,
            },
        }
    }

    /// Integer power with signed exponent; negative powers require a nonzero base.
    pub fn pow_signed(&self, exp: &BigInt) -> Result<FieldElement> {
        let mag = exp
            .abs()
            .to_u64()
            .ok_or_else(|| Error::ExponentTooLarge(exp.to_string()))?;
        let reduced = match self {
            // Fermat lets the exponent shrink modulo p-1 for units.
            FieldElement::PrimeField { residue, p } if *residue != 0 => mag % (p - 1),
            _ => mag,
        };
        let v = self.pow(reduced);
        if exp.is_negative() {
            v.inv()
        } else {
            Ok(v)
        }
    }

    fn assert_same(&self, rhs: &FieldElement) -> u64 {
        match (self, rhs) {
            (FieldElement::PrimeField { p, .. }, FieldElement::PrimeField { p: q, .. })
                if p == q =>
            {
                *p
            }
            (FieldElement::Rational(_), FieldElement::Rational(_)) => 0,
            _ => panic!("field mismatch: {self} vs {rhs}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let p = self.assert_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::PrimeField { residue: a, .. },
                FieldElement::PrimeField { residue: b, .. },
            ) => FieldElement::PrimeField {
                residue: (a + b) % p,
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let p = self.assert_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::PrimeField { residue: a, .. },
                FieldElement::PrimeField { residue: b, .. },
            ) => FieldElement::PrimeField {
                residue: a * b % p,
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::PrimeField { residue, p } => FieldElement::PrimeField {
                residue: (p - residue) % p,
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Rationals order by value; residues by least nonnegative representative.
impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (
                FieldElement::PrimeField { residue: a, p },
                FieldElement::PrimeField { residue: b, p: q },
            ) => (p, a).cmp(&(q, b)),
            (FieldElement::Rational(_), _) => Ordering::Less,
            (_, FieldElement::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::PrimeField { residue, .. } => write!(f, "{residue}"),
        }
    }
}
