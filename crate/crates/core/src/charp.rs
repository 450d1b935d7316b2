//! Characteristic-p maps: Frobenius roots, substitution and pullbacks.
//!
//! Over `F_p` the map `f -> f^{1/p}` that divides every exponent by `p` is a
//! ring homomorphism inverting Frobenius, which is what makes substitution of
//! polynomials into `p`-power-denominator exponents well defined. Over `Q` a
//! fractional power of a sum is a binomial series and composition fails.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{QPolynomial, RationalExponent};

/// `g` with `g^p = f`, for `f` over `F_p`.
pub fn p_th_root(f: &QPolynomial) -> Result<QPolynomial> {
    let p = match f.field() {
        Field::Prime(p) => BigInt::from(p),
        Field::Rational => return Err(Error::NotPrimeField),
    };
    f.map_terms(f.nvars(), |m, c| {
        (m.map(Some, |_, e| e.div_int(&p)), c.clone())
    })
}

/// Splits `b = p^k * rest` with `rest` coprime to `p`.
fn split_p_power(b: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut rest = b.clone();
    let mut k = 0;
    while (&rest % &p).is_zero() {
        rest /= &p;
        k += 1;
    }
    (k, rest)
}

fn exact_root_int(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = v.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *v).then_some(r)
}

/// `c^{1/b}` when it is canonical: an exact rational root over `Q`, or a root
/// through Frobenius (identity on `F_p`) when `b` is a power of `p`.
fn coefficient_root(c: &FieldElement, b: &BigInt) -> Result<FieldElement> {
    if b.is_one() {
        return Ok(c.clone());
    }
    match c {
        FieldElement::Rational(r) => {
            let k = b
                .to_u32()
                .ok_or_else(|| Error::ExponentTooLarge(b.to_string()))?;
            match (exact_root_int(r.numer(), k), exact_root_int(r.denom(), k)) {
                (Some(n), Some(d)) => Ok(FieldElement::Rational(BigRational::new(n, d))),
                _ => Err(Error::CompositionNotPolynomial(format!(
                    "coefficient {c} has no rational {b}-th root"
                ))),
            }
        }
        FieldElement::PrimeField { p, .. } => {
            let (_, rest) = split_p_power(b, *p);
            if rest.is_one() || c.is_one() {
                Ok(c.clone())
            } else {
                Err(Error::CompositionNotPolynomial(format!(
                    "coefficient {c} has no canonical {rest}-th root in F_{p}"
                )))
            }
        }
    }
}

/// `g^e` for a rational exponent, when the result is again a polynomial.
///
/// Legal cases: integer `e >= 0`; `g` a single term whose coefficient has a
/// canonical root; or, over `F_p`, `e = a / p^k` with `a >= 0`.
pub fn rational_power(g: &QPolynomial, e: &RationalExponent) -> Result<QPolynomial> {
    if e.is_integer() && !e.is_negative() {
        let k = e
            .numer()
            .to_u64()
            .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
        return Ok(g.pow(k));
    }
    if g.is_zero() {
        return if e.is_negative() {
            Err(Error::CompositionNotPolynomial(
                "negative power of zero".into(),
            ))
        } else {
            Ok(g.clone())
        };
    }
    if g.len() == 1 {
        let (m, c) = g.terms().next().expect("one term");
        let root = coefficient_root(c, e.denom())?;
        let coeff = root.pow_signed(e.numer()).map_err(|_| {
            Error::CompositionNotPolynomial("negative power of a zero coefficient".into())
        })?;
        let mono = m.map(Some, |_, x| {
            RationalExponent::from_ratio(x.as_ratio() * e.as_ratio())
        });
        return QPolynomial::from_terms(g.field(), g.nvars(), [(mono, coeff)]);
    }
    match g.field() {
        Field::Rational => Err(Error::CompositionNotPolynomial(format!(
            "power {e} of a sum has no finite expansion in characteristic 0"
        ))),
        Field::Prime(p) => {
            if e.is_negative() {
                return Err(Error::CompositionNotPolynomial(format!(
                    "negative power {e} of a sum"
                )));
            }
            let (k, rest) = split_p_power(e.denom(), p);
            if !rest.is_one() {
                return Err(Error::CompositionNotPolynomial(format!(
                    "denominator {} has a factor {rest} coprime to p = {p}",
                    e.denom()
                )));
            }
            let mut root = g.clone();
            for _ in 0..k {
                root = p_th_root(&root)?;
            }
            let a = e
                .numer()
                .to_u64()
                .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
            Ok(root.pow(a))
        }
    }
}

/// Substitutes `gs[i]` for variable `i` of `f`.
pub fn compose(f: &QPolynomial, gs: &[QPolynomial]) -> Result<QPolynomial> {
    if gs.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: gs.len(),
        });
    }
    let Some(first) = gs.first() else {
        return Ok(f.clone());
    };
    let (field, nvars) = (first.field(), first.nvars());
    if field != f.field() || gs.iter().any(|g| g.field() != field || g.nvars() != nvars) {
        return Err(Error::FieldMismatch);
    }
    let mut cache: HashMap<(usize, RationalExponent), QPolynomial> = HashMap::new();
    let mut out = QPolynomial::zero(field, nvars);
    for (m, c) in f.terms() {
        let mut term = QPolynomial::constant(field, nvars, c.clone());
        for (i, e) in m.iter() {
            let key = (i, e.clone());
            if !cache.contains_key(&key) {
                let v = rational_power(&gs[i], e)?;
                cache.insert(key.clone(), v);
            }
            term = term.checked_mul(&cache[&key])?;
        }
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

/// `(phi_1, ..., phi_m)`, a map from n-space to m-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    components: Vec<QPolynomial>,
    source_arity: usize,
    field: Field,
}

impl PolynomialMap {
    pub fn new(field: Field, source_arity: usize, components: Vec<QPolynomial>) -> Result<Self> {
        if components
            .iter()
            .any(|c| c.field() != field || c.nvars() != source_arity)
        {
            return Err(Error::FieldMismatch);
        }
        Ok(PolynomialMap {
            components,
            source_arity,
            field,
        })
    }

    /// The map whose pullback sends target variable `j` to `images[j]`.
    pub fn from_algebra_images(
        field: Field,
        source_arity: usize,
        images: Vec<QPolynomial>,
    ) -> Result<Self> {
        Self::new(field, source_arity, images)
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let components = (0..n)
            .map(|i| QPolynomial::var(field, n, i).expect("index in range"))
            .collect();
        PolynomialMap {
            components,
            source_arity: n,
            field,
        }
    }

    pub fn components(&self) -> &[QPolynomial] {
        &self.components
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.components.len()
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn after(&self, inner: &PolynomialMap) -> Result<PolynomialMap> {
        if inner.target_arity() != self.source_arity {
            return Err(Error::ArityMismatch {
                expected: self.source_arity,
                got: inner.target_arity(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| compose(c, &inner.components))
            .collect::<Result<_>>()?;
        PolynomialMap::new(self.field, inner.source_arity, components)
    }
}

/// `phi^*(g) = g ∘ phi`.
pub fn pullback(phi: &PolynomialMap, g: &QPolynomial) -> Result<QPolynomial> {
    compose(g, &phi.components)
}
