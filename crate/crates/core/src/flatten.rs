//! Passage between rational exponents and ordinary integer-degree polynomials.
//!
//! Variable `i` at root order `L_i` is replaced by `Y_i = T_i^{1/L_i}`, so that
//! `T_i^{a/b}` becomes `Y_i^{a L_i / b}`. Ideals of the rational-exponent ring
//! that are finitely generated live at one such level, and membership or GCD
//! questions there can be answered with integer-degree algorithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{Monomial, QPolynomial, RationalExponent};

/// Per-variable root orders `L_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlattenMap {
    levels: Vec<BigInt>,
}

impl FlattenMap {
    pub fn new(levels: Vec<BigInt>) -> Result<Self> {
        if levels.iter().any(|l| l < &BigInt::one()) {
            return Err(Error::DivisionByZero);
        }
        Ok(FlattenMap { levels })
    }

    pub fn identity(nvars: usize) -> Self {
        FlattenMap {
            levels: vec![BigInt::one(); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[BigInt] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &BigInt {
        &self.levels[i]
    }

    /// Every level multiplied by `k`.
    pub fn refined(&self, k: u64) -> FlattenMap {
        FlattenMap {
            levels: self.levels.iter().map(|l| l * k).collect(),
        }
    }

    /// Per-variable lcm with another map.
    pub fn join(&self, other: &FlattenMap) -> Result<FlattenMap> {
        if self.nvars() != other.nvars() {
            return Err(Error::FieldMismatch);
        }
        Ok(FlattenMap {
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(a, b)| a.lcm(b))
                .collect(),
        })
    }

    /// Same map with one extra variable at level 1 appended.
    pub fn extended(&self) -> FlattenMap {
        let mut levels = self.levels.clone();
        levels.push(BigInt::one());
        FlattenMap { levels }
    }
}

fn check_shared(fs: &[QPolynomial]) -> Result<()> {
    let first = fs.first().ok_or(Error::EmptyInput)?;
    if fs
        .iter()
        .any(|f| f.field() != first.field() || f.nvars() != first.nvars())
    {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Minimal level at which every polynomial in `fs` has integer exponents.
pub fn exponent_lcm(fs: &[QPolynomial]) -> Result<FlattenMap> {
    check_shared(fs)?;
    let n = fs[0].nvars();
    let levels = (0..n)
        .map(|i| {
            fs.iter()
                .fold(BigInt::one(), |acc, f| acc.lcm(&f.denominator_lcm(i)))
        })
        .collect();
    Ok(FlattenMap { levels })
}

/// Flattens at the minimal joint level.
pub fn flatten(fs: &[QPolynomial]) -> Result<(FlattenMap, Vec<QPolynomial>)> {
    let map = exponent_lcm(fs)?;
    let flat = flatten_at(&map, fs)?;
    Ok((map, flat))
}

/// Flattens at a prescribed level, which must be a multiple of the minimal one.
pub fn flatten_at(map: &FlattenMap, fs: &[QPolynomial]) -> Result<Vec<QPolynomial>> {
    fs.iter().map(|f| flatten_one(map, f)).collect()
}

fn flatten_one(map: &FlattenMap, f: &QPolynomial) -> Result<QPolynomial> {
    if f.nvars() != map.nvars() {
        return Err(Error::FieldMismatch);
    }
    if f.has_negative_exponents() {
        return Err(Error::LaurentNotFlattenable);
    }
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let mut pairs = Vec::new();
        for (i, e) in m.iter() {
            let scaled = e.scale(map.level(i));
            if !scaled.is_integer() {
                return Err(Error::InsufficientLevel {
                    var: i,
                    minimal: e.denom().to_string(),
                    requested: map.level(i).to_string(),
                });
            }
            pairs.push((i, scaled));
        }
        terms.push((Monomial::from_pairs(pairs), c.clone()));
    }
    QPolynomial::from_terms(f.field(), f.nvars(), terms)
}

/// Inverse substitution `Y_i -> T_i^{1/L_i}`.
pub fn unflatten(map: &FlattenMap, g: &QPolynomial) -> Result<QPolynomial> {
    if g.nvars() != map.nvars() {
        return Err(Error::FieldMismatch);
    }
    g.map_terms(g.nvars(), |m, c| {
        (m.map(Some, |i, e| e.div_int(map.level(i))), c.clone())
    })
}

/// Integer exponent vector of a flattened monomial.
pub(crate) fn integer_exponents(m: &Monomial, nvars: usize) -> Result<Vec<u32>> {
    let mut out = vec![0u32; nvars];
    for (i, e) in m.iter() {
        if !e.is_integer() || e.is_negative() {
            return Err(Error::LaurentNotFlattenable);
        }
        out[i] = e
            .numer()
            .to_u32()
            .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
    }
    Ok(out)
}

/// Outcome of the normalizing substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherResult {
    pub map: FlattenMap,
    /// `a_i`, one per variable except the last.
    pub shifts: Vec<RationalExponent>,
    /// Integer weights `e_i` used at the flattened level.
    pub weights: Vec<BigInt>,
    pub transformed: QPolynomial,
    /// Coefficient and exponent of the unique top power of the last variable.
    pub leading: (FieldElement, RationalExponent),
}

/// Substitutes `T_i^{1/L_i} -> T_i^{1/L_i} + T_n^{a_i}` for every variable but the last, so
/// that the result is monic-up-to-a-constant in the last variable.
///
/// At the flattened level the shift exponents are `e_i = (1 + deg)^{n-1-i}`; the
/// base-`(1+deg)` digits of a flattened exponent vector are then read off the
/// power of the last variable, so distinct terms give distinct top powers.
pub fn noether_substitution(f: &QPolynomial) -> Result<NoetherResult> {
    let n = f.nvars();
    if n == 0 || f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let (map, flat) = flatten(std::slice::from_ref(f))?;
    let g = &flat[0];
    let deg = g.total_degree().expect("nonconstant");
    let base = deg.numer() + BigInt::one();
    let last = n - 1;
    let weights: Vec<BigInt> = (0..n)
        .map(|i| num_traits::pow(base.clone(), last - i))
        .collect();

    let field = g.field();
    let images: Vec<QPolynomial> = (0..last)
        .map(|i| {
            let yi = QPolynomial::var(field, n, i)?;
            let shift = QPolynomial::var_power(
                field,
                n,
                last,
                RationalExponent::integer(weights[i].clone()),
            )?;
            Ok(&yi + &shift)
        })
        .collect::<Result<_>>()?;

    let mut out = QPolynomial::zero(field, n);
    for (m, c) in g.terms() {
        let mut term = QPolynomial::constant(field, n, c.clone());
        for (i, e) in m.iter() {
            let k = e
                .numer()
                .to_u64()
                .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
            let factor = if i == last {
                QPolynomial::var_power(field, n, last, e.clone())?
            } else {
                images[i].pow(k)
            };
            term = &term * &factor;
        }
        out = &out + &term;
    }

    let (coeff, top) = unique_pure_top(&out, last).expect("weights force a unique pure top power");
    let transformed = unflatten(&map, &out)?;
    let shifts = (0..last)
        .map(|i| RationalExponent::integer(weights[i].clone()).div_int(map.level(last)))
        .collect();
    Ok(NoetherResult {
        leading: (coeff, top.div_int(map.level(last))),
        map,
        shifts,
        weights,
        transformed,
    })
}

/// If exactly one term attains the top exponent of `var` and it is a pure power of
/// `var`, returns its coefficient and exponent.
pub fn unique_pure_top(f: &QPolynomial, var: usize) -> Option<(FieldElement, RationalExponent)> {
    let top = f.degree_in(var)?;
    let mut hits = f.terms().filter(|(m, _)| m.exponent(var) == top);
    let (m, c) = hits.next()?;
    if hits.next().is_some() || m.iter().any(|(i, _)| i != var) {
        return None;
    }
    Some((c.clone(), top))
}
