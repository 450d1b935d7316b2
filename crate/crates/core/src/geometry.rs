//! Points, evaluation, zero sets and tangent spaces.
//!
//! A point is given by compatible `L`-th roots `u_i` of its coordinates
//! (`x_i = u_i^L`), so `X_i^{a/b}` evaluates to `u_i^{aL/b}` whenever `b | L`.
//! No root extraction is ever performed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::flatten::{flatten, integer_exponents};
use crate::ideals::IdealPresentation;
use crate::linalg::Matrix;
use crate::poly::{LaurentQPolynomial, Monomial, QPolynomial, RationalExponent};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointWithRoots {
    root_order: u64,
    roots: Vec<FieldElement>,
}

impl PointWithRoots {
    pub fn new(root_order: u64, roots: Vec<FieldElement>) -> Result<Self> {
        if root_order == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(first) = roots.first() {
            if roots.iter().any(|r| r.field() != first.field()) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PointWithRoots { root_order, roots })
    }

    /// A point with integer coordinates only (`L = 1`).
    pub fn plain(coords: Vec<FieldElement>) -> Result<Self> {
        Self::new(1, coords)
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn roots(&self) -> &[FieldElement] {
        &self.roots
    }

    pub fn dimension(&self) -> usize {
        self.roots.len()
    }

    /// The coordinates `x_i = u_i^L`.
    pub fn coordinates(&self) -> Vec<FieldElement> {
        self.roots.iter().map(|u| u.pow(self.root_order)).collect()
    }

    /// Multiplies every root by `mu`, i.e. scales the point by `mu^L`.
    pub fn scaled(&self, mu: &FieldElement) -> PointWithRoots {
        PointWithRoots {
            root_order: self.root_order,
            roots: self.roots.iter().map(|u| u * mu).collect(),
        }
    }

    /// `u^{e L}` for an exponent whose denominator divides `L`.
    pub fn root_power(&self, u: &FieldElement, e: &RationalExponent) -> Result<FieldElement> {
        let scaled = e.scale(&BigInt::from(self.root_order));
        if !scaled.is_integer() {
            return Err(Error::RootOrderMismatch {
                denominator: e.denom().to_string(),
                root_order: self.root_order.to_string(),
            });
        }
        u.pow_signed(scaled.numer())
    }
}

/// Exact value of `f` at `point`.
pub fn evaluate(f: &LaurentQPolynomial, point: &PointWithRoots) -> Result<FieldElement> {
    if point.dimension() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: point.dimension(),
        });
    }
    if point.roots.first().is_some_and(|u| u.field() != f.field()) {
        return Err(Error::FieldMismatch);
    }
    let mut acc = f.field().zero();
    for (m, c) in f.terms() {
        let mut term = c.clone();
        for (i, e) in m.iter() {
            let u = &point.roots[i];
            if e.is_negative() && u.is_zero() {
                return Err(Error::PoleAtPoint(i));
            }
            term = &term * &point.root_power(u, e)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn horner(coeffs: &[FieldElement], x: &FieldElement, field: Field) -> FieldElement {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| &(&acc * x) + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Zeros of a one-variable polynomial.
///
/// The polynomial is flattened at its level `L`; each root `a` of the
/// flattened polynomial gives the zero `a^L`. Over `Q` only rational roots of
/// the flattened polynomial are found; over `F_p` every residue is scanned.
pub fn roots_univariate(f: &QPolynomial) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = f.variables();
    if vars.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let Some(&var) = vars.iter().next() else {
        return Ok(Vec::new());
    };
    let field = f.field();
    let (map, flat) = flatten(std::slice::from_ref(f))?;
    let level = map
        .level(var)
        .to_u64()
        .ok_or_else(|| Error::ExponentTooLarge(map.level(var).to_string()))?;
    let g = &flat[0];
    let deg =
        integer_exponents(&Monomial::var(0, g.degree_in(var).expect("nonzero")), 1)?[0] as usize;
    let mut dense = vec![field.zero(); deg + 1];
    for (m, c) in g.terms() {
        let e = integer_exponents(&Monomial::var(0, m.exponent(var)), 1)?[0] as usize;
        dense[e] = c.clone();
    }

    let mut found: BTreeSet<FieldElement> = BTreeSet::new();
    match field {
        Field::Prime(_) => {
            for a in field.elements().expect("finite") {
                if horner(&dense, &a, field).is_zero() {
                    found.insert(a.pow(level));
                }
            }
        }
        Field::Rational => {
            let lowest = dense.iter().position(|c| !c.is_zero()).expect("nonzero");
            if lowest > 0 {
                found.insert(field.zero());
            }
            let reduced = &dense[lowest..];
            let den = reduced.iter().fold(BigInt::one(), |acc, c| {
                acc.lcm(c.as_rational().expect("q").denom())
            });
            let ints: Vec<BigInt> = reduced
                .iter()
                .map(|c| {
                    let r = c.as_rational().expect("q");
                    r.numer() * (&den / r.denom())
                })
                .collect();
            let (a0, an) = (&ints[0], ints.last().expect("nonempty"));
            if reduced.len() > 1 {
                for p in divisors(a0) {
                    for q in divisors(an) {
                        for sign in [1, -1] {
                            let cand = crate::field::rat_reduce(&p * sign, q.clone())?;
                            if horner(reduced, &cand, field).is_zero() {
                                found.insert(cand.pow(level));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn check_root_order(gens: &[QPolynomial], root_order: u64) -> Result<()> {
    let l = BigInt::from(root_order);
    for g in gens {
        for i in 0..g.nvars() {
            let d = g.denominator_lcm(i);
            if !(&l % &d).is_zero() {
                return Err(Error::RootOrderMismatch {
                    denominator: d.to_string(),
                    root_order: root_order.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Every root vector in `F_p^n` at which all generators vanish.
pub fn variety_root_vectors(
    gens: &IdealPresentation,
    root_order: u64,
) -> Result<Vec<PointWithRoots>> {
    let field = gens.field();
    let Field::Prime(p) = field else {
        return Err(Error::NotPrimeField);
    };
    check_root_order(gens.generators(), root_order)?;
    let n = gens.nvars();
    let total = (p as u128)
        .checked_pow(n as u32)
        .ok_or(Error::ExponentTooLarge(format!("{p}^{n}")))?;
    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    for _ in 0..total {
        let roots: Vec<FieldElement> = digits.iter().map(|&r| field.from_i64(r as i64)).collect();
        let point = PointWithRoots::new(root_order, roots)?;
        let mut on = true;
        for g in gens.generators() {
            if !evaluate(g, &point)?.is_zero() {
                on = false;
                break;
            }
        }
        if on {
            out.push(point);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// Zero set over `F_p`, one representative root vector per induced point `x = u^L`.
pub fn variety_bruteforce(
    gens: &IdealPresentation,
    root_order: u64,
) -> Result<Vec<PointWithRoots>> {
    let mut seen = BTreeSet::new();
    Ok(variety_root_vectors(gens, root_order)?
        .into_iter()
        .filter(|pt| seen.insert(pt.coordinates()))
        .collect())
}

/// Formal partial derivative with the rational power rule.
pub fn partial_derivative(f: &QPolynomial, index: usize) -> Result<LaurentQPolynomial> {
    if index >= f.nvars() {
        return Err(Error::VariableOutOfRange {
            index,
            nvars: f.nvars(),
        });
    }
    let field = f.field();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponent(index);
        if e.is_zero() {
            continue;
        }
        let factor = field.from_rational(e.as_ratio())?;
        let lowered = m.mul(&Monomial::var(index, RationalExponent::integer(-1)));
        terms.push((lowered, c * &factor));
    }
    QPolynomial::from_terms(field, f.nvars(), terms)
}

/// The `n x r` matrix of partials `d f_j / d X_i` at the point.
pub fn jacobian(gens: &[QPolynomial], point: &PointWithRoots) -> Result<Matrix> {
    let first = gens.first().ok_or(Error::EmptyInput)?;
    let (field, n) = (first.field(), first.nvars());
    if gens.iter().any(|g| g.field() != field || g.nvars() != n) {
        return Err(Error::FieldMismatch);
    }
    let mut m = Matrix::zeros(field, n, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for i in 0..n {
            let d = partial_derivative(g, i)?;
            m.set(i, j, evaluate(&d, point)?);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSpace {
    pub dimension: usize,
    /// `sum_i (d f_j / d X_i)(P) (X_i - x_i)`, one per generator.
    pub equations: Vec<QPolynomial>,
}

pub fn tangent_space(gens: &[QPolynomial], point: &PointWithRoots) -> Result<TangentSpace> {
    for (j, g) in gens.iter().enumerate() {
        if !evaluate(g, point)?.is_zero() {
            return Err(Error::PointNotOnVariety(j));
        }
    }
    let jac = jacobian(gens, point)?;
    let (field, n) = (jac.field(), jac.rows());
    let coords = point.coordinates();
    let equations = (0..jac.cols())
        .map(|j| {
            let mut eq = QPolynomial::zero(field, n);
            for (i, x) in coords.iter().enumerate() {
                let c = jac.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let xi = QPolynomial::var(field, n, i)?;
                let shifted = xi.checked_sub(&QPolynomial::constant(field, n, x.clone()))?;
                eq = eq.checked_add(&shifted.scale(c))?;
            }
            Ok(eq)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TangentSpace {
        dimension: n - jac.rank(),
        equations,
    })
}
