//! Čech cohomology of the twisting sheaves `O(m)`, `m ∈ Q`, on projective
//! `n`-space, at a fixed exponent denominator level `D`.
//!
//! The Čech differential preserves the exponent vector `l = (l_0, ..., l_n)`
//! of a Laurent monomial, so the complex splits into one finite summand per
//! multidegree. The monomial `X^l` lies in the localization at `X_I` exactly
//! when every variable with `l_i < 0` belongs to `I`; the summand for `l`
//! therefore has one coordinate per subset `I ⊇ NEG(l)`. Ranks of the
//! differentials are computed by exact elimination, one summand at a time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{Monomial, RationalExponent};

/// Exponent vector of a Laurent monomial in `X_0, ..., X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree {
    exponents: Vec<RationalExponent>,
}

impl MultiDegree {
    pub fn new(exponents: Vec<RationalExponent>) -> Self {
        MultiDegree { exponents }
    }

    /// `l_i = numerators[i] / level`.
    pub fn at_level(numerators: &[i64], level: u64) -> Result<Self> {
        numerators
            .iter()
            .map(|&k| RationalExponent::new(k, level))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn exponents(&self) -> &[RationalExponent] {
        &self.exponents
    }

    pub fn total(&self) -> RationalExponent {
        self.exponents
            .iter()
            .fold(RationalExponent::zero(), |acc, e| &acc + e)
    }

    /// Bitmask of the variables with negative exponent.
    pub fn negative_set(&self) -> u32 {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_negative())
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_dense(&self.exponents)
    }
}

/// Cochain spaces `C^0, ..., C^n` with differentials `d_p : C^p -> C^{p+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(field: Field, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(Error::MalformedComplex(format!(
                "{} spots need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (p, d) in differentials.iter().enumerate() {
            if d.cols() != dims[p] || d.rows() != dims[p + 1] {
                return Err(Error::MalformedComplex(format!(
                    "d_{p} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[p + 1],
                    dims[p]
                )));
            }
            if d.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ChainComplex {
            field,
            dims,
            differentials,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// `d_{p+1} ∘ d_p = 0` for every `p`.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_some_and(|m| m.is_zero()))
    }
}

/// `(p+1)`-subsets of `{0..=n}` containing `required`, in lexicographic order.
fn subsets_containing(n: usize, size: usize, required: u32) -> Vec<u32> {
    fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n {
            if n + 1 - i < left {
                break;
            }
            rec(i + 1, n, left - 1, acc | (1 << i), out);
        }
    }
    let mut all = Vec::new();
    rec(0, n, size, 0, &mut all);
    all.retain(|s| s & required == required);
    all
}

/// The Čech summand of a single multidegree.
pub fn multidegree_complex(l: &MultiDegree, field: Field) -> ChainComplex {
    let n = l.exponents.len() - 1;
    let neg = l.negative_set();
    let spots: Vec<Vec<u32>> = (0..=n).map(|p| subsets_containing(n, p + 1, neg)).collect();
    let dims: Vec<usize> = spots.iter().map(Vec::len).collect();
    let mut differentials = Vec::with_capacity(n);
    for p in 0..n {
        let (src, dst) = (&spots[p], &spots[p + 1]);
        let mut d = Matrix::zeros(field, dst.len(), src.len());
        for (r, &big) in dst.iter().enumerate() {
            // omit the j-th smallest element of `big`, with sign (-1)^j
            let members: Vec<usize> = (0..=n).filter(|i| big & (1 << i) != 0).collect();
            for (j, &i) in members.iter().enumerate() {
                let small = big & !(1 << i);
                if let Some(c) = src.iter().position(|&s| s == small) {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    d.set(r, c, field.from_i64(sign));
                }
            }
        }
        differentials.push(d);
    }
    ChainComplex::new(field, dims, differentials).expect("shapes chain by construction")
}

/// `h_p = dim C^p - rank d_p - rank d_{p-1}`.
pub fn complex_cohomology_dims(c: &ChainComplex) -> Result<Vec<u64>> {
    let ranks: Vec<usize> = c.differentials.iter().map(Matrix::rank).collect();
    c.dims
        .iter()
        .enumerate()
        .map(|(p, &dim)| {
            let out = if p < ranks.len() { ranks[p] } else { 0 };
            let inc = if p > 0 { ranks[p - 1] } else { 0 };
            dim.checked_sub(out + inc)
                .map(|h| h as u64)
                .ok_or_else(|| Error::MalformedComplex("ranks exceed dimension; d∘d ≠ 0".into()))
        })
        .collect()
}

/// Cohomology dimensions summed over all multidegrees of a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyDims {
    pub h: Vec<u64>,
    pub n: usize,
    pub m: RationalExponent,
    pub level: u64,
    pub bound: RationalExponent,
    /// Number of multidegrees enumerated.
    pub multidegrees: u64,
    /// Multidegrees whose computed cohomology differs from the prediction
    /// `(1,0..0)` if no exponent is negative, `(0..0,1)` if all are, else zero.
    pub mismatches: u64,
}

/// Numerator of `m` at level `level`, if `m ∈ (1/level) Z`.
fn level_numerator(m: &RationalExponent, level: u64) -> Result<i64> {
    let scaled = m.scale(&BigInt::from(level));
    if !scaled.is_integer() {
        return Err(Error::DegreeLevelMismatch {
            degree: m.to_string(),
            level,
        });
    }
    scaled
        .numer()
        .to_i64()
        .ok_or_else(|| Error::ExponentTooLarge(m.to_string()))
}

/// Predicted per-multidegree cohomology.
pub fn predicted_dims(l: &MultiDegree) -> Vec<u64> {
    let n = l.exponents.len() - 1;
    let neg = l.negative_set();
    let mut h = vec![0; n + 1];
    if neg == 0 {
        h[0] = 1;
    } else if neg == (1u32 << (n + 1)) - 1 {
        h[n] = 1;
    }
    h
}

fn threads() -> usize {
    std::env::var("QDEG_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or(0)
}

/// Sum of multidegree cohomology over `l ∈ ((1/D) Z)^{n+1}` with `Σ l_i = m` and `max |l_i| <= E`.
pub fn twist_dims(
    n: usize,
    m: &RationalExponent,
    level: u64,
    bound: &RationalExponent,
) -> Result<CohomologyDims> {
    twist_dims_over(Field::Rational, n, m, level, bound)
}

pub fn twist_dims_over(
    field: Field,
    n: usize,
    m: &RationalExponent,
    level: u64,
    bound: &RationalExponent,
) -> Result<CohomologyDims> {
    if level == 0 {
        return Err(Error::DivisionByZero);
    }
    if n == 0 || n >= 31 {
        return Err(Error::VariableOutOfRange {
            index: n,
            nvars: 31,
        });
    }
    let total = level_numerator(m, level)?;
    if bound < &m.abs() || bound.is_zero() || bound.is_negative() {
        return Err(Error::BoxTooSmall {
            bound: bound.to_string(),
            degree: m.abs().to_string(),
        });
    }
    let scaled = bound.scale(&BigInt::from(level));
    let b = scaled
        .numer()
        .div_floor(scaled.denom())
        .to_i64()
        .ok_or_else(|| Error::ExponentTooLarge(bound.to_string()))?;

    let work = |k0: i64| -> (Vec<u64>, u64, u64) {
        let mut h = vec![0u64; n + 1];
        let (mut count, mut mismatches) = (0u64, 0u64);
        let mut prefix = vec![k0];
        enumerate(n, total - k0, b, &mut prefix, &mut |ks| {
            let l = MultiDegree::at_level(ks, level).expect("positive level");
            let c = multidegree_complex(&l, field);
            let dims = complex_cohomology_dims(&c).expect("valid complex");
            if dims != predicted_dims(&l) {
                mismatches += 1;
            }
            for (acc, d) in h.iter_mut().zip(&dims) {
                *acc += d;
            }
            count += 1;
        });
        (h, count, mismatches)
    };

    let run = || {
        (-b..=b).into_par_iter().map(work).reduce(
            || (vec![0u64; n + 1], 0, 0),
            |(mut h, c, x), (h2, c2, x2)| {
                for (a, b) in h.iter_mut().zip(h2) {
                    *a += b;
                }
                (h, c + c2, x + x2)
            },
        )
    };
    let (h, multidegrees, mismatches) = match threads() {
        0 => run(),
        t => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::MalformedComplex(e.to_string()))?
            .install(run),
    };
    Ok(CohomologyDims {
        h,
        n,
        m: m.clone(),
        level,
        bound: bound.clone(),
        multidegrees,
        mismatches,
    })
}

/// Extends `prefix` to length `n + 1` with entries in `[-b, b]` summing to `remaining`.
fn enumerate(
    n: usize,
    remaining: i64,
    b: i64,
    prefix: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]),
) {
    let slots = n + 1 - prefix.len();
    if slots == 0 {
        if remaining == 0 {
            visit(prefix);
        }
        return;
    }
    if remaining.abs() > b * slots as i64 {
        return;
    }
    for k in -b..=b {
        prefix.push(k);
        enumerate(n, remaining - k, b, prefix, visit);
        prefix.pop();
    }
}

/// Compositions of `total` into `parts` integers, each `>= min`, first entry descending.
fn compositions(parts: usize, total: i64, min: i64) -> Vec<Vec<i64>> {
    fn rec(parts: usize, total: i64, min: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            if total >= min {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let max_first = total - min * (parts as i64 - 1);
        let mut k = max_first;
        while k >= min {
            prefix.push(k);
            rec(parts - 1, total - k, min, prefix, out);
            prefix.pop();
            k -= 1;
        }
    }
    let mut out = Vec::new();
    rec(parts, total, min, &mut Vec::new(), &mut out);
    out
}

/// Degree-`m` global sections: monomials in `X_0..X_n` with exponents in `(1/D) Z_{>=0}`.
pub fn h0_basis(n: usize, m: &RationalExponent, level: u64) -> Result<Vec<Monomial>> {
    let total = level_numerator(m, level)?;
    if total < 0 {
        return Ok(Vec::new());
    }
    compositions(n + 1, total, 0)
        .iter()
        .map(|ks| Ok(MultiDegree::at_level(ks, level)?.monomial()))
        .collect()
}

/// Top cohomology basis: monomials with every exponent in `(1/D) Z_{<0}`.
pub fn hn_basis(n: usize, m: &RationalExponent, level: u64) -> Result<Vec<Monomial>> {
    let total = level_numerator(m, level)?;
    if total > -(n as i64 + 1) {
        return Ok(Vec::new());
    }
    compositions(n + 1, total, -(total.abs()))
        .into_iter()
        .filter(|ks| ks.iter().all(|&k| k <= -1))
        .map(|ks| Ok(MultiDegree::at_level(&ks, level)?.monomial()))
        .collect()
}

/// Dimensions of cohomology of the exterior product on `P^a × P^b`.
pub fn kunneth_dims(a: &CohomologyDims, b: &CohomologyDims) -> Vec<u64> {
    convolve(&a.h, &b.h)
}

/// `h_i = Σ_j a_j b_{i-j}`.
pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
