//! Finitely generated ideals: Bézout GCDs, Gröbner bases, ideal and radical
//! membership.
//!
//! Every question is answered at one finite level: the generators (and the
//! candidate element) are flattened at their joint root orders, and the
//! integer-degree ideal is handled by Buchberger's algorithm. Passing to a
//! finer level is a free, hence faithfully flat, extension, so the answer does
//! not depend on the level chosen.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::flatten::{exponent_lcm, flatten_at, integer_exponents, unflatten, FlattenMap};
use crate::poly::{Monomial, QPolynomial, RationalExponent};

/// Generators of an ideal; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    field: Field,
    nvars: usize,
    generators: Vec<QPolynomial>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<QPolynomial>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyInput)?;
        let (field, nvars) = (first.field(), first.nvars());
        if generators
            .iter()
            .any(|g| g.field() != field || g.nvars() != nvars)
        {
            return Err(Error::FieldMismatch);
        }
        if generators.iter().any(QPolynomial::has_negative_exponents) {
            return Err(Error::LaurentNotFlattenable);
        }
        Ok(IdealPresentation {
            field,
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[QPolynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Minimal joint level of the generators and `extra`.
    fn joint_level(&self, extra: Option<&QPolynomial>) -> Result<FlattenMap> {
        let mut all: Vec<QPolynomial> = self.generators.clone();
        all.extend(extra.cloned());
        if all.is_empty() {
            return Ok(FlattenMap::identity(self.nvars));
        }
        exponent_lcm(&all)
    }

    fn check_element(&self, f: &QPolynomial) -> Result<()> {
        if f.field() != self.field || f.nvars() != self.nvars {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, variables ordered by index.
    DegRevLex,
}

/// Reduced Gröbner basis of a flattened ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub level: FlattenMap,
    /// Monic elements with integer exponents, ascending by leading monomial.
    pub basis: Vec<QPolynomial>,
    pub order: MonomialOrder,
    engine: Vec<SparsePoly>,
    field: Field,
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    /// Normal form of an already-flattened polynomial.
    pub fn normal_form(&self, flat: &QPolynomial) -> Result<QPolynomial> {
        let h = SparsePoly::from_poly(flat)?;
        let r = reduce(&h, &self.engine, self.field);
        Ok(r.to_poly(self.field, flat.nvars()).monic())
    }

    /// Whether an already-flattened polynomial lies in the ideal.
    pub fn contains_flat(&self, flat: &QPolynomial) -> Result<bool> {
        let h = SparsePoly::from_poly(flat)?;
        Ok(reduce(&h, &self.engine, self.field).is_zero())
    }

    /// Basis expressed back in rational exponents.
    pub fn unflattened(&self) -> Result<Vec<QPolynomial>> {
        self.basis
            .iter()
            .map(|g| unflatten(&self.level, g))
            .collect()
    }
}

/// Reduced Gröbner basis at the minimal level of the generators.
pub fn groebner(gens: &IdealPresentation) -> Result<GroebnerBasis> {
    let level = gens.joint_level(None)?;
    groebner_at(gens, &level)
}

/// Reduced Gröbner basis at a prescribed level.
pub fn groebner_at(gens: &IdealPresentation, level: &FlattenMap) -> Result<GroebnerBasis> {
    let flat = flatten_at(level, gens.generators())?;
    groebner_flat(&flat, gens.field(), gens.nvars(), level.clone())
}

fn groebner_flat(
    flat: &[QPolynomial],
    field: Field,
    nvars: usize,
    level: FlattenMap,
) -> Result<GroebnerBasis> {
    let polys = flat
        .iter()
        .map(SparsePoly::from_poly)
        .collect::<Result<Vec<_>>>()?;
    let engine = buchberger(polys, field);
    let basis = engine.iter().map(|g| g.to_poly(field, nvars)).collect();
    Ok(GroebnerBasis {
        level,
        basis,
        order: MonomialOrder::DegRevLex,
        engine,
        field,
    })
}

/// Whether `f` lies in the ideal generated by `gens`.
pub fn ideal_member(f: &QPolynomial, gens: &IdealPresentation) -> Result<bool> {
    gens.check_element(f)?;
    let level = gens.joint_level(Some(f))?;
    ideal_member_at(f, gens, &level)
}

/// Membership decided at a prescribed level.
pub fn ideal_member_at(
    f: &QPolynomial,
    gens: &IdealPresentation,
    level: &FlattenMap,
) -> Result<bool> {
    gens.check_element(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    let gb = groebner_at(gens, level)?;
    let flat = flatten_at(level, std::slice::from_ref(f))?;
    gb.contains_flat(&flat[0])
}

/// Whether some power of `f` lies in the ideal, via `1 ∈ (gens, f t - 1)`.
pub fn radical_member(f: &QPolynomial, gens: &IdealPresentation) -> Result<bool> {
    gens.check_element(f)?;
    let level = gens.joint_level(Some(f))?;
    radical_member_at(f, gens, &level)
}

pub fn radical_member_at(
    f: &QPolynomial,
    gens: &IdealPresentation,
    level: &FlattenMap,
) -> Result<bool> {
    gens.check_element(f)?;
    let n = gens.nvars();
    let mut flat = flatten_at(level, gens.generators())?
        .into_iter()
        .map(|g| g.with_nvars(n + 1))
        .collect::<Result<Vec<_>>>()?;
    let ff = flatten_at(level, std::slice::from_ref(f))?[0].with_nvars(n + 1)?;
    let t = QPolynomial::var(gens.field(), n + 1, n)?;
    let one = QPolynomial::one(gens.field(), n + 1);
    flat.push(ff.checked_mul(&t)?.checked_sub(&one)?);
    let gb = groebner_flat(&flat, gens.field(), n + 1, level.extended())?;
    Ok(gb.is_unit())
}

/// False exactly when the ideal contains 1.
pub fn is_proper(gens: &IdealPresentation) -> Result<bool> {
    Ok(!groebner(gens)?.is_unit())
}

// ---------------------------------------------------------------------------
// Bézout
// ---------------------------------------------------------------------------

/// `gcd = u f + v g` with `gcd` monic (or zero when both inputs are zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bezout {
    pub gcd: QPolynomial,
    pub u: QPolynomial,
    pub v: QPolynomial,
}

fn univariate_var(fs: &[&QPolynomial]) -> Result<usize> {
    let mut vars = std::collections::BTreeSet::new();
    for f in fs {
        vars.extend(f.variables());
    }
    match vars.len() {
        0 => Ok(0),
        1 => Ok(*vars.iter().next().expect("one")),
        _ => Err(Error::NotUnivariate),
    }
}

type Dense = Vec<FieldElement>;

fn to_dense(f: &QPolynomial, var: usize) -> Result<Dense> {
    let deg = match f.degree_in(var) {
        Some(d) => integer_exponents(&Monomial::var(0, d), 1)?[0],
        None => 0,
    };
    let mut out = vec![f.field().zero(); deg as usize + 1];
    for (m, c) in f.terms() {
        let e = integer_exponents(&Monomial::var(0, m.exponent(var)), 1)?[0];
        out[e as usize] = c.clone();
    }
    trim(&mut out);
    Ok(out)
}

fn from_dense(d: &Dense, field: Field, nvars: usize, var: usize) -> QPolynomial {
    let terms = d.iter().enumerate().map(|(k, c)| {
        (
            Monomial::var(var, RationalExponent::integer(k as u64)),
            c.clone(),
        )
    });
    QPolynomial::from_terms(field, nvars, terms).expect("index in range")
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(FieldElement::is_zero) {
        d.pop();
    }
}

fn dense_sub_mul(a: &Dense, b: &Dense, q: &Dense, field: Field) -> Dense {
    // a - b*q
    let mut out = a.clone();
    for (i, bi) in b.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        for (j, qj) in q.iter().enumerate() {
            if out.len() <= i + j {
                out.resize(i + j + 1, field.zero());
            }
            out[i + j] = &out[i + j] - &(bi * qj);
        }
    }
    trim(&mut out);
    out
}

fn dense_divmod(a: &Dense, b: &Dense, field: Field) -> (Dense, Dense) {
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero");
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bi);
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Extended Euclid for polynomials in one variable with rational exponents.
pub fn gcd_univariate(f: &QPolynomial, g: &QPolynomial) -> Result<Bezout> {
    if f.field() != g.field() || f.nvars() != g.nvars() {
        return Err(Error::FieldMismatch);
    }
    if f.has_negative_exponents() || g.has_negative_exponents() {
        return Err(Error::LaurentNotFlattenable);
    }
    let var = univariate_var(&[f, g])?;
    let (field, nvars) = (f.field(), f.nvars());
    let level = exponent_lcm(&[f.clone(), g.clone()])?;
    let flat = flatten_at(&level, &[f.clone(), g.clone()])?;
    let (mut r0, mut r1) = (to_dense(&flat[0], var)?, to_dense(&flat[1], var)?);
    let (mut s0, mut s1): (Dense, Dense) = (vec![field.one()], Vec::new());
    let (mut t0, mut t1): (Dense, Dense) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = dense_divmod(&r0, &r1, field);
        let s = dense_sub_mul(&s0, &s1, &q, field);
        let t = dense_sub_mul(&t0, &t1, &q, field);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(lead) = r0.last() {
        let inv = lead.inv()?;
        for d in [&mut r0, &mut s0, &mut t0] {
            for c in d.iter_mut() {
                *c = &*c * &inv;
            }
        }
    } else {
        s0.clear();
        t0.clear();
    }
    let back = |d: &Dense| unflatten(&level, &from_dense(d, field, nvars, var));
    Ok(Bezout {
        gcd: back(&r0)?,
        u: back(&s0)?,
        v: back(&t0)?,
    })
}

/// Whether `d` divides `f` in the one-variable ring (exact division at the joint level).
pub fn univariate_divides(d: &QPolynomial, f: &QPolynomial) -> Result<bool> {
    if d.field() != f.field() || d.nvars() != f.nvars() {
        return Err(Error::FieldMismatch);
    }
    let var = univariate_var(&[d, f])?;
    if d.is_zero() {
        return Ok(f.is_zero());
    }
    let level = exponent_lcm(&[d.clone(), f.clone()])?;
    let flat = flatten_at(&level, &[d.clone(), f.clone()])?;
    let (_, r) = dense_divmod(
        &to_dense(&flat[1], var)?,
        &to_dense(&flat[0], var)?,
        d.field(),
    );
    Ok(r.is_empty())
}

// ---------------------------------------------------------------------------
// Buchberger engine on integer exponent vectors
// ---------------------------------------------------------------------------

type Exps = Vec<u32>;

fn degrevlex(a: &Exps, b: &Exps) -> Ordering {
    let (da, db): (u64, u64) = (
        a.iter().map(|&x| x as u64).sum(),
        b.iter().map(|&x| x as u64).sum(),
    );
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exps(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms in strictly descending degrevlex order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SparsePoly {
    terms: Vec<(Exps, FieldElement)>,
}

impl SparsePoly {
    fn from_poly(f: &QPolynomial) -> Result<Self> {
        let mut terms = f
            .terms()
            .map(|(m, c)| Ok((integer_exponents(m, f.nvars())?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        Ok(SparsePoly { terms })
    }

    fn to_poly(&self, field: Field, nvars: usize) -> QPolynomial {
        let terms = self.terms.iter().map(|(e, c)| {
            (
                Monomial::from_pairs(
                    e.iter()
                        .enumerate()
                        .map(|(i, &x)| (i, RationalExponent::integer(x))),
                ),
                c.clone(),
            )
        });
        QPolynomial::from_terms(field, nvars, terms).expect("valid")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    fn lc(&self) -> &FieldElement {
        &self.terms[0].1
    }

    fn scale(&self, c: &FieldElement) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// `a * self - b * mono * other`.
    fn combine(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        mono: &Exps,
        other: &SparsePoly,
    ) -> SparsePoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let shifted = other
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(mono).map(|(x, y)| x + y).collect::<Exps>(), c));
        let mut left = self.terms.iter().peekable();
        let mut right = shifted.peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(l), Some(r)) => degrevlex(&l.0, &r.0),
            };
            match ord {
                Ordering::Greater => {
                    let (e, c) = left.next().expect("peeked");
                    out.push((e.clone(), a * c));
                }
                Ordering::Less => {
                    let (e, c) = right.next().expect("peeked");
                    out.push((e, -&(b * c)));
                }
                Ordering::Equal => {
                    let (e, c) = left.next().expect("peeked");
                    let (_, d) = right.next().expect("peeked");
                    let v = &(a * c) - &(b * d);
                    if !v.is_zero() {
                        out.push((e.clone(), v));
                    }
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparsePoly { terms: out }
    }

    /// Monic over `F_p`; primitive integer with positive leading coefficient over `Q`.
    fn normalize(&self, field: Field) -> SparsePoly {
        if self.is_zero() {
            return self.clone();
        }
        match field {
            Field::Prime(_) => self.scale(&self.lc().inv().expect("nonzero")),
            Field::Rational => {
                let rats: Vec<_> = self
                    .terms
                    .iter()
                    .map(|(_, c)| c.as_rational().expect("rational"))
                    .collect();
                let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                let ints: Vec<BigInt> = rats
                    .iter()
                    .map(|r| r.numer() * (&den / r.denom()))
                    .collect();
                let mut content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
                if ints[0].is_negative() {
                    content = -content;
                }
                SparsePoly {
                    terms: self
                        .terms
                        .iter()
                        .zip(ints)
                        .map(|((e, _), v)| (e.clone(), field.from_bigint(&(v / &content))))
                        .collect(),
                }
            }
        }
    }
}

/// Multipliers `(a, b)` such that `a * lc_h - b * lc_g = 0`, fraction-free over `Q`.
fn elimination_factors(
    lc_h: &FieldElement,
    lc_g: &FieldElement,
    field: Field,
) -> (FieldElement, FieldElement) {
    match field {
        Field::Prime(_) => (field.one(), lc_h * &lc_g.inv().expect("nonzero")),
        Field::Rational => {
            let (h, g) = (
                lc_h.as_rational().expect("q"),
                lc_g.as_rational().expect("q"),
            );
            if h.is_integer() && g.is_integer() {
                let k = h.numer().gcd(g.numer());
                (
                    field.from_bigint(&(g.numer() / &k)),
                    field.from_bigint(&(h.numer() / &k)),
                )
            } else {
                (field.one(), lc_h * &lc_g.inv().expect("nonzero"))
            }
        }
    }
}

/// Full normal form of `h` modulo `basis`.
fn reduce(h: &SparsePoly, basis: &[SparsePoly], field: Field) -> SparsePoly {
    let mut h = h.clone();
    let mut rem: Vec<(Exps, FieldElement)> = Vec::new();
    let mut steps = 0usize;
    while !h.is_zero() {
        let lm = h.lm().clone();
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let (a, b) = elimination_factors(h.lc(), g.lc(), field);
                let mono = quotient(&lm, g.lm());
                h = h.combine(&a, &b, &mono, g);
                if !a.is_one() {
                    for (_, c) in rem.iter_mut() {
                        *c = &*c * &a;
                    }
                }
                steps += 1;
                if field == Field::Rational && steps.is_multiple_of(8) {
                    let (nh, nr) = joint_primitive(h, rem, field);
                    h = nh;
                    rem = nr;
                }
            }
            None => {
                let t = h.terms.remove(0);
                rem.push(t);
            }
        }
    }
    SparsePoly { terms: rem }.normalize(field)
}

/// Divides the remainder and the running dividend by their common content.
fn joint_primitive(
    h: SparsePoly,
    rem: Vec<(Exps, FieldElement)>,
    field: Field,
) -> (SparsePoly, Vec<(Exps, FieldElement)>) {
    let all = h
        .terms
        .iter()
        .chain(rem.iter())
        .map(|(_, c)| c.as_rational().expect("q"));
    let mut content = BigInt::zero();
    for r in all {
        if !r.is_integer() {
            return (h, rem);
        }
        content = content.gcd(r.numer());
    }
    if content.is_zero() || content.is_one() {
        return (h, rem);
    }
    let inv = field.from_bigint(&content).inv().expect("nonzero");
    let scale = |v: Vec<(Exps, FieldElement)>| {
        v.into_iter()
            .map(|(e, c)| (e, &c * &inv))
            .collect::<Vec<_>>()
    };
    (
        SparsePoly {
            terms: scale(h.terms),
        },
        scale(rem),
    )
}

fn s_polynomial(f: &SparsePoly, g: &SparsePoly, field: Field) -> SparsePoly {
    let l = lcm_exps(f.lm(), g.lm());
    let left_mono = quotient(&l, f.lm());
    let right_mono = quotient(&l, g.lm());
    let lifted = SparsePoly {
        terms: f
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&left_mono).map(|(x, y)| x + y).collect(),
                    c.clone(),
                )
            })
            .collect(),
    };
    let (a, b) = elimination_factors(f.lc(), g.lc(), field);
    lifted.combine(&a, &b, &right_mono, g)
}

fn buchberger(input: Vec<SparsePoly>, field: Field) -> Vec<SparsePoly> {
    let mut basis: Vec<SparsePoly> = Vec::new();
    for p in input {
        if p.is_zero() {
            continue;
        }
        let r = reduce(&p, &basis, field);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    if basis.iter().any(|g| g.lm().iter().all(|&x| x == 0)) {
        return vec![unit(field, basis[0].lm().len())];
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();

    while !pairs.is_empty() {
        // normal selection: smallest lcm of leading monomials
        let pick = (0..pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = pairs[x];
                let (c, d) = pairs[y];
                degrevlex(
                    &lcm_exps(basis[a].lm(), basis[b].lm()),
                    &lcm_exps(basis[c].lm(), basis[d].lm()),
                )
                .then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pick);
        let (li, lj) = (basis[i].lm(), basis[j].lm());
        if coprime(li, lj) {
            continue;
        }
        let l = lcm_exps(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], field);
        let h = reduce(&s, &basis, field);
        if h.is_zero() {
            continue;
        }
        if h.lm().iter().all(|&x| x == 0) {
            return vec![unit(field, h.lm().len())];
        }
        let k = basis.len();
        pairs.extend((0..k).map(|i| (i, k)));
        basis.push(h);
    }
    inter_reduce(basis, field)
}

fn unit(field: Field, nvars: usize) -> SparsePoly {
    SparsePoly {
        terms: vec![(vec![0; nvars], field.one())],
    }
}

/// Minimal, fully reduced, monic, sorted ascending by leading monomial.
fn inter_reduce(mut basis: Vec<SparsePoly>, field: Field) -> Vec<SparsePoly> {
    basis.sort_by(|a, b| degrevlex(a.lm(), b.lm()));
    let mut minimal: Vec<SparsePoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| divides(m.lm(), g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SparsePoly> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(&minimal[i], &others, field);
        out.push(r.scale(&r.lc().inv().expect("nonzero")));
    }
    out.sort_by(|a, b| degrevlex(a.lm(), b.lm()));
    out
}
