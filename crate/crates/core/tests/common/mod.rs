#![allow(dead_code)]

use qdeg::{Field, FieldElement, Monomial, QPolynomial, RationalExponent};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Field {
    Field::Rational
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn e(n: i64, d: i64) -> RationalExponent {
    RationalExponent::new(n, d).unwrap()
}

pub fn parse(text: &str, field: Field, vars: &[&str]) -> QPolynomial {
    qdeg::parser::parse(text, field, vars).unwrap_or_else(|err| panic!("{text}: {err}"))
}

/// Nonzero coefficient; small fractions over `Q`.
pub fn coeff(rng: &mut impl Rng, field: Field) -> FieldElement {
    loop {
        let c = match field {
            Field::Rational => {
                let num = rng.gen_range(-9i64..=9);
                let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
                qdeg::field::rat_reduce(num, den).unwrap()
            }
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exponent `k/d` with `d` drawn from `dens` and `0 <= k/d <= max`.
pub fn exponent(rng: &mut impl Rng, dens: &[i64], max: i64) -> RationalExponent {
    let d = *dens.choose(rng).unwrap();
    e(rng.gen_range(0..=max * d), d)
}

pub struct Shape<'a> {
    pub nvars: usize,
    pub max_terms: usize,
    pub dens: &'a [i64],
    pub max_exp: i64,
}

pub fn poly(rng: &mut impl Rng, field: Field, shape: &Shape) -> QPolynomial {
    let terms = rng.gen_range(1..=shape.max_terms);
    let mut items: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut pairs: Vec<(usize, RationalExponent)> = Vec::new();
        for i in 0..shape.nvars {
            if rng.gen_bool(0.6) {
                pairs.push((i, exponent(rng, shape.dens, shape.max_exp)));
            }
        }
        items.push((Monomial::from_pairs(pairs), coeff(rng, field)));
    }
    QPolynomial::from_terms(field, shape.nvars, items).unwrap()
}

pub fn nonzero_poly(rng: &mut impl Rng, field: Field, shape: &Shape) -> QPolynomial {
    loop {
        let f = poly(rng, field, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn nonconstant_poly(rng: &mut impl Rng, field: Field, shape: &Shape) -> QPolynomial {
    loop {
        let f = poly(rng, field, shape);
        if !f.is_constant() {
            return f;
        }
    }
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
