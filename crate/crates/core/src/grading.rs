//! The grading by total degree in `Q_{>=0}`, chart maps and degree-one embeddings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::{evaluate, PointWithRoots};
use crate::poly::{Monomial, QPolynomial, RationalExponent};

/// Homogeneous components keyed by exact degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub components: BTreeMap<RationalExponent, QPolynomial>,
}

impl GradedDecomposition {
    pub fn reassemble(&self, template: &QPolynomial) -> QPolynomial {
        self.components.values().fold(
            QPolynomial::zero(template.field(), template.nvars()),
            |acc, c| &acc + c,
        )
    }
}

pub fn homogeneous_components(f: &QPolynomial) -> GradedDecomposition {
    let mut buckets: BTreeMap<RationalExponent, Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        buckets
            .entry(m.degree().clone())
            .or_default()
            .push((m.clone(), c.clone()));
    }
    let components = buckets
        .into_iter()
        .map(|(d, terms)| {
            let part = QPolynomial::from_terms(f.field(), f.nvars(), terms)
                .expect("subset of a valid polynomial");
            (d, part)
        })
        .collect();
    GradedDecomposition { components }
}

/// The common degree of all terms; the zero polynomial counts as degree 0.
pub fn is_homogeneous(f: &QPolynomial) -> Option<RationalExponent> {
    let mut degrees = f.terms().map(|(m, _)| m.degree());
    let Some(first) = degrees.next() else {
        return Some(RationalExponent::zero());
    };
    degrees.all(|d| d == first).then(|| first.clone())
}

/// Membership in the irrelevant ideal: every homogeneous component has positive degree.
pub fn in_irrelevant_ideal(f: &QPolynomial) -> bool {
    f.terms()
        .all(|(m, _)| !m.degree().is_zero() && !m.degree().is_negative())
}

/// Compares `f(mu^L P)` with `(mu^L)^d f(P)`, where the scalar is given by its root `mu`.
pub fn scaling_check(
    f: &QPolynomial,
    lambda_root: &FieldElement,
    point: &PointWithRoots,
) -> Result<bool> {
    let scaled = evaluate(f, &point.scaled(lambda_root))?;
    let base = evaluate(f, point)?;
    let degree = f.total_degree().unwrap_or_else(RationalExponent::zero);
    let factor = point.root_power(lambda_root, &degree)?;
    Ok(scaled == &factor * &base)
}

/// Sets variable `chart` to 1 and drops it from the universe.
pub fn dehomogenize(f: &QPolynomial, chart: usize) -> Result<QPolynomial> {
    if chart >= f.nvars() {
        return Err(Error::VariableOutOfRange {
            index: chart,
            nvars: f.nvars(),
        });
    }
    f.map_terms(f.nvars() - 1, |m, c| {
        let rename = |i: usize| match i.cmp(&chart) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        };
        (m.map(rename, |_, e| e.clone()), c.clone())
    })
}

/// Homogenizes to degree `d` with a new variable inserted at index `new_var`.
pub fn homogenize(f: &QPolynomial, d: &RationalExponent, new_var: usize) -> Result<QPolynomial> {
    if new_var > f.nvars() {
        return Err(Error::VariableOutOfRange {
            index: new_var,
            nvars: f.nvars() + 1,
        });
    }
    if let Some(deg) = f.total_degree() {
        if &deg > d {
            return Err(Error::DegreeTooSmall {
                target: d.to_string(),
                degree: deg.to_string(),
            });
        }
    }
    f.map_terms(f.nvars() + 1, |m, c| {
        let shifted = m.map(
            |i| Some(if i >= new_var { i + 1 } else { i }),
            |_, e| e.clone(),
        );
        let filler = Monomial::var(new_var, d - m.degree());
        (shifted.mul(&filler), c.clone())
    })
}

/// `x^{(k-j)/k} y^{j/k}` for `j = 0..=k`, in a two-variable universe.
pub fn veronese_rational(k: u64) -> Result<Vec<Monomial>> {
    if k == 0 {
        return Err(Error::DivisionByZero);
    }
    (0..=k)
        .map(|j| {
            Ok(Monomial::from_pairs([
                (0, RationalExponent::new(k - j, k)?),
                (1, RationalExponent::new(j, k)?),
            ]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parser::parse;

    fn q(text: &str, vars: &[&str]) -> QPolynomial {
        parse(text, Field::Rational, vars).unwrap()
    }

    fn e(n: i64, d: i64) -> RationalExponent {
        RationalExponent::new(n, d).unwrap()
    }

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn components() {
        let f = q("x + x^(1/2)*y^(1/2) + y^2", &XY);
        let dec = homogeneous_components(&f);
        assert_eq!(dec.components.len(), 2);
        assert_eq!(dec.components[&e(1, 1)], q("x + x^(1/2)*y^(1/2)", &XY));
        assert_eq!(dec.components[&e(2, 1)], q("y^2", &XY));
        assert_eq!(dec.reassemble(&f), f);
        assert!(
            homogeneous_components(&QPolynomial::zero(Field::Rational, 2))
                .components
                .is_empty()
        );
        let h = q("x*y + y^2", &XY);
        assert_eq!(homogeneous_components(&h).components.len(), 1);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(is_homogeneous(&q("x^(1/3)*y^(2/3)", &XY)), Some(e(1, 1)));
        assert_eq!(is_homogeneous(&q("x^2 + x", &XY)), None);
        assert_eq!(is_homogeneous(&q("x^2 + x*y + y^2", &XY)), Some(e(2, 1)));
        assert_eq!(
            is_homogeneous(&QPolynomial::zero(Field::Rational, 2)),
            Some(e(0, 1))
        );
    }

    #[test]
    fn irrelevant_ideal() {
        assert!(in_irrelevant_ideal(&q("x^(1/5) + y", &XY)));
        assert!(!in_irrelevant_ideal(&q("x + 1", &XY)));
        assert!(in_irrelevant_ideal(&QPolynomial::zero(Field::Rational, 2)));
    }

    #[test]
    fn scaling() {
        let qf = Field::Rational;
        let f = q("x^(1/2)*y^(1/2)", &XY);
        let p = PointWithRoots::new(2, vec![qf.one(), qf.one()]).unwrap();
        assert!(scaling_check(&f, &qf.from_i64(2), &p).unwrap());
        let c = q("7", &XY);
        assert!(scaling_check(&c, &qf.from_i64(5), &p).unwrap());
        let sq = q("x^2", &["x"]);
        let p3 = PointWithRoots::plain(vec![qf.from_i64(3)]).unwrap();
        assert!(scaling_check(&sq, &qf.from_i64(2), &p3).unwrap());
        let inhom = q("x^2 + x", &["x"]);
        assert!(!scaling_check(&inhom, &qf.from_i64(2), &p3).unwrap());
        let coarse = PointWithRoots::plain(vec![qf.one(), qf.one()]).unwrap();
        assert!(matches!(
            scaling_check(&f, &qf.from_i64(2), &coarse),
            Err(Error::RootOrderMismatch { .. })
        ));
    }

    #[test]
    fn charts() {
        let x01 = ["x0", "x1"];
        let g = q("x0 + x0^(1/2)*x1^(1/2) + x1", &x01);
        assert_eq!(
            dehomogenize(&g, 1).unwrap(),
            q("x0 + x0^(1/2) + 1", &["x0"])
        );
        assert_eq!(
            dehomogenize(&g, 0).unwrap(),
            q("1 + x1^(1/2) + x1", &["x1"])
        );
        let t = q("x1^(5/2)", &x01);
        assert!(dehomogenize(&t, 1).unwrap().is_one());
        assert_eq!(
            dehomogenize(&q("x0^2 + x1^2", &x01), 0).unwrap(),
            q("1 + x1^2", &["x1"])
        );
    }

    #[test]
    fn homogenization() {
        let x = ["x"];
        let h = homogenize(&q("1 + x^(1/2) + x", &x), &e(1, 1), 1).unwrap();
        assert_eq!(h, q("w + x^(1/2)*w^(1/2) + x", &["x", "w"]));
        assert_eq!(dehomogenize(&h, 1).unwrap(), q("1 + x^(1/2) + x", &x));
        let hom = q("x^2 + x*y", &XY);
        let lifted = homogenize(&hom, &e(2, 1), 2).unwrap();
        assert_eq!(lifted, q("x^2 + x*y", &["x", "y", "w"]));
        assert_eq!(
            homogenize(&q("1 + x^2", &x), &e(2, 1), 1).unwrap(),
            q("w^2 + x^2", &["x", "w"])
        );
        assert!(matches!(
            homogenize(&q("x^3", &x), &e(2, 1), 1),
            Err(Error::DegreeTooSmall { .. })
        ));
        // new variable in front shifts the old ones
        assert_eq!(
            homogenize(&q("x + 1", &x), &e(1, 1), 0).unwrap(),
            q("x + w", &["w", "x"])
        );
    }

    #[test]
    fn veronese() {
        let text = |ms: Vec<Monomial>| {
            ms.iter()
                .map(|m| crate::parser::print_monomial(m, &XY))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            text(veronese_rational(2).unwrap()),
            ["x", "x^(1/2)*y^(1/2)", "y"]
        );
        assert_eq!(text(veronese_rational(1).unwrap()), ["x", "y"]);
        assert_eq!(
            text(veronese_rational(3).unwrap()),
            ["x", "x^(2/3)*y^(1/3)", "x^(1/3)*y^(2/3)", "y"]
        );
        for k in 1..8 {
            for m in veronese_rational(k).unwrap() {
                let p = QPolynomial::from_terms(Field::Rational, 2, [(m, Field::Rational.one())])
                    .unwrap();
                assert_eq!(is_homogeneous(&p), Some(e(1, 1)));
            }
        }
    }
}
