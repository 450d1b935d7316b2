//! Text format for rational-exponent polynomials.
//!
//! ```text
//! expr        := ('+'|'-')? term (('+'|'-') term)*
//! term        := factor ('*' factor)*
//! factor      := coefficient | variable ('^' exponent)? | '(' expr ')' ('^' exponent)?
//! exponent    := integer | integer '/' positive | '(' '-'? integer ('/' positive)? ')'
//! coefficient := integer ('/' positive)?
//! variable    := letter (letter | digit | '_')*
//! ```
//!
//! The printer emits terms in descending graded-lex order and the output
//! parses back to the same polynomial.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::charp::rational_power;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{Monomial, QPolynomial, RationalExponent};

/// Parses `text` into a fully expanded polynomial over `field` in the universe `vars`.
pub fn parse<S: AsRef<str>>(text: &str, field: Field, vars: &[S]) -> Result<QPolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::SyntaxError {
            offset: self.pos.min(self.src.len().saturating_sub(1)),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<QPolynomial> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPolynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = self.field.from_bigint(&num);
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.positive()?;
                    let den = self.field.from_bigint(&den);
                    value = value.checked_div(&den).map_err(|_| Error::SyntaxError {
                        offset: den_pos,
                        message: "denominator vanishes in this field".into(),
                    })?;
                } else {
                    self.pos = save;
                }
                self.reject_implicit_product()?;
                Ok(QPolynomial::constant(self.field, self.vars.len(), value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let index = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                let exp = if self.eat(b'^') {
                    self.exponent()?
                } else {
                    RationalExponent::one()
                };
                QPolynomial::var_power(self.field, self.vars.len(), index, exp)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                if self.eat(b'^') {
                    let exp = self.exponent()?;
                    rational_power(&inner, &exp)
                } else {
                    Ok(inner)
                }
            }
            Some(_) => Err(self.error("expected a coefficient, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn reject_implicit_product(&mut self) -> Result<()> {
        let save = self.pos;
        self.skip_ws();
        if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'(') {
            return Err(self.error("implicit multiplication is not allowed; use `*`"));
        }
        self.pos = save;
        Ok(())
    }

    fn exponent(&mut self) -> Result<RationalExponent> {
        self.skip_ws();
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            self.skip_ws();
            let num = self.integer()?;
            let den = if self.eat(b'/') {
                self.skip_ws();
                self.positive()?
            } else {
                BigInt::from(1)
            };
            self.expect(b')')?;
            let num = if neg { -num } else { num };
            return RationalExponent::new(num, den);
        }
        let num = self.integer()?;
        let save = self.pos;
        if self.eat(b'/') {
            self.skip_ws();
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let den = self.positive()?;
                return RationalExponent::new(num, den);
            }
            return Err(self.error("expected a positive denominator"));
        }
        self.pos = save;
        Ok(RationalExponent::integer(num))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn positive(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let v = self.integer()?;
        if v.is_zero() {
            self.pos = start;
            return Err(self.error("denominator must be positive"));
        }
        Ok(v)
    }
}

/// Canonical text of `f`, naming variable `i` as `vars[i]`.
pub fn print<S: AsRef<str>>(f: &QPolynomial, vars: &[S]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mono = print_monomial(m, vars);
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

pub fn print_monomial<S: AsRef<str>>(m: &Monomial, vars: &[S]) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.iter()
        .map(|(i, e)| {
            let name = vars[i].as_ref();
            if e == &RationalExponent::one() {
                name.to_string()
            } else if e.is_integer() && !e.is_negative() {
                format!("{name}^{e}")
            } else {
                format!("{name}^({e})")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// JSON term list: `[{"coeff": "a/b", "exps": {"x": "1/2"}}, ...]` in canonical order.
pub fn to_json_terms<S: AsRef<str>>(f: &QPolynomial, vars: &[S]) -> Value {
    Value::Array(
        f.terms()
            .rev()
            .map(|(m, c)| {
                let exps: Map<String, Value> = m
                    .iter()
                    .map(|(i, e)| (vars[i].as_ref().to_string(), Value::String(e.to_string())))
                    .collect();
                json!({ "coeff": c.to_string(), "exps": exps })
            })
            .collect(),
    )
}

pub fn from_json_terms<S: AsRef<str>>(
    value: &Value,
    field: Field,
    vars: &[S],
) -> Result<QPolynomial> {
    let bad = |msg: &str| Error::SyntaxError {
        offset: 0,
        message: msg.to_string(),
    };
    let items = value
        .as_array()
        .ok_or_else(|| bad("term list must be an array"))?;
    let mut terms: Vec<(Monomial, FieldElement)> = Vec::new();
    for item in items {
        let coeff = item
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing coeff"))?;
        let coeff = field.parse_element(coeff)?;
        let exps = item
            .get("exps")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing exps"))?;
        let mut pairs = Vec::new();
        for (name, e) in exps {
            let index = vars
                .iter()
                .position(|v| v.as_ref() == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let e = e.as_str().ok_or_else(|| bad("exponent must be a string"))?;
            pairs.push((index, RationalExponent::parse(e)?));
        }
        terms.push((Monomial::from_pairs(pairs), coeff));
    }
    QPolynomial::from_terms(field, vars.len(), terms)
}
