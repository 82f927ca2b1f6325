//! Polynomial text format: integer coefficients, variable names, `+ - * ^`
//! and parentheses, plus division by nonzero constants. Coefficients are reduced into the target field.

use num_bigint::BigInt;

use super::{MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = match d.terms().next() {
                        Some((m, c)) if d.len() == 1 && m.is_one() => c.inv(),
                        _ => None,
                    };
                    match inv {
                        Some(inv) => acc = acc.scale(&inv),
                        None => {
                            self.pos = at;
                            return self.err("can only divide by a nonzero constant");
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match text.parse() {
                Ok(e) if e <= 1000 => e,
                _ => {
                    self.pos = start;
                    return self.err("exponent out of range");
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v: BigInt = text.parse().expect("digits");
                Ok(Polynomial::constant(self.field, n, self.field.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_' || self.src[self.pos] == b'\'') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.field, n, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_polynomial(text: &str, field: Field, vars: &[&str]) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        vars,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Same as [`parse_polynomial`] for owned variable names.
pub fn parse_with_names(text: &str, field: Field, vars: &[String]) -> Result<Polynomial> {
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    parse_polynomial(text, field, &refs)
}

/// Prints terms in decreasing graded reverse lexicographic order.
pub fn format_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let order = MonomialOrder::grevlex(p.nvars());
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            let s = abs.to_string();
            factors.push(if s.contains('/') { format!("({s})") } else { s });
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn characteristic_two_examples() {
        let f = Field::Prime(2);
        let v = ["x", "y"];
        let p = parse_polynomial("x^2 - y", f, &v).unwrap();
        assert_eq!(p, parse_polynomial("x^2 + y", f, &v).unwrap());
        assert!(parse_polynomial("0", f, &v).unwrap().is_zero());
        assert!(parse_polynomial("x*y + y*x", f, &v).unwrap().is_zero());
        let q = parse_polynomial("x*y + y*x", Field::Rational, &v).unwrap();
        assert_eq!(q, parse_polynomial("2*x*y", Field::Rational, &v).unwrap());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let f = Field::Rational;
        match parse_polynomial("x + * y", f, &["x", "y"]) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x + z", f, &["x", "y"]) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("(x", f, &["x"]).is_err());
        assert!(parse_polynomial("x^", f, &["x"]).is_err());
    }

    #[test]
    fn printer_output() {
        let f = Field::Rational;
        let names = vec!["x".to_string(), "y".to_string()];
        let p = parse_with_names("3 - x*y + x^2 - 2*y", f, &names).unwrap();
        assert_eq!(format_polynomial(&p, &names), "x^2 - x*y - 2*y + 3");
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec((0u32..4, 0u32..4, -9i64..10, 1i64..4), 0..6), q in prop_oneof![Just(Field::Rational), Just(Field::Prime(3))]) {
            let names = vec!["x".to_string(), "y".to_string()];
            let p = Polynomial::from_terms(q, 2, terms.into_iter().map(|(a, b, c, d)| {
                let c = if q == Field::Rational { &q.from_i64(c) * &q.from_i64(d).inv().unwrap() } else { q.from_i64(c) };
                (super::super::Monomial::from_exponents(vec![a, b]), c)
            }));
            let printed = format_polynomial(&p, &names);
            prop_assert_eq!(parse_with_names(&printed, q, &names).unwrap(), p);
        }
    }
}
