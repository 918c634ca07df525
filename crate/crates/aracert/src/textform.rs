//! Round-trippable text syntax for polynomials: terms descending in the
//! ring's order, explicit `*` and `^`, coefficients as integers or `a/b`.

use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unknown variable at byte {0}")]
    UnknownVariable(usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0} at byte {1}")]
    Expected(&'static str, usize),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("exponent overflow in `{0}`")]
    ExponentOverflow(String),
}

pub fn print<F: Field>(f: &Polynomial<F>) -> String {
    let field = f.ring().field();
    let vars = f.ring().vars();
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in f.terms().iter().enumerate() {
        let cs = field.format(c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono = print_monomial(m, vars);
        match (&mono[..], &mag[..]) {
            ("", _) => out.push_str(&mag),
            (_, "1") => out.push_str(&mono),
            _ => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

fn print_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<Ring<F>>,
    input: &'a str,
    pos: usize,
}

pub fn parse<F: Field>(ring: &Arc<Ring<F>>, input: &str) -> Result<Polynomial<F>, ParseError> {
    let mut p = Parser { ring, input, pos: 0 };
    p.skip_ws();
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.input.len() {
        let c = p.input[p.pos..].chars().next().unwrap();
        return Err(ParseError::UnexpectedChar(c, p.pos));
    }
    Ok(f)
}

impl<'a, F: Field> Parser<'a, F> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            let t = if negate { t.neg() } else { t };
            acc = acc.add(&t).expect("same ring");
            self.skip_ws();
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e: u32 = e.parse().map_err(|_| ParseError::ExponentOverflow(e))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some('(') => {
                self.eat('(');
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Expected("`)`", self.pos));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(_) => self.variable(),
        }
    }

    fn integer(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(ParseError::Expected("integer", self.pos));
        }
        Ok(self.input[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<Polynomial<F>, ParseError> {
        let num = self.integer()?;
        let mut text = num;
        // A `/` directly after digits is a fraction coefficient.
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer()?;
            text.push('/');
            text.push_str(&den);
        }
        let c = self
            .ring
            .field()
            .parse(&text)
            .map_err(|_| ParseError::BadNumber(text.clone()))?;
        Ok(Polynomial::constant(self.ring, c))
    }

    fn variable(&mut self) -> Result<Polynomial<F>, ParseError> {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        // Longest match wins so e.g. `x1` is never read as `x` + junk.
        let mut best: Option<(usize, usize)> = None;
        for (i, v) in self.ring.vars().iter().enumerate() {
            if rest.starts_with(v.as_str()) {
                match best {
                    Some((_, len)) if len >= v.len() => {}
                    _ => best = Some((i, v.len())),
                }
            }
        }
        match best {
            Some((i, len)) => {
                self.pos += len;
                Ok(Polynomial::var(self.ring, i).expect("index in range"))
            }
            None => Err(ParseError::UnknownVariable(self.pos)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::MonomialOrder;

    fn ring() -> Arc<Ring<Rationals>> {
        Ring::new(
            Rationals,
            vec!["x0".into(), "x1".into(), "x2".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let r = ring();
        for text in [
            "x0^3 + x1^3 + x2^3",
            "-x1^2 + x0*x2",
            "-2/3*x0*x1 + x2 - 5",
            "0",
            "1",
            "-x0",
        ] {
            let f = parse(&r, text).unwrap();
            assert_eq!(print(&f), text);
            assert_eq!(parse(&r, &print(&f)).unwrap(), f);
        }
    }

    #[test]
    fn parse_parenthesized() {
        let r = ring();
        let f = parse(&r, "(x0 + x1)*(x0 - x1)").unwrap();
        assert_eq!(print(&f), "x0^2 - x1^2");
    }

    #[test]
    fn parse_prime_field_coefficients() {
        let f5 = PrimeField::new(5).unwrap();
        let r = Ring::new(f5, vec!["x0".into()], MonomialOrder::GrevLex).unwrap();
        let f = parse(&r, "7*x0 - 1").unwrap();
        assert_eq!(print(&f), "2*x0 + 4");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(parse(&r, "x0 + w"), Err(ParseError::UnknownVariable(_))));
        assert!(matches!(parse(&r, "x0 +"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(parse(&r, "(x0"), Err(ParseError::Expected(_, _))));
    }

    #[test]
    fn two_digit_index_variables() {
        let r = Ring::new(
            Rationals,
            vec!["z_{10,3}".into(), "z_{1,0}".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let f = parse(&r, "z_{10,3}^2 - z_{1,0}").unwrap();
        assert_eq!(print(&f), "z_{10,3}^2 - z_{1,0}");
    }
}
