//! Parsing of polynomial expressions, field descriptions and field elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::field::{make_number_field, quadratic_field, rationals, Field, NFElement};
use crate::arith::poly::{QPoly, ZPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn lex(s: &str, var: &str) -> Result<Vec<Tok>> {
    let bad = |m: String| Error::InvalidInput(format!("cannot parse `{s}`: {m}"));
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push(Tok::Num(n.parse().expect("digits")));
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            let w: String = cs[st..i].iter().collect();
            if w != var {
                return Err(bad(format!("unknown symbol `{w}` (variable is `{var}`)")));
            }
            out.push(Tok::Var);
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad(format!("unexpected `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::InvalidInput(format!("cannot parse `{}`: {m}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.degree() != 0 {
                    return Err(self.err("division by a non-constant"));
                }
                acc = acc.scale(&d.coeff(0).recip());
            } else if matches!(self.peek(), Some(Tok::Var) | Some(Tok::Op('('))) {
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| self.err("exponent too large"))?,
                _ => return Err(self.err("exponent must be a non-negative integer")),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(QPoly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(QPoly::x())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end or operator")),
        }
    }
}

/// Parses e.g. `t^3 - 2*t + 1/2` as a polynomial in `var`.
pub fn parse_qpoly(s: &str, var: &str) -> Result<QPoly> {
    let toks = lex(s, var)?;
    if toks.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, src: s };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// A polynomial with integer coefficients.
pub fn parse_zpoly(s: &str, var: &str) -> Result<ZPoly> {
    parse_qpoly(s, var)?
        .to_zpoly_exact()
        .ok_or_else(|| Error::InvalidInput(format!("`{s}` has non-integer coefficients")))
}

/// `Q`, `Q(i)`, `Q(sqrt(d))`, or a monic minimal polynomial in x.
pub fn parse_field(s: &str, degree_cap: usize) -> Result<Field> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" || t == "QQ" {
        return Ok(rationals());
    }
    if t == "Q(i)" {
        return quadratic_field(-1);
    }
    if let Some(inner) = t.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
        let d: i64 = inner.parse().map_err(|_| Error::InvalidInput(format!("bad radicand in `{s}`")))?;
        return quadratic_field(d);
    }
    make_number_field(&parse_zpoly(&t, "x")?, degree_cap, None)
}

/// An element written in the generator `w` (a root of the minimal
/// polynomial); `i` is also accepted when the field is Q(i).
pub fn parse_element(k: &Field, s: &str) -> Result<NFElement> {
    let var = if k.min_poly() == &ZPoly::from_ints(&[1, 0, 1]) && s.contains('i') { "i" } else { "w" };
    let p = parse_qpoly(s, var)?;
    if k.degree() == 1 && p.degree() > 0 {
        return Err(Error::InvalidInput(format!("`{s}` is not rational")));
    }
    Ok(k.element(p.coeffs().to_vec()))
}

/// A rational such as `-3/8`.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    if let Some(q) = crate::bounds::parse_rational(s.trim()) {
        return Ok(q);
    }
    let p = parse_qpoly(s, "_")?;
    if p.degree() > 0 {
        return Err(Error::InvalidInput(format!("`{s}` is not a rational number")));
    }
    Ok(if p.is_zero() { BigRational::zero() } else { p.coeff(0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_zpoly("t^3 - 2*t + 1", "t").unwrap(), ZPoly::from_ints(&[1, -2, 0, 1]));
        assert_eq!(parse_zpoly("(1-t)^2", "t").unwrap(), ZPoly::from_ints(&[1, -2, 1]));
        assert_eq!(parse_zpoly("4x(1-x)", "x").unwrap(), ZPoly::from_ints(&[0, 4, -4]));
        assert_eq!(parse_qpoly("x/2", "x").unwrap().coeff(1), BigRational::new(1.into(), 2.into()));
        assert!(parse_zpoly("x/2", "x").is_err());
        assert!(parse_zpoly("y+1", "x").is_err());
        assert!(parse_zpoly("x^", "x").is_err());
    }

    #[test]
    fn fields_and_elements() {
        let k = parse_field("Q(i)", 8).unwrap();
        let e = parse_element(&k, "1+2i").unwrap();
        assert_eq!(e.norm(), BigRational::from_integer(5.into()));
        let k = parse_field("x^3-2", 8).unwrap();
        assert_eq!(k.degree(), 3);
        let w = parse_element(&k, "w^3").unwrap();
        assert_eq!(w.as_rational(), Some(BigRational::from_integer(2.into())));
        assert_eq!(parse_rat("-3/8").unwrap(), BigRational::new((-3).into(), 8.into()));
    }
}
