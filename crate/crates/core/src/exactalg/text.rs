//! Polynomial text format.
//!
//! Output prints descending powers, omits zero terms and writes `*` between a
//! coefficient and the variable: `t^4+4*t^2-t+1`. Rational polynomials with a
//! nontrivial denominator print as `(num)/den`.
//!
//! Input is parsed by recursive descent over the grammar
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | implicit)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?      right-associative
//! atom    := integer | variable | '(' expr ')'
//! ```
//!
//! Exponents must evaluate to nonnegative integer constants and divisors to
//! nonzero constants. A single variable name is allowed per expression.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly::IntPoly;
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};

pub(crate) fn write_int_poly(f: &mut fmt::Formatter<'_>, p: &IntPoly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{var}")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn write_rat_poly(f: &mut fmt::Formatter<'_>, p: &RatPoly, var: &str) -> fmt::Result {
    if p.den().is_one() {
        write_int_poly(f, p.num(), var)
    } else {
        write!(f, "(")?;
        write_int_poly(f, p.num(), var)?;
        write!(f, ")/{}", p.den())
    }
}

/// Canonical text for a rational number: `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A parsed expression together with the variable name it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPoly {
    pub poly: RatPoly,
    pub var: Option<String>,
}

/// Parses a one-variable rational polynomial expression.
pub fn parse_poly(text: &str) -> Result<RatPoly> {
    Ok(parse_poly_with_var(text)?.poly)
}

/// Parses an expression that must have integer coefficients.
pub fn parse_int_poly(text: &str) -> Result<IntPoly> {
    let p = parse_poly(text)?;
    p.to_int().ok_or_else(|| Error::Syntax {
        offset: 0,
        message: "expected integer coefficients".into(),
    })
}

pub fn parse_poly_with_var(text: &str) -> Result<ParsedPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        var: None,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(ParsedPoly {
        poly,
        var: parser.var,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<String>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = constant_value(&d).ok_or(Error::Syntax {
                        offset: at,
                        message: "divisor must be a constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&c.recip());
                }
                // implicit multiplication: `2t`, `3(t+1)`, `(t+1)(t-1)`
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            // right-associative; a leading sign is parsed so that `t^-1` is
            // reported as a bad exponent rather than a syntax error
            let e = self.unary()?;
            let exp = constant_value(&e)
                .filter(|c| c.is_integer() && !c.is_negative())
                .and_then(|c| c.to_integer().to_u32())
                .ok_or(Error::NonIntegerExponent { offset: at })?;
            return Ok(pow_rat(&base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: BigInt = digits.parse().expect("digits");
                Ok(RatPoly::from(IntPoly::constant(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match &self.var {
                    Some(v) if v != name => Err(Error::Syntax {
                        offset: start,
                        message: format!("second variable {name:?} (already using {v:?})"),
                    }),
                    Some(_) => Ok(RatPoly::x()),
                    None => {
                        self.var = Some(name.to_string());
                        Ok(RatPoly::x())
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn constant_value(p: &RatPoly) -> Option<BigRational> {
    match p.degree() {
        None => Some(BigRational::zero()),
        Some(0) => Some(p.coeff(0)),
        _ => None,
    }
}

fn pow_rat(p: &RatPoly, mut e: u32) -> RatPoly {
    let mut base = p.clone();
    let mut acc = RatPoly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quartic() {
        let p = parse_poly("t^4+4*t^2-t+1").unwrap();
        assert_eq!(p, RatPoly::from(IntPoly::from_i64(&[1, -1, 4, 0, 1])));
        assert_eq!(p.to_string(), "t^4+4*t^2-t+1");
    }

    #[test]
    fn parses_rational_substitution() {
        let p = parse_poly_with_var("-(x^2+x+3)/2").unwrap();
        assert_eq!(p.var.as_deref(), Some("x"));
        assert_eq!(p.poly.den(), &BigInt::from(2));
        assert_eq!(p.poly.num(), &IntPoly::from_i64(&[-3, -1, -1]));
        assert_eq!(p.poly.to_string(), "(-t^2-t-3)/2");
    }

    #[test]
    fn rejects_negative_exponent() {
        assert!(matches!(
            parse_poly("t^-1"),
            Err(Error::NonIntegerExponent { offset: 2 })
        ));
        assert!(matches!(
            parse_poly("t^(1/2)"),
            Err(Error::NonIntegerExponent { .. })
        ));
        assert!(matches!(parse_poly("t^t"), Err(Error::NonIntegerExponent { .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse_poly("t+"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(t+1"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_poly("t+x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("t/t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("t/0"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn power_is_right_associative_and_implicit_products_work() {
        assert_eq!(parse_poly("2^3^2").unwrap().coeff(0), BigRational::from_integer(512.into()));
        assert_eq!(
            parse_poly("2t(t+1)").unwrap(),
            RatPoly::from(IntPoly::from_i64(&[0, 2, 2]))
        );
        assert_eq!(parse_poly("-t^2").unwrap(), RatPoly::from(IntPoly::from_i64(&[0, 0, -1])));
    }

    #[test]
    fn prints_edge_cases() {
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::from_i64(&[0, -1, 0, 3]).to_string(), "3*t^3-t");
        assert_eq!(format_rational(&BigRational::new(2.into(), 4.into())), "1/2");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), BigRational::new((-1).into(), 2.into()));
    }
}
