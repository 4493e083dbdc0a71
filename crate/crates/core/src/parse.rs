//! Polynomial expressions in the single variable `x`.
//!
//! ```text
//! Expr     := Sign? Term (('+' | '-') Term)*
//! Term     := Factor ('*' Factor)*
//! Factor   := Base ('^' Nat)?
//! Base     := Rational | 'x' | '(' Expr ')'
//! Rational := Int ('/' Int)?
//! ```
//!
//! Whitespace is ignored, multiplication must be written out, and exponents are
//! capped at [`MAX_EXPONENT`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::RationalPoly;

pub const MAX_EXPONENT: u32 = 64;

/// Syntax tree of a polynomial expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Const(BigRational),
    X,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn eval(&self) -> RationalPoly {
        match self {
            PolyExpr::Const(c) => RationalPoly::constant(c.clone()),
            PolyExpr::X => RationalPoly::x(),
            PolyExpr::Neg(a) => -&a.eval(),
            PolyExpr::Add(a, b) => &a.eval() + &b.eval(),
            PolyExpr::Sub(a, b) => &a.eval() - &b.eval(),
            PolyExpr::Mul(a, b) => &a.eval() * &b.eval(),
            PolyExpr::Pow(a, k) => a.eval().pow(*k),
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Self { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.src.chars().count() + 1)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = if self.eat('-') {
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.column();
        let digits = self.digits();
        if digits.is_empty() {
            return self.fail("exponent must be a nonnegative integer");
        }
        match digits.parse::<u32>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(PolyExpr::Pow(Box::new(base), k)),
            _ => Err(Error::Syntax {
                column: col,
                message: format!("exponent {digits} exceeds {MAX_EXPONENT}"),
            }),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(PolyExpr::X)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                if !self.eat('/') {
                    return Ok(PolyExpr::Const(BigRational::from_integer(num)));
                }
                let d = self.digits();
                if d.is_empty() {
                    return self.fail("expected denominator");
                }
                let den: BigInt = d.parse().expect("digits");
                if den.is_zero() {
                    return self.fail("zero denominator");
                }
                Ok(PolyExpr::Const(BigRational::new(num, den)))
            }
            Some(c) => self.fail(format!("unexpected '{c}'")),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses to a syntax tree, rejecting trailing input.
pub fn parse_expr(input: &str) -> Result<PolyExpr> {
    let mut p = Parser::new(input);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail(format!("unexpected '{}'", p.peek().unwrap()));
    }
    Ok(e)
}

pub fn parse_poly(input: &str) -> Result<RationalPoly> {
    parse_expr(input).map(|e| e.eval())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(input: &str) -> usize {
        match parse_poly(input) {
            Err(Error::Syntax { column, .. }) => column,
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn simple_polynomials() {
        assert_eq!(parse_poly("x^11 - x^2 - x").unwrap(), {
            let mut c = vec![0i64; 12];
            c[11] = 1;
            c[2] = -1;
            c[1] = -1;
            RationalPoly::from_i64s(&c)
        });
        assert_eq!(
            parse_poly("(x - 1)*(x^5 - x - 1)").unwrap(),
            RationalPoly::from_i64s(&[1, 0, -1, 0, 0, -1, 1])
        );
        assert_eq!(parse_poly(" 3/6 * x ").unwrap().to_string(), "1/2*x");
        assert_eq!(parse_poly("-x^2+1").unwrap(), RationalPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(parse_poly("x^0").unwrap(), RationalPoly::one());
    }

    #[test]
    fn negative_exponent_is_rejected_at_the_argument() {
        assert_eq!(column("x^-1"), 3);
    }

    #[test]
    fn other_errors() {
        assert_eq!(column("x^65"), 3);
        assert_eq!(column("2x"), 2);
        assert_eq!(column("(x + 1"), 7);
        assert_eq!(column("x + "), 5);
        assert_eq!(column("1/0"), 4);
        assert_eq!(column("y"), 1);
    }
}
