//! Recursive-descent parser for rational expressions in `t` and `x`.
//!
//! Grammar (usual precedence, `^` binds tighter than unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ('-')? int ')'
//! atom   := int | 't' | 'x' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::{Field, ParamRat, PolyT, PolyX, RatX, Q};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<RatX> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatX> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division by zero"));
                }
                acc = acc.div(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatX> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let at = self.pos;
        let k = self.integer()?;
        let k: i64 = i64::try_from(k).map_err(|_| {
            self.pos = at;
            self.err("exponent too large")
        })?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -k } else { k })
    }

    fn power(&mut self) -> Result<RatX> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let k = self.exponent()?;
            if k < 0 && base.is_zero() {
                self.pos = at;
                return Err(self.err("division by zero"));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatX> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatX::from_param(ParamRat::t()))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatX::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatX::from_param(ParamRat::from_q(Q::from_integer(n))))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an element of K(x).
pub fn parse_expr(s: &str) -> Result<RatX> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an element of K (no `x`).
pub fn parse_param(s: &str) -> Result<ParamRat> {
    parse_expr(s)?.as_param().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: format!("expected an expression free of x: {s}"),
    })
}

/// Parses a polynomial in `x` over K.
pub fn parse_poly_x(s: &str) -> Result<PolyX> {
    let r = parse_expr(s)?;
    if !r.is_polynomial() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected a polynomial in x: {s}"),
        });
    }
    Ok(r.num().clone())
}

/// Parses a polynomial in `t` over ℚ.
pub fn parse_poly_t(s: &str) -> Result<PolyT> {
    let c = parse_param(s)?;
    if !c.is_polynomial() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected a polynomial in t: {s}"),
        });
    }
    Ok(c.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a = parse_expr("-x^2+2*x/3").unwrap();
        let b = parse_expr("(2/3)*x - (x*x)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_expr("x^-2").unwrap(), parse_expr("1/x^2").unwrap());
        assert_eq!(parse_expr("x^(-2)").unwrap(), parse_expr("1/(x*x)").unwrap());
    }

    #[test]
    fn errors_have_positions() {
        match parse_expr("x + * 2") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expr("1/(x-x)").is_err());
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("y").is_err());
        assert!(parse_param("x").is_err());
        assert!(parse_poly_x("1/x").is_err());
    }

    #[test]
    fn display_reparses() {
        for s in [
            "(t*x-1)^3*(t*x+1)^2*x",
            "-3*(2*x+1)/(2*(x^3-x))",
            "(x+1)/(t^2-1) + 1/(t*x^2)",
            "x^(-3)*t/(t+2)",
        ] {
            let v = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&v.to_string()).unwrap(), v, "{s} -> {v}");
        }
    }
}
