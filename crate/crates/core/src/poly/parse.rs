//! Text grammar for germs:
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coef | [coef ['*']] factor ('*'? factor)*
//! factor := var ['^' uint]
//! coef   := int | int '/' uint
//! ```
//!
//! Whitespace is ignored between tokens. Variable names are ASCII
//! identifiers and must appear in the declared variable list.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial};
use crate::error::ParseError;

pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    p.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        let mut out = Polynomial::zero(n);
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = BigRational::one(),
                Some(b'-') => sign = -BigRational::one(),
                Some(c) => return self.syntax(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational), ParseError> {
        let n = self.vars.len();
        let mut exps = vec![0u32; n];
        let mut coef = BigRational::one();
        let mut factors = 0;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = self.coef()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if !self.at_ident() {
                        return self.syntax("expected a variable after `*`");
                    }
                }
            }
            Some(_) if self.at_ident() => {}
            Some(c) => return self.syntax(format!("expected a term, found `{}`", c as char)),
            None => return self.syntax("expected a term, found end of input"),
        }
        loop {
            if self.at_ident() {
                let (var, e) = self.factor()?;
                exps[var] += e;
                factors += 1;
            } else if factors > 0 && self.peek() == Some(b'*') {
                self.pos += 1;
                if !self.at_ident() {
                    return self.syntax("expected a variable after `*`");
                }
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coef))
    }

    fn at_ident(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_')
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let var = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ParseError::UnknownVariable {
                pos: start,
                name: name.to_string(),
            })?;
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(ParseError::NegativeExponent { pos: self.pos }),
                Some(c) if c.is_ascii_digit() => {
                    let digits = self.digits();
                    e = digits.parse::<u32>().or_else(|_| self.syntax("exponent too large"))?;
                }
                _ => return self.syntax("expected an exponent after `^`"),
            }
        }
        Ok((var, e))
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn coef(&mut self) -> Result<BigRational, ParseError> {
        let num: BigInt = self.digits().parse().expect("digits");
        if self.peek() != Some(b'/') {
            return Ok(BigRational::from_integer(num));
        }
        self.pos += 1;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return self.syntax("expected a denominator after `/`"),
        }
        let at = self.pos;
        let den: BigInt = self.digits().parse().expect("digits");
        if den.is_zero() {
            return Err(ParseError::Syntax {
                pos: at,
                message: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reads_terms() {
        let f = parse_polynomial("x^3 + y^3", &names(&["x", "y"])).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Monomial::new(vec![3, 0])), q(1, 1));
        assert_eq!(f.coeff(&Monomial::new(vec![0, 3])), q(1, 1));

        let g = parse_polynomial("2x^2y + 3/2 y", &names(&["x", "y"])).unwrap();
        assert_eq!(g.coeff(&Monomial::new(vec![2, 1])), q(2, 1));
        assert_eq!(g.coeff(&Monomial::new(vec![0, 1])), q(3, 2));
        assert_eq!(g.num_terms(), 2);

        let h = parse_polynomial("- 2 * x * x ^ 2 + x y", &names(&["x", "y"])).unwrap();
        assert_eq!(h.coeff(&Monomial::new(vec![3, 0])), q(-2, 1));
        assert_eq!(h.coeff(&Monomial::new(vec![1, 1])), q(1, 1));
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse_polynomial("x - x", &names(&["x"])).unwrap().is_zero());
        assert!(parse_polynomial("0", &names(&["x"])).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let v = names(&["x", "y"]);
        assert_eq!(
            parse_polynomial("x + w", &v),
            Err(ParseError::UnknownVariable {
                pos: 4,
                name: "w".into()
            })
        );
        assert_eq!(
            parse_polynomial("x^-2", &v),
            Err(ParseError::NegativeExponent { pos: 2 })
        );
        assert!(matches!(
            parse_polynomial("x + + y", &v),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("x 2", &v),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/0 x", &v),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_polynomial("", &v), Err(ParseError::Syntax { .. })));
        // xy is one identifier, not x*y.
        assert!(matches!(
            parse_polynomial("xy", &v),
            Err(ParseError::UnknownVariable { .. })
        ));
    }
}
