//! Text formats: scalars, rational maps, points and field names.
//!
//! Grammar (whitespace is ignored, juxtaposition multiplies):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | 'zeta' integer | 'z' | 'x' | 'i' | '(' expr ')'
//! ```
//!
//! `i` is ζ₄.  Every root of unity must lie in the configured field.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, DEFAULT_CONDUCTOR_CAP};
use crate::poly::Polynomial;
use crate::ratmap::{ProjPoint, RatFunc, RationalMap};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Zeta(u32),
    Var,
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let s = j;
        while j < chars.len() && chars[j].1.is_ascii_digit() {
            j += 1;
        }
        (s, j)
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let (s, e) = digits(i);
            let lit: String = chars[s..e].iter().map(|c| c.1).collect();
            out.push((pos, Token::Int(lit.parse().expect("digits"))));
            i = e;
        } else if text[pos..].starts_with("zeta") {
            let (s, e) = digits(i + 4);
            if s == e {
                return Err(err(pos, "zeta needs an order, as in zeta3"));
            }
            let lit: String = chars[s..e].iter().map(|c| c.1).collect();
            let k: u32 = lit.parse().map_err(|_| err(pos, "root-of-unity order too large"))?;
            if k == 0 {
                return Err(err(pos, "zeta0 is undefined"));
            }
            out.push((pos, Token::Zeta(k)));
            i = e;
        } else if c == 'z' || c == 'x' {
            out.push((pos, Token::Var));
            i += 1;
        } else if c == 'i' {
            out.push((pos, Token::Zeta(4)));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((pos, Token::Op(c)));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    field: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
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

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Int(_) | Token::Zeta(_) | Token::Var | Token::Op('(')))
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') || self.starts_atom() {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let pos = self.pos();
                acc = acc.div(&self.unary()?).map_err(|_| err(pos, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(RatFunc::constant(FieldElement::zero()).sub(&v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let pos = self.pos();
        let e = match self.peek() {
            Some(Token::Int(n)) => u32::try_from(n).map_err(|_| err(pos, "exponent too large"))?,
            _ => return Err(err(pos, "expected an integer exponent")),
        };
        self.at += 1;
        let mut acc = RatFunc::constant(FieldElement::one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        if negative {
            acc = RatFunc::constant(FieldElement::one())
                .div(&acc)
                .map_err(|_| err(pos, "zero to a negative power"))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| err(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Token::Int(n) => Ok(RatFunc::constant(FieldElement::from(n))),
            Token::Zeta(k) => {
                if !self.field.is_multiple_of(k) {
                    return Err(err(pos, format!("zeta{k} is not in the field Q(zeta{})", self.field)));
                }
                let z = FieldElement::zeta(k).map_err(|e| err(pos, e.to_string()))?;
                Ok(RatFunc::constant(z))
            }
            Token::Var => Ok(RatFunc::from_poly(Polynomial::x())),
            Token::Op('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(v)
            }
            Token::Op(c) => Err(err(pos, format!("unexpected {c:?}"))),
        }
    }
}

fn parse_ratfunc(text: &str, field: u32) -> Result<RatFunc> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        at: 0,
        end: text.len(),
        field,
    };
    if p.tokens.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let v = p.expr()?;
    if p.at != p.tokens.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(v)
}

/// A reduced map; constants are rejected as non-dominant.
pub fn parse_map(text: &str, field: u32) -> Result<RationalMap> {
    RationalMap::from_ratfunc(parse_ratfunc(text, field)?)
}

pub fn parse_scalar(text: &str, field: u32) -> Result<FieldElement> {
    let f = parse_ratfunc(text, field)?;
    if !f.is_constant() {
        return Err(err(0, "expected a constant"));
    }
    Ok(&f.num().coeff(0) / &f.den().coeff(0))
}

/// A point of the projective line: a scalar, or `inf` / `∞`.
pub fn parse_point(text: &str, field: u32) -> Result<ProjPoint> {
    match text.trim() {
        "inf" | "∞" | "infinity" => Ok(ProjPoint::Infinity),
        s => Ok(ProjPoint::Finite(parse_scalar(s, field)?)),
    }
}

/// "Q" → 1 and "Q(zeta<k>)" → k, within the conductor cap.
pub fn parse_field(text: &str) -> Result<u32> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(1);
    }
    let k = t
        .strip_prefix("Q(zeta")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|k| k.parse::<u32>().ok())
        .filter(|&k| k > 0)
        .ok_or_else(|| err(0, format!("unknown field {text:?}; use Q or Q(zeta<k>)")))?;
    if k > DEFAULT_CONDUCTOR_CAP {
        return Err(Error::ConductorCap {
            requested: k,
            cap: DEFAULT_CONDUCTOR_CAP,
        });
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{factor_u, sigma};

    #[test]
    fn map_literals() {
        assert_eq!(parse_map("(z^2-4)/(z-1)", 1).unwrap(), factor_u());
        assert!(parse_map("z", 1).unwrap().is_identity());
        assert_eq!(parse_map("zeta3*z", 3).unwrap(), sigma());
        assert_eq!(parse_map("zeta3 z", 6).unwrap(), sigma());
        assert_eq!(parse_map("z^-2", 1).unwrap(), RationalMap::from_ints(&[1], &[0, 0, 1]).unwrap());
        assert_eq!(parse_map("1/2 z^2 + 3/4", 1).unwrap().degree(), 2);
        assert_eq!(parse_map("x^2 - 2", 1).unwrap(), crate::chebylattes::chebyshev(2, 1));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_map("zeta3*z", 1), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_map("(z^2", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("z +* 1", 1), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_map("z/0", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("q", 1), Err(Error::Parse { .. })));
        assert_eq!(parse_map("(z+1)/(z+1)", 1), Err(Error::ConstantMap));
        assert_eq!(Error::Parse { pos: 0, msg: String::new() }.exit_code(), 2);
        assert_eq!(Error::ConstantMap.exit_code(), 4);
    }

    #[test]
    fn display_round_trips() {
        let z3 = FieldElement::zeta(3).unwrap();
        let maps = [
            factor_u(),
            sigma(),
            RationalMap::new(
                Polynomial::new(vec![&z3 + &FieldElement::one(), FieldElement::rational(-5, 6).unwrap(), &z3 * &z3]),
                Polynomial::new(vec![FieldElement::rational(1, 7).unwrap(), FieldElement::zero(), FieldElement::one()]),
            )
            .unwrap(),
            crate::catalog::composite_uv(),
        ];
        for m in maps {
            assert_eq!(parse_map(&m.to_string(), 3).unwrap(), m, "{m}");
        }
    }

    #[test]
    fn scalars_points_fields() {
        assert_eq!(parse_scalar("5/6", 1).unwrap(), FieldElement::rational(5, 6).unwrap());
        let z3 = FieldElement::zeta(3).unwrap();
        assert_eq!(parse_scalar("zeta3^2 - 1", 3).unwrap(), &(&z3 * &z3) - &FieldElement::one());
        assert_eq!(parse_scalar("i^2", 4).unwrap(), FieldElement::from(-1));
        assert!(parse_scalar("z", 1).is_err());
        assert_eq!(parse_point("inf", 1).unwrap(), ProjPoint::Infinity);
        assert_eq!(parse_point(" -3 ", 1).unwrap(), ProjPoint::finite(-3));
        assert_eq!(parse_field("Q").unwrap(), 1);
        assert_eq!(parse_field("Q(zeta12)").unwrap(), 12);
        assert!(parse_field("R").is_err());
        assert!(matches!(parse_field("Q(zeta100)"), Err(Error::ConductorCap { .. })));
    }
}
