//! Expression syntax for Laurent polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?
//! exponent:= ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
//! atom    := INT ['/' INT] | VAR | '(' expr ')'
//! VAR     := x | y | z | w | x1 .. x8
//! ```
//!
//! `x, y, z, w` are variables 0 to 3, and `x1..x8` are variables 0 to 7.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, MAX_RANK};
use crate::ring::{Coefficient, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Rational),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.len() != 1 {
                return None;
            }
            let i: usize = digits.parse().ok()?;
            (1..=MAX_RANK).contains(&i).then(|| i - 1)
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let token = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push((
                    start,
                    Token::Int(text[start..i].parse().expect("ascii digits")),
                ));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                let index = variable_index(name)
                    .ok_or_else(|| parse_error(start, format!("unknown identifier `{name}`")))?;
                tokens.push((start, Token::Var(index)));
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(parse_error(start, format!("unexpected character `{ch}`")));
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Token::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let exponent = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat(&Token::Minus) {
            true
        } else {
            self.eat(&Token::Plus);
            false
        };
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let n = if negative { -n } else { n };
                i64::try_from(n).map_err(|_| parse_error(offset, "exponent out of range"))
            }
            _ => Err(parse_error(offset, "expected an integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(&Token::LParen) {
            let e = self.signed_int()?;
            if !self.eat(&Token::RParen) {
                return Err(parse_error(self.offset(), "expected `)`"));
            }
            return Ok(e);
        }
        self.signed_int()
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat(&Token::Slash) {
                    let den_offset = self.offset();
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return Err(parse_error(den_offset, "zero denominator"));
                            }
                            Ok(Expr::Number(Rational::new(n, d)))
                        }
                        _ => Err(parse_error(den_offset, "expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Number(Rational::from_integer(n)))
                }
            }
            Some(Token::Var(i)) => {
                self.pos += 1;
                Ok(Expr::Var(i))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(parse_error(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(parse_error(offset, "unexpected token")),
            None => Err(parse_error(offset, "unexpected end of input")),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parse_error(parser.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}

impl Expr {
    /// Largest variable index used, if any.
    pub fn max_variable(&self) -> Option<usize> {
        match self {
            Expr::Number(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(e) | Expr::Pow(e, _) => e.max_variable(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.max_variable().max(b.max_variable())
            }
        }
    }

    /// Expand into canonical sparse form in the given rank.
    pub fn to_poly(&self, rank: usize) -> Result<LaurentPoly<Rational>> {
        if !(1..=MAX_RANK).contains(&rank) {
            return Err(Error::RankOutOfRange(rank));
        }
        self.eval(rank)
    }

    fn eval(&self, rank: usize) -> Result<LaurentPoly<Rational>> {
        Ok(match self {
            Expr::Number(q) => LaurentPoly::constant(rank, q.clone()),
            Expr::Var(i) => {
                if *i >= rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        found: i + 1,
                    });
                }
                LaurentPoly::variable(rank, *i)
            }
            Expr::Neg(e) => e.eval(rank)?.neg(),
            Expr::Add(a, b) => a.eval(rank)?.add(&b.eval(rank)?)?,
            Expr::Sub(a, b) => a.eval(rank)?.sub(&b.eval(rank)?)?,
            Expr::Mul(a, b) => a.eval(rank)?.mul(&b.eval(rank)?)?,
            Expr::Pow(base, e) => {
                let base = base.eval(rank)?;
                let magnitude = u32::try_from(e.unsigned_abs())
                    .map_err(|_| parse_error(0, "exponent too large"))?;
                if *e >= 0 {
                    base.pow(magnitude)
                } else {
                    invert_term(&base)?.pow(magnitude)
                }
            }
        })
    }
}

fn invert_term(p: &LaurentPoly<Rational>) -> Result<LaurentPoly<Rational>> {
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) => Ok(LaurentPoly::from_monomial(
            m.inverse(),
            c.try_inverse().expect("stored coefficients are nonzero"),
        )),
        _ => Err(Error::NotInvertible(p.to_string())),
    }
}

/// Parse and expand. Without an explicit rank the rank is one more than the
/// largest variable index (at least 1).
pub fn parse_polynomial(text: &str, rank: Option<usize>) -> Result<LaurentPoly<Rational>> {
    let expr = parse_expression(text)?;
    let rank = rank.unwrap_or_else(|| expr.max_variable().map_or(1, |i| i + 1));
    expr.to_poly(rank)
}

/// Parse labelled components `label: expr; label: expr; ...` into charts of
/// a common rank (inferred from all components when not given).
pub fn parse_components(
    text: &str,
    rank: Option<usize>,
) -> Result<Vec<(String, LaurentPoly<Rational>)>> {
    let mut parsed = Vec::new();
    let mut start = 0;
    for piece in text.split(';') {
        let piece_start = start;
        start += piece.len() + 1;
        if piece.trim().is_empty() {
            continue;
        }
        let (raw_label, body) = piece
            .split_once(':')
            .ok_or_else(|| parse_error(piece_start, "expected `label: expression`"))?;
        let label = raw_label.trim();
        if label.is_empty() {
            return Err(parse_error(piece_start, "empty component label"));
        }
        let body_start = piece_start + raw_label.len() + 1;
        let expr = parse_expression(body).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset: offset + body_start,
                message,
            },
            other => other,
        })?;
        parsed.push((label.to_string(), expr));
    }
    if parsed.is_empty() {
        return Err(parse_error(0, "no components"));
    }
    let rank = rank.unwrap_or_else(|| {
        parsed
            .iter()
            .filter_map(|(_, e)| e.max_variable())
            .max()
            .map_or(1, |i| i + 1)
    });
    parsed
        .into_iter()
        .map(|(label, e)| Ok((label, e.to_poly(rank)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::ring::{ratio, rational};

    #[test]
    fn projective_plane_potential() {
        let f = parse_polynomial("x + y + x^-1*y^-1", None).unwrap();
        assert_eq!(f.rank(), 2);
        let expected = LaurentPoly::normalize(
            2,
            [
                (vec![1, 0], rational(1)),
                (vec![0, 1], rational(1)),
                (vec![-1, -1], rational(1)),
            ],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn binomial() {
        let f = parse_polynomial("(1+x)^2", None).unwrap();
        assert_eq!(f.to_string(), "x^2 + 2*x + 1");
    }

    #[test]
    fn incomplete_input() {
        assert_eq!(
            parse_polynomial("x +", None).unwrap_err(),
            Error::Parse {
                offset: 3,
                message: "unexpected end of input".into()
            }
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let offset = |text: &str| match parse_expression(text) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(offset("x + q"), 4);
        assert_eq!(offset("1/0"), 2);
        assert_eq!(offset("x^y"), 2);
        assert_eq!(offset("(x + 1"), 6);
        assert_eq!(offset("x y"), 2);
        assert_eq!(offset("x # 2"), 2);
    }

    #[test]
    fn rational_literals_and_signs() {
        let f = parse_polynomial("-1/2*x^2 + 3 - x^(-1)", None).unwrap();
        assert_eq!(f.to_string(), "-1/2*x^2 + 3 - x^-1");
        assert_eq!(
            f.coefficient_at(&Monomial::new(&[2]).unwrap()).unwrap(),
            ratio(-1, 2)
        );
        assert_eq!(parse_polynomial("-x^2", None).unwrap().to_string(), "-x^2");
    }

    #[test]
    fn negative_powers_need_a_single_term() {
        let f = parse_polynomial("(2*x*y)^-1", None).unwrap();
        assert_eq!(f.to_string(), "1/2*x^-1*y^-1");
        assert!(matches!(
            parse_polynomial("(1+x)^-1", None),
            Err(Error::NotInvertible(_))
        ));
        assert!(matches!(
            parse_polynomial("0^-1", None),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn rank_handling() {
        assert_eq!(parse_polynomial("5", None).unwrap().rank(), 1);
        assert_eq!(parse_polynomial("x3", None).unwrap().rank(), 3);
        assert_eq!(
            parse_polynomial("z", Some(2)).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
        assert_eq!(
            parse_polynomial("x8 + x1", None).unwrap().to_string(),
            "x1 + x8"
        );
    }

    #[test]
    fn labelled_components() {
        let parts = parse_components("D1: x; D2: y ; D3: x^-1*y^-1", None).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].0, "D1");
        assert!(parts.iter().all(|(_, p)| p.rank() == 2));
        assert!(matches!(
            parse_components("x + y", None),
            Err(Error::Parse { offset: 0, .. })
        ));
        match parse_components("A: x; B: y +", None) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("{other:?}"),
        }
    }
}
