//! Text input: polynomials over x, y, z, t and the optional grading clause
//! `quotient: 1/n(a,b,c,d)`.

use crate::jet::{Monomial, Rat, Var};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable '{name}' at {line}:{col}")]
    UnknownVariable {
        line: usize,
        col: usize,
        name: String,
    },
}

/// Parsed input: an exact polynomial and an optional cyclic grading.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSpec {
    pub polynomial: Vec<(Monomial, Rat)>,
    pub action: Option<(u32, [i64; 4])>,
    pub text: String,
}

impl InputSpec {
    pub fn to_jet(&self, order: u32) -> crate::jet::Jet {
        crate::jet::Jet::from_terms(self.polynomial.iter().cloned(), order)
    }

    /// Total degree of the input polynomial.
    pub fn degree(&self) -> u32 {
        self.polynomial
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
}

struct Lexer {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Number(s.parse().unwrap()), l, c));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Ident(s), l, c));
            }
            _ => {
                let tok = match ch {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    ':' => Token::Colon,
                    other => {
                        return Err(ParseError::Syntax {
                            line: l,
                            col: c,
                            msg: format!("unexpected character '{other}'"),
                        })
                    }
                };
                chars.next();
                col += 1;
                tokens.push((tok, l, c));
            }
        }
    }
    Ok(Lexer { tokens, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn location(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), ParseError> {
        let (line, col) = self.location();
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(ParseError::Syntax {
                line,
                col,
                msg: format!("expected {what}, found {got:?}"),
            }),
        }
    }
}

/// Exact multivariate polynomial used during parsing.
#[derive(Debug, Clone, PartialEq)]
struct Poly(BTreeMap<Monomial, Rat>);

impl Poly {
    fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    fn constant(c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    fn var(v: Var) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.0 {
            r.add_term(*m, c.clone());
        }
        r
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                r.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        r
    }

    fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::constant(Rat::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    fn as_constant(&self) -> Option<Rat> {
        if self.0.is_empty() {
            return Some(Rat::zero());
        }
        if self.0.len() == 1 {
            let (m, c) = self.0.iter().next().unwrap();
            if m.degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }
}

struct Parser {
    lexer: Lexer,
}

impl Parser {
    fn error(&self, msg: impl fmt::Display) -> ParseError {
        let (line, col) = self.lexer.location();
        ParseError::Syntax {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn expression(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.lexer.peek() {
            Some(Token::Minus) => {
                self.lexer.next();
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.lexer.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.lexer.peek() {
                Some(Token::Plus) => {
                    self.lexer.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.lexer.next();
                    let t = self.term()?;
                    acc = acc.add(&t.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.lexer.peek() {
                Some(Token::Star) => {
                    self.lexer.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Token::Slash) => {
                    self.lexer.next();
                    let f = self.factor()?;
                    let Some(c) = f.as_constant() else {
                        return Err(self.error("division is only defined by a nonzero constant"));
                    };
                    if c.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = acc.mul(&Poly::constant(Rat::one() / c));
                }
                // Juxtaposition: a number or parenthesis followed directly by
                // a variable or parenthesis multiplies. The keyword starting
                // the grading clause ends the polynomial.
                Some(Token::Ident(name)) if name != "quotient" => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if let Some(Token::Caret) = self.lexer.peek() {
            self.lexer.next();
            let (line, col) = self.lexer.location();
            match self.lexer.next() {
                Some(Token::Number(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        line,
                        col,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::Syntax {
                    line,
                    col,
                    msg: "expected an integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let (line, col) = self.lexer.location();
        match self.lexer.next() {
            Some(Token::Number(n)) => Ok(Poly::constant(Rat::from_integer(n))),
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(Poly::var(Var::X)),
                "y" => Ok(Poly::var(Var::Y)),
                "z" => Ok(Poly::var(Var::Z)),
                "t" => Ok(Poly::var(Var::T)),
                _ => Err(ParseError::UnknownVariable { line, col, name }),
            },
            Some(Token::LParen) => {
                let inner = self.expression()?;
                self.lexer.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            other => Err(ParseError::Syntax {
                line,
                col,
                msg: format!("expected a polynomial term, found {other:?}"),
            }),
        }
    }

    fn signed_integer(&mut self) -> Result<i64, ParseError> {
        let (line, col) = self.lexer.location();
        let negative = matches!(self.lexer.peek(), Some(Token::Minus));
        if negative {
            self.lexer.next();
        }
        match self.lexer.next() {
            Some(Token::Number(n)) => {
                let v: i64 = n.try_into().map_err(|_| ParseError::Syntax {
                    line,
                    col,
                    msg: "grade out of range".into(),
                })?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(ParseError::Syntax {
                line,
                col,
                msg: "expected an integer".into(),
            }),
        }
    }

    /// `1/n(a,b,c,d)`
    fn grading(&mut self) -> Result<(u32, [i64; 4]), ParseError> {
        let (line, col) = self.lexer.location();
        match self.lexer.next() {
            Some(Token::Number(n)) if n.is_one() => {}
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: "grading must start with 1/".into(),
                })
            }
        }
        self.lexer.expect(Token::Slash, "'/'")?;
        let (line, col) = self.lexer.location();
        let n: u32 = match self.lexer.next() {
            Some(Token::Number(n)) => n.try_into().map_err(|_| ParseError::Syntax {
                line,
                col,
                msg: "index out of range".into(),
            })?,
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: "expected the index n".into(),
                })
            }
        };
        if n < 2 {
            return Err(ParseError::Syntax {
                line,
                col,
                msg: "index must be at least 2".into(),
            });
        }
        self.lexer.expect(Token::LParen, "'('")?;
        let mut grades = [0i64; 4];
        for (i, g) in grades.iter_mut().enumerate() {
            if i > 0 {
                self.lexer.expect(Token::Comma, "','")?;
            }
            *g = self.signed_integer()?;
        }
        self.lexer.expect(Token::RParen, "')'")?;
        Ok((n, grades))
    }
}

/// Parse one input line: a polynomial, optionally followed by
/// `quotient: 1/n(a,b,c,d)`.
pub fn parse_input(text: &str) -> Result<InputSpec, ParseError> {
    let lexer = lex(text)?;
    let mut parser = Parser { lexer };
    let poly = parser.expression()?;
    let mut action = None;
    if let Some(Token::Ident(word)) = parser.lexer.peek() {
        if word == "quotient" {
            parser.lexer.next();
            parser.lexer.expect(Token::Colon, "':'")?;
            action = Some(parser.grading()?);
        }
    }
    if parser.lexer.peek().is_some() {
        return Err(parser.error("trailing input"));
    }
    Ok(InputSpec {
        polynomial: poly.0.into_iter().collect(),
        action,
        text: text.trim().to_string(),
    })
}

/// Render a polynomial in the input grammar; parsing it back gives the same
/// terms.
pub fn render_polynomial(terms: &[(Monomial, Rat)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let jet = crate::jet::Jet::from_terms(
        terms.iter().cloned(),
        terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(1).max(1),
    );
    jet.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{mono, rat, rat_int};

    #[test]
    fn basic_polynomial() {
        let spec = parse_input("x^2+y^2+z^2-t^2").unwrap();
        assert_eq!(spec.polynomial.len(), 4);
        assert!(spec.action.is_none());
        let jet = spec.to_jet(4);
        assert_eq!(jet.coeff(&mono(0, 0, 0, 2)), rat_int(-2) / rat_int(2));
    }

    #[test]
    fn grading_clause() {
        let spec = parse_input("x^2+y^2+z^4+t^6 quotient: 1/2(1,1,1,0)").unwrap();
        assert_eq!(spec.action, Some((2, [1, 1, 1, 0])));
        let spec = parse_input("x y + z^3 + t^3 quotient: 1/3(1,-1,1,0)").unwrap();
        assert_eq!(spec.action, Some((3, [1, -1, 1, 0])));
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(
            parse_input("x^2+w^3"),
            Err(ParseError::UnknownVariable { name, .. }) if name == "w"
        ));
    }

    #[test]
    fn rational_coefficients() {
        let spec = parse_input("1/2 x^2 - 3/4*z t^3").unwrap();
        let jet = spec.to_jet(6);
        assert_eq!(jet.coeff(&mono(2, 0, 0, 0)), rat(1, 2));
        assert_eq!(jet.coeff(&mono(0, 0, 1, 3)), rat(-3, 4));
    }

    #[test]
    fn juxtaposition_and_parens() {
        let spec = parse_input("2x(y+z)^2").unwrap();
        let jet = spec.to_jet(6);
        assert_eq!(jet.coeff(&mono(1, 2, 0, 0)), rat_int(2));
        assert_eq!(jet.coeff(&mono(1, 1, 1, 0)), rat_int(4));
        assert_eq!(jet.coeff(&mono(1, 0, 2, 0)), rat_int(2));
    }

    #[test]
    fn round_trip() {
        for text in [
            "x^2+y^2+z^2-t^2",
            "x^2-3/2*y^3+z*t^5",
            "x*y+z^6-t^6",
        ] {
            let spec = parse_input(text).unwrap();
            let rendered = render_polynomial(&spec.polynomial);
            let back = parse_input(&rendered).unwrap();
            assert_eq!(spec.polynomial, back.polynomial, "{text} -> {rendered}");
        }
    }

    #[test]
    fn error_position() {
        match parse_input("x^2 + + y") {
            Err(ParseError::Syntax { line, col, .. }) => {
                assert_eq!(line, 1);
                assert!(col >= 7);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
