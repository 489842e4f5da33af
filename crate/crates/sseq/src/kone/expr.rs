use crate::fgab::{CoeffRing, Elem};

use super::adams::psi;
use super::bku::BkuElement;
use super::KoneError;

/// An expression in `π_{*,*}b(KU_p)`.
///
/// Grammar: sums and differences of products (`*`) of powers (`^n`, with
/// negative `n` for units) of integers, `beta`, `tau2`, `a`, `d`, `h`,
/// `psi(k, e)` and parenthesised expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(Elem),
    Beta,
    Tau2,
    A,
    D,
    H,
    Psi(Elem, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(Elem),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, KoneError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut v: Elem = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as Elem))
                    .ok_or_else(|| KoneError::Parse("integer literal too large".into()))?;
                chars.next();
            }
            out.push(Token::Int(v));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
            }
            out.push(Token::Ident(s));
        } else if "+-*^(),".contains(c) {
            out.push(Token::Sym(c));
            chars.next();
        } else if c == '·' {
            out.push(Token::Sym('*'));
            chars.next();
        } else {
            return Err(KoneError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), KoneError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(KoneError::Parse(format!("expected {c:?} at token {}", self.pos)))
        }
    }

    fn signed_int(&mut self) -> Result<Elem, KoneError> {
        let neg = self.eat('-');
        match self.tokens.get(self.pos) {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(if neg { -v } else { *v })
            }
            _ => Err(KoneError::Parse(format!("expected an integer at token {}", self.pos))),
        }
    }

    fn sum(&mut self) -> Result<Expr, KoneError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, KoneError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, KoneError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, KoneError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = if self.eat('(') {
            let e = self.signed_int()?;
            self.expect(')')?;
            e
        } else {
            self.signed_int()?
        };
        let e = i64::try_from(e).map_err(|_| KoneError::Parse("exponent too large".into()))?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, KoneError> {
        let tok = self.peek().cloned().ok_or_else(|| KoneError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Int(v) => Ok(Expr::Int(v)),
            Token::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Token::Ident(name) => match name.as_str() {
                "beta" => Ok(Expr::Beta),
                "tau2" => Ok(Expr::Tau2),
                "a" => Ok(Expr::A),
                "d" => Ok(Expr::D),
                "h" => Ok(Expr::H),
                "psi" => {
                    self.expect('(')?;
                    let k = self.signed_int()?;
                    self.expect(',')?;
                    let e = self.sum()?;
                    self.expect(')')?;
                    Ok(Expr::Psi(k, Box::new(e)))
                }
                other => Err(KoneError::Parse(format!("unknown name {other:?}"))),
            },
            Token::Sym(c) => Err(KoneError::Parse(format!("unexpected {c:?}"))),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, KoneError> {
        let mut parser = Parser { tokens: tokenize(text)?, pos: 0 };
        let e = parser.sum()?;
        if parser.pos != parser.tokens.len() {
            return Err(KoneError::Parse(format!("trailing input at token {}", parser.pos)));
        }
        Ok(e)
    }

    pub fn eval(&self, ring: CoeffRing) -> Result<BkuElement, KoneError> {
        Ok(match self {
            Expr::Int(v) => BkuElement::integer(ring, *v)?,
            Expr::Beta => BkuElement::beta(ring)?,
            Expr::Tau2 => BkuElement::tau2(ring)?,
            Expr::A => BkuElement::a(ring)?,
            Expr::D => BkuElement::d(ring)?,
            Expr::H => BkuElement::h(ring)?,
            Expr::Psi(k, e) => psi(*k, &e.eval(ring)?)?,
            Expr::Neg(e) => e.eval(ring)?.neg(),
            Expr::Add(x, y) => x.eval(ring)?.add(&y.eval(ring)?)?,
            Expr::Sub(x, y) => x.eval(ring)?.sub(&y.eval(ring)?)?,
            Expr::Mul(x, y) => x.eval(ring)?.mul(&y.eval(ring)?)?,
            Expr::Pow(x, e) => x.eval(ring)?.pow(*e)?,
        })
    }
}

/// Parse and evaluate `text` in `π_{*,*}b(KU_p)` at the given precision.
pub fn eval(p: u32, precision: u32, text: &str) -> Result<BkuElement, KoneError> {
    let ring = CoeffRing::padic(p, precision)?;
    Expr::parse(text)?.eval(ring)
}
