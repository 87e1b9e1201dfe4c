//! Text forms of [`Poly`].
//!
//! `Display` writes the canonical machine form: terms highest first, factors
//! joined by ` * `, terms joined by ` + ` (negative coefficients keep their
//! sign, e.g. `-x1^2 + 2 * x1 * x2 + -x2^2`). [`Poly::pretty`] writes the
//! compact juxtaposed notation, e.g. `a(1,2)a(3,4) - a(1,3)a(2,4)`. The parser
//! reads both, plus parentheses and integer powers of any factor.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Var};
use crate::error::{Error, Result};

fn write_factors(f: &mut impl fmt::Write, m: &Monomial, sep: &str) -> fmt::Result {
    for (k, &(v, e)) in m.powers().iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{v}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
                continue;
            }
            if *c == -BigRational::one() {
                f.write_str("-")?;
            } else if !c.is_one() {
                write!(f, "{c} * ")?;
            }
            write_factors(f, m, " * ")?;
        }
        Ok(())
    }
}

impl Poly {
    /// Compact notation with juxtaposed factors and ` + `/` - ` separators.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if m.is_one() || !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            write_factors(&mut out, m, "").expect("writing to a String cannot fail");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Var(Var),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' | '\u{2212}' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' | '\u{00b7}' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            c if c.is_ascii_digit() => {
                let num = lex_digits(&mut chars)?;
                if chars.peek() == Some(&'/') {
                    chars.next();
                    let den = lex_digits(&mut chars)?;
                    if den.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    tokens.push(Token::Num(BigRational::new(num, den)));
                } else {
                    tokens.push(Token::Num(BigRational::from_integer(num)));
                }
            }
            'x' => {
                chars.next();
                let i = lex_index(&mut chars)?;
                tokens.push(Token::Var(Var::pos(i).map_err(|_| {
                    Error::Parse("position index must be >= 1".into())
                })?));
            }
            'a' => {
                chars.next();
                expect_char(&mut chars, '(')?;
                let i = lex_index(&mut chars)?;
                expect_char(&mut chars, ',')?;
                let j = lex_index(&mut chars)?;
                expect_char(&mut chars, ')')?;
                tokens.push(Token::Var(Var::gen(i, j)?));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

fn skip_spaces(chars: &mut Peekable<Chars<'_>>) {
    while chars.peek().is_some_and(|c| c.is_whitespace()) {
        chars.next();
    }
}

fn expect_char(chars: &mut Peekable<Chars<'_>>, want: char) -> Result<()> {
    skip_spaces(chars);
    match chars.next() {
        Some(c) if c == want => Ok(()),
        Some(c) => Err(Error::Parse(format!("expected `{want}`, found `{c}`"))),
        None => Err(Error::Parse(format!("expected `{want}`, found end of input"))),
    }
}

fn lex_digits(chars: &mut Peekable<Chars<'_>>) -> Result<BigInt> {
    let mut digits = String::new();
    while let Some(&c) = chars.peek() {
        if !c.is_ascii_digit() {
            break;
        }
        digits.push(c);
        chars.next();
    }
    digits
        .parse()
        .map_err(|_| Error::Parse("expected digits".into()))
}

fn lex_index(chars: &mut Peekable<Chars<'_>>) -> Result<usize> {
    skip_spaces(chars);
    let mut digits = String::new();
    while let Some(&c) = chars.peek() {
        if !c.is_ascii_digit() {
            break;
        }
        digits.push(c);
        chars.next();
    }
    digits
        .parse()
        .map_err(|_| Error::Parse("expected a variable index".into()))
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut negate = false;
        while let Some(t @ (Token::Plus | Token::Minus)) = self.peek() {
            negate ^= *t == Token::Minus;
            self.bump();
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Some(Token::Num(_) | Token::Var(_) | Token::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(if negate { -acc } else { acc })
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Some(Token::Num(e)) if e.is_integer() && !e.is_negative() => {
                let e: u32 = e
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(base.pow(e))
            }
            _ => Err(Error::Parse("expected a non-negative integer exponent".into())),
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Token::Num(c)) => Ok(Poly::constant(c)),
            Some(Token::Var(v)) => Ok(Poly::var(v)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses the canonical or compact text form (and general sums of products).
pub fn parse_poly(input: &str) -> Result<Poly> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser { tokens, at: 0 };
    let p = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            parser.at + 1
        )));
    }
    Ok(p)
}

impl std::str::FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s)
    }
}
