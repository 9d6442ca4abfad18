//! Expression language for the `sigmalaw` command line.
//!
//! ```text
//! expr    := term (("+"|"-") term)*
//! term    := sign? factor+
//! factor  := VAR | "(" expr ")" | "s" INT "(" expr ")" | "ch" INT "(" expr ")" | INT
//! VAR     := a-z | "x" INT
//! ```
//!
//! Juxtaposition is the noncommutative product. A leading integer factor plays
//! the role of a coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use sigmalaw_core::word::write_variable;
use sigmalaw_core::{ch_polynomial, sigma_of, NCPoly, SigmaPoly, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Var(u32),
    Int(BigInt),
    Group(Expr),
    Sigma(u32, Expr),
    Ch(u32, Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub sign: Option<Sign>,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub head: Term,
    pub tail: Vec<(Sign, Term)>,
}

impl Expr {
    pub fn num_terms(&self) -> usize {
        1 + self.tail.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        std::iter::once(&self.head).chain(self.tail.iter().map(|(_, t)| t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    LParen,
    RParen,
    Int(BigInt),
    Var(u32),
    Sigma(u32),
    Ch(u32),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Var(_) => f.write_str("variable"),
            Tok::Sigma(i) => write!(f, "s{i}"),
            Tok::Ch(i) => write!(f, "ch{i}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |position, message: String| ParseError { position, message };
    let digits_at = |mut k: usize| {
        let start = k;
        while k < chars.len() && chars[k].is_ascii_digit() {
            k += 1;
        }
        (chars[start..k].iter().collect::<String>(), k)
    };
    let index = |s: &str, pos: usize| {
        s.parse::<u32>()
            .map_err(|_| err(pos, format!("index {s} is too large")))
    };
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = k;
        let next_digit = |off: usize| chars.get(k + off).is_some_and(|d| d.is_ascii_digit());
        match c {
            _ if c.is_whitespace() => k += 1,
            '+' => {
                out.push((pos, Tok::Plus));
                k += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                k += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                k += 1;
            }
            '0'..='9' => {
                let (s, end) = digits_at(k);
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
                k = end;
            }
            's' if next_digit(1) => {
                let (s, end) = digits_at(k + 1);
                let i = index(&s, pos)?;
                if i == 0 {
                    return Err(err(pos, "sigma index must be at least 1".into()));
                }
                out.push((pos, Tok::Sigma(i)));
                k = end;
            }
            'c' if chars.get(k + 1) == Some(&'h') && next_digit(2) => {
                let (s, end) = digits_at(k + 2);
                let i = index(&s, pos)?;
                if i == 0 {
                    return Err(err(pos, "ch index must be at least 1".into()));
                }
                out.push((pos, Tok::Ch(i)));
                k = end;
            }
            'x' if next_digit(1) => {
                let (s, end) = digits_at(k + 1);
                out.push((pos, Tok::Var(index(&s, pos)?)));
                k = end;
            }
            'a'..='z' => {
                out.push((pos, Tok::Var(c as u32 - 'a' as u32)));
                k += 1;
            }
            _ => return Err(err(pos, format!("unexpected character {c:?}"))),
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().clone();
            self.fail(format!("expected {tok}, found {found}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let head = self.term()?;
        let mut tail = Vec::new();
        loop {
            let op = match self.peek() {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
            tail.push((op, self.term()?));
        }
        Ok(Expr { head, tail })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let sign = match self.peek() {
            Tok::Plus => Some(Sign::Plus),
            Tok::Minus => Some(Sign::Minus),
            _ => None,
        };
        if sign.is_some() {
            self.bump();
        }
        let mut factors = Vec::new();
        while let Some(f) = self.factor()? {
            factors.push(f);
        }
        if factors.is_empty() {
            let found = self.peek().clone();
            return self.fail(format!("expected a factor, found {found}"));
        }
        Ok(Term { sign, factors })
    }

    fn factor(&mut self) -> Result<Option<Factor>, ParseError> {
        let f = match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Factor::Var(v)
            }
            Tok::Int(n) => {
                self.bump();
                Factor::Int(n)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Factor::Group(e)
            }
            Tok::Sigma(i) => {
                self.bump();
                Factor::Sigma(i, self.argument()?)
            }
            Tok::Ch(i) => {
                self.bump();
                Factor::Ch(i, self.argument()?)
            }
            _ => return Ok(None),
        };
        Ok(Some(f))
    }

    fn argument(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let found = p.peek().clone();
        return p.fail(format!("unexpected {found}"));
    }
    Ok(e)
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Var(v) => write_variable(f, *v),
            Factor::Int(n) => write!(f, "{n}"),
            Factor::Group(e) => write!(f, "({e})"),
            Factor::Sigma(i, e) => write!(f, "s{i}({e})"),
            Factor::Ch(i, e) => write!(f, "ch{i}({e})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.sign {
            f.write_str(s.as_str())?;
        }
        for (k, factor) in self.factors.iter().enumerate() {
            // A space keeps `x 2`, `s 2` and `2 3` from lexing as one token.
            if k > 0 && matches!(factor, Factor::Int(_)) {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (op, t) in &self.tail {
            write!(f, " {} {t}", op.as_str())?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Core(#[from] sigmalaw_core::error::Error),
    #[error("in {0}: the argument has sigma coefficients, so it must reduce to a scalar times a single word")]
    NestedSigma(String),
}

impl EvalError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, EvalError::Core(e) if e.is_resource_cap())
    }
}

/// Evaluates an expression in the free algebra with σ-coefficients truncated at `trunc`.
pub fn eval(e: &Expr, trunc: Truncation) -> Result<NCPoly, EvalError> {
    let mut acc = NCPoly::zero();
    for (op, t) in std::iter::once((Sign::Plus, &e.head)).chain(e.tail.iter().map(|(s, t)| (*s, t))) {
        let v = eval_term(t, trunc)?;
        acc = match op {
            Sign::Plus => &acc + &v,
            Sign::Minus => &acc - &v,
        };
    }
    Ok(acc)
}

fn eval_term(t: &Term, trunc: Truncation) -> Result<NCPoly, EvalError> {
    let mut acc = NCPoly::one();
    for f in &t.factors {
        acc = &acc * &eval_factor(f, trunc)?;
    }
    Ok(match t.sign {
        Some(Sign::Minus) => -&acc,
        _ => acc,
    })
}

fn check_argument(f: &Factor, inner: &NCPoly) -> Result<(), EvalError> {
    let nested = inner.terms().any(|(_, c)| c.as_constant().is_none());
    if nested && inner.len() > 1 {
        return Err(EvalError::NestedSigma(f.to_string()));
    }
    Ok(())
}

fn eval_factor(f: &Factor, trunc: Truncation) -> Result<NCPoly, EvalError> {
    Ok(match f {
        Factor::Var(v) => NCPoly::var(*v),
        Factor::Int(n) => NCPoly::constant(SigmaPoly::constant(BigRational::from_integer(n.clone()))),
        Factor::Group(e) => eval(e, trunc)?,
        Factor::Sigma(i, e) => {
            let inner = eval(e, trunc)?;
            check_argument(f, &inner)?;
            NCPoly::constant(sigma_of(*i, &inner, trunc)?)
        }
        Factor::Ch(i, e) => {
            let inner = eval(e, trunc)?;
            check_argument(f, &inner)?;
            ch_polynomial(*i as usize, &inner)?
        }
    })
}
