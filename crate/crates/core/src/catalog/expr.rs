//! Infix expression language used by catalog files.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! Rational literals are written as quotients of integers, e.g. `1/2`.

use num_bigint::BigInt;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

/// Tokens with their byte offsets.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>, (usize, String)> {
    let mut lx = Lexer {
        chars: src.char_indices().peekable(),
        src,
    };
    let mut out = Vec::new();
    while let Some(&(i, c)) = lx.chars.peek() {
        if c.is_whitespace() {
            lx.chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = lx.chars.peek() {
                if d.is_ascii_digit() {
                    end = j + d.len_utf8();
                    lx.chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Int(lx.src[i..end].parse().unwrap()), i));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = lx.chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    lx.chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(lx.src[i..end].to_string()), i));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            lx.chars.next();
        } else {
            return Err((i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, (usize, String)> {
        Err((self.offset(), msg.into()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, (usize, String)> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, (usize, String)> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, (usize, String)> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, (usize, String)> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let k: i32 = match i32::try_from(&n) {
                        Ok(k) if k <= 10_000 => k,
                        _ => return self.err("exponent too large"),
                    };
                    Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, (usize, String)> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
        + 1;
    (line, column)
}

/// Parses an expression. Positions in errors are 1-based and relative to
/// `src`, shifted by `(line0, col0)` when reporting inside a larger file.
pub fn parse_expr_at(src: &str, line0: usize, col0: usize) -> Result<Expr, SyntaxError> {
    let mk = |(off, message): (usize, String)| {
        let (l, c) = position(src, off);
        SyntaxError {
            line: line0 + l - 1,
            column: if l == 1 { col0 + c - 1 } else { c },
            message,
        }
    };
    let toks = lex(src).map_err(mk)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr().map_err(mk)?;
    if p.pos != p.toks.len() {
        return Err(mk((p.offset(), "trailing input".into())));
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    parse_expr_at(src, 1, 1)
}

// ---- printing ----

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => 3,
        Expr::Int(_) | Expr::Var(_) => 5,
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    let wrap = |child: &Expr, min: u8, out: &mut String| {
        if prec(child) < min {
            out.push('(');
            write_expr(child, out);
            out.push(')');
        } else {
            write_expr(child, out);
        }
    };
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Var(v) => out.push_str(v),
        Expr::Neg(a) => {
            out.push('-');
            wrap(a, 3, out);
        }
        Expr::Add(a, b) => {
            wrap(a, 1, out);
            out.push_str(" + ");
            wrap(b, 2, out);
        }
        Expr::Sub(a, b) => {
            wrap(a, 1, out);
            out.push_str(" - ");
            wrap(b, 2, out);
        }
        Expr::Mul(a, b) => {
            wrap(a, 2, out);
            out.push('*');
            wrap(b, 3, out);
        }
        Expr::Div(a, b) => {
            wrap(a, 2, out);
            out.push('/');
            wrap(b, 4, out);
        }
        Expr::Pow(a, k) => {
            wrap(a, 5, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(self, &mut s);
        f.write_str(&s)
    }
}

impl Expr {
    /// Free identifiers in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

/// Interpretation of expressions in some algebra.
pub trait Interpreter {
    type Value: Clone;
    type Error: From<String>;
    fn integer(&self, n: &BigInt) -> Result<Self::Value, Self::Error>;
    fn variable(&self, name: &str) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn pow(&self, a: &Self::Value, k: i32) -> Result<Self::Value, Self::Error>;
}

pub fn evaluate<I: Interpreter>(e: &Expr, it: &I) -> Result<I::Value, I::Error> {
    match e {
        Expr::Int(n) => it.integer(n),
        Expr::Var(v) => it.variable(v),
        Expr::Neg(a) => it.neg(&evaluate(a, it)?),
        Expr::Add(a, b) => it.add(&evaluate(a, it)?, &evaluate(b, it)?),
        Expr::Sub(a, b) => it.sub(&evaluate(a, it)?, &evaluate(b, it)?),
        Expr::Mul(a, b) => it.mul(&evaluate(a, it)?, &evaluate(b, it)?),
        Expr::Div(a, b) => it.div(&evaluate(a, it)?, &evaluate(b, it)?),
        Expr::Pow(a, k) => it.pow(&evaluate(a, it)?, *k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_printing() {
        let e = parse_expr("1/2 - (3*s^2+6*s-1)*u/(16*s^2)").unwrap();
        assert_eq!(e.to_string(), "1/2 - (3*s^2 + 6*s - 1)*u/(16*s^2)");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let e = parse_expr("-s^2").unwrap();
        assert_eq!(
            e,
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var("s".into())), 2)))
        );
    }

    #[test]
    fn error_position() {
        let err = parse_expr("(s + 1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
        let err = parse_expr("s $ 1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
    }
}
