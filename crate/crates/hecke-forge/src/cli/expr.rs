//! Operator expressions: parsing, rendering and evaluation to [`NilOp`].
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary ("*" unary)*
//! unary := "-" unary | power
//! power := atom ("^" int)?
//! atom  := int ("/" int)? | x<i> | c_nat | c_sharp | c_flat | s<i> | d<i>
//!        | "T[" rat ("," rat)* "](" expr ")" | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::q_to_string;
use crate::exactalg::{Poly, RatFunc, Q};
use crate::nilhecke::{demazure_simple, NilOp};
use crate::rootdata::{Orbit, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Q),
    /// `x_i`, 1-based.
    X(usize),
    Param(Orbit),
    /// The simple affine reflection `s_i`.
    Refl(usize),
    /// The Demazure operator `ϑ_i` of the `i`-th simple affine root.
    Dem(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `(t_d)_*` applied to an expression.
    Push(Vec<Q>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^/()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else if c == '−' {
            out.push((i, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(Error::SyntaxError {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn rational(&mut self) -> Result<Q> {
        let neg = self.eat('-');
        let n = self.int()?;
        let d = if self.eat('/') { self.int()? } else { BigInt::one() };
        if d.is_zero() {
            return self.err("zero denominator");
        }
        let v = Q::new(n, d);
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(Expr::Num(self.rational()?)),
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "T" {
                    self.expect('[')?;
                    let mut d = vec![self.rational()?];
                    while self.eat(',') {
                        d.push(self.rational()?);
                    }
                    self.expect(']')?;
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Push(d, Box::new(e)));
                }
                symbol(&name).ok_or(Error::UnknownSymbol(name))
            }
            Some(Tok::Sym(c)) => self.err(&format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok()
}

fn symbol(name: &str) -> Option<Expr> {
    match name {
        "c_nat" => return Some(Expr::Param(Orbit::Nat)),
        "c_sharp" => return Some(Expr::Param(Orbit::Sharp)),
        "c_flat" => return Some(Expr::Param(Orbit::Flat)),
        _ => {}
    }
    if let Some(i) = indexed(name, 'x') {
        return (i >= 1).then_some(Expr::X(i));
    }
    if let Some(i) = indexed(name, 's') {
        return Some(Expr::Refl(i));
    }
    indexed(name, 'd').map(Expr::Dem)
}

/// Parses an operator expression.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(v) if v.is_negative() => 0,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({})", render(e))
    } else {
        render(e)
    }
}

/// Canonical text form; reparses to an equal tree.
pub fn render(e: &Expr) -> String {
    match e {
        Expr::Num(v) => q_to_string(v),
        Expr::X(i) => format!("x{i}"),
        Expr::Param(o) => o.param_name().to_string(),
        Expr::Refl(i) => format!("s{i}"),
        Expr::Dem(i) => format!("d{i}"),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Expr::Mul(a, b) => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
        Expr::Neg(a) => format!("-{}", wrap(a, 3)),
        Expr::Pow(a, n) => format!("{}^{n}", wrap(a, 5)),
        Expr::Push(d, a) => {
            format!(
                "T[{}]({})",
                d.iter().map(q_to_string).collect::<Vec<_>>().join(","),
                render(a)
            )
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Evaluates an expression to an operator; `*` is composition.
pub fn eval_expr(e: &Expr, rs: &RootSystem) -> Result<NilOp> {
    Ok(match e {
        Expr::Num(v) => NilOp::scalar(rs, RatFunc::constant(v.clone())),
        Expr::X(i) => {
            if *i > rs.rank {
                return Err(Error::RankMismatch(format!("x{i} in rank {}", rs.rank)));
            }
            NilOp::mul_poly(rs, Poly::var(rs.x_var(i - 1)))
        }
        Expr::Param(o) => {
            if !rs.orbits.contains(o) {
                return Err(Error::RankMismatch(format!(
                    "{} does not occur in {}",
                    o.param_name(),
                    rs.name()
                )));
            }
            NilOp::mul_poly(rs, Poly::var(rs.orbit_var(*o)))
        }
        Expr::Refl(i) => {
            if *i > rs.rank {
                return Err(Error::RankMismatch(format!("s{i} in rank {}", rs.rank)));
            }
            NilOp::weyl(rs.s(*i).clone())
        }
        Expr::Dem(i) => {
            if *i > rs.rank {
                return Err(Error::RankMismatch(format!("d{i} in rank {}", rs.rank)));
            }
            demazure_simple(rs, *i)
        }
        Expr::Add(a, b) => eval_expr(a, rs)?.add(&eval_expr(b, rs)?),
        Expr::Sub(a, b) => eval_expr(a, rs)?.sub(&eval_expr(b, rs)?),
        Expr::Mul(a, b) => eval_expr(a, rs)?.compose(rs, &eval_expr(b, rs)?),
        Expr::Neg(a) => eval_expr(a, rs)?.neg(),
        Expr::Pow(a, n) => {
            let base = eval_expr(a, rs)?;
            (0..*n).fold(NilOp::identity(rs), |acc, _| acc.compose(rs, &base))
        }
        Expr::Push(d, a) => {
            if d.len() != rs.n_orb() {
                return Err(Error::RankMismatch(format!(
                    "shift has {} entries, {} expected",
                    d.len(),
                    rs.n_orb()
                )));
            }
            eval_expr(a, rs)?.pushforward(rs, d)
        }
    })
}

/// Parses and evaluates an expression that must be multiplication by a polynomial.
pub fn eval_poly(text: &str, rs: &RootSystem) -> Result<Poly> {
    let op = eval_expr(&parse(text)?, rs)?;
    let support = op.support();
    if op.is_zero() {
        return Ok(Poly::zero());
    }
    if support.len() != 1 || !support[0].is_identity() {
        return Err(Error::InvalidArgument(format!("`{text}` is not a polynomial")));
    }
    op.coeff(&support[0])
        .to_poly()
        .ok_or_else(|| Error::InvalidArgument(format!("`{text}` is not a polynomial")))
}
