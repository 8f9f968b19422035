//! Small expression language for the bundled case data: integers, `t`, named series,
//! `+ - * /`, integer powers `^k` and `sqrt(...)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::qseries::QSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    T,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
}

/// Values an expression can be evaluated in.
pub trait Ring: Clone {
    fn int(v: i64, order: usize) -> Self;
    fn t(order: usize) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;
    fn pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 1..k {
            out = out.mul(self);
        }
        out
    }
}

impl Ring for QSeries {
    fn int(v: i64, order: usize) -> Self {
        QSeries::constant(BigRational::from_integer(BigInt::from(v)), order)
    }
    fn t(order: usize) -> Self {
        QSeries::t(order)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        QSeries::div(self, o)
    }
    fn sqrt(&self) -> Result<Self> {
        QSeries::sqrt(self)
    }
    fn pow(&self, k: u32) -> Self {
        QSeries::pow(self, k)
    }
}

/// `v + d·ε` with `ε² = 0`; evaluating at `F + ε` yields `P(F)` and `P'(F)` together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub v: QSeries,
    pub d: QSeries,
}

impl Ring for Dual {
    fn int(v: i64, order: usize) -> Self {
        Dual { v: QSeries::int(v, order), d: QSeries::zero(order) }
    }
    fn t(order: usize) -> Self {
        Dual { v: QSeries::t(order), d: QSeries::zero(order) }
    }
    fn add(&self, o: &Self) -> Self {
        Dual { v: &self.v + &o.v, d: &self.d + &o.d }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { v: &self.v - &o.v, d: &self.d - &o.d }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual { v: &self.v * &o.v, d: &(&self.d * &o.v) + &(&self.v * &o.d) }
    }
    fn neg(&self) -> Self {
        Dual { v: -&self.v, d: -&self.d }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        let v = self.v.div(&o.v)?;
        let num = &(&self.d * &o.v) - &(&self.v * &o.d);
        let d = num.div(&(&o.v * &o.v))?;
        Ok(Dual { v, d })
    }
    fn sqrt(&self) -> Result<Self> {
        let s = self.v.sqrt()?;
        let d = self.d.div(&s.scale(&BigRational::from_integer(2.into())))?;
        Ok(Dual { v: s, d })
    }
}

impl Expr {
    pub fn eval<R: Ring>(&self, env: &HashMap<String, R>, order: usize) -> Result<R> {
        Ok(match self {
            Expr::Int(v) => R::int(*v, order),
            Expr::T => R::t(order),
            Expr::Var(name) => env.get(name).cloned().ok_or_else(|| Error::Series(format!("unbound name {name}")))?,
            Expr::Neg(a) => a.eval(env, order)?.neg(),
            Expr::Add(a, b) => a.eval(env, order)?.add(&b.eval(env, order)?),
            Expr::Sub(a, b) => a.eval(env, order)?.sub(&b.eval(env, order)?),
            Expr::Mul(a, b) => a.eval(env, order)?.mul(&b.eval(env, order)?),
            Expr::Div(a, b) => a.eval(env, order)?.div(&b.eval(env, order)?)?,
            Expr::Pow(a, k) => a.eval(env, order)?.pow(*k),
            Expr::Sqrt(a) => a.eval(env, order)?.sqrt()?,
        })
    }

    /// Names referenced, in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Int(_) | Expr::T => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::T => f.write_str("t"),
            Expr::Var(n) => f.write_str(n),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().map_err(|_| Error::Parse(format!("number {txt} too large")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Num(k)) if *k >= 0 && *k <= u32::MAX as i64 => {
                    let k = *k as u32;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sqrt" {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Sqrt(Box::new(e)))
                } else if name == "t" {
                    Ok(Expr::T)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, order: usize) -> QSeries {
        parse(s).unwrap().eval::<QSeries>(&HashMap::new(), order).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1 + 2*t^2 - -t", 3), QSeries::from_ints(&[1, 1, 2], 3));
        assert_eq!(ev("(1 - t)^2", 3), QSeries::from_ints(&[1, -2, 1], 3));
        assert_eq!(ev("2*t/(2*t)", 3).order(), 2);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["1 +", "t^x", "sqrt 2", "(1", "1 $ 2", "2 3"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn dual_derivative() {
        // d/dF (F^3 + 2F) at F = t is 3t^2 + 2
        let e = parse("F^3 + 2*F").unwrap();
        let env = HashMap::from([("F".to_string(), Dual { v: QSeries::t(4), d: QSeries::one(4) })]);
        let r = e.eval(&env, 4).unwrap();
        assert_eq!(r.d, QSeries::from_ints(&[2, 0, 3], 4));
        assert_eq!(r.v, QSeries::from_ints(&[0, 2, 0, 1], 4));
    }
}
