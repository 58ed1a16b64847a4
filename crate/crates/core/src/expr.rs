//! Expression front end: `+ - * / ^`, integer literals, identifiers, parentheses.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qfield::QRat;

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 4096;
const MAX_DEPTH: usize = 256;
const MAX_DIGITS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { num: Box<Expr>, den: Box<Expr>, pos: usize },
    Pow { base: Box<Expr>, exp: i64, pos: usize },
}

/// Arithmetic needed to evaluate an [`Expr`].
pub trait ExprValue: Sized {
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Result<Self>;
    /// Only called when the expression contains `/`.
    fn div(&self, o: &Self, pos: usize) -> Result<Self>;
    fn pow(&self, k: i64, pos: usize) -> Result<Self>;
}

impl Expr {
    /// Evaluate with `int` lifting literals and `ident` resolving names.
    pub fn eval<T: ExprValue>(
        &self,
        int: &dyn Fn(&BigInt) -> T,
        ident: &dyn Fn(&str, usize) -> Result<T>,
    ) -> Result<T> {
        let ev = |e: &Expr| e.eval(int, ident);
        Ok(match self {
            Expr::Int(v) => int(v),
            Expr::Ident { name, pos } => ident(name, *pos)?,
            Expr::Neg(a) => ev(a)?.neg()?,
            Expr::Add(a, b) => ev(a)?.add(&ev(b)?)?,
            Expr::Sub(a, b) => ev(a)?.sub(&ev(b)?)?,
            Expr::Mul(a, b) => ev(a)?.mul(&ev(b)?)?,
            Expr::Div { num, den, pos } => ev(num)?.div(&ev(den)?, *pos)?,
            Expr::Pow { base, exp, pos } => ev(base)?.pow(*exp, *pos)?,
        })
    }

    /// Upper bound on the total degree of the evaluated expression.
    pub fn degree_bound(&self) -> u64 {
        match self {
            Expr::Int(_) => 0,
            Expr::Ident { .. } => 1,
            Expr::Neg(a) => a.degree_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            Expr::Mul(a, b) => a.degree_bound().saturating_add(b.degree_bound()),
            Expr::Div { num, den, .. } => num.degree_bound().saturating_add(den.degree_bound()),
            Expr::Pow { base, exp, .. } => base.degree_bound().max(1).saturating_mul(exp.unsigned_abs()),
        }
    }

    /// True if every identifier in the tree satisfies `f`.
    pub fn idents_all(&self, f: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Expr::Int(_) => true,
            Expr::Ident { name, .. } => f(name),
            Expr::Neg(a) | Expr::Pow { base: a, .. } => a.idents_all(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.idents_all(f) && b.idents_all(f),
            Expr::Div { num, den, .. } => num.idents_all(f) && den.idents_all(f),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    pub allow_division: bool,
}

pub fn parse(src: &str, opts: ParseOptions) -> Result<Expr> {
    let mut p = Parser { s: src.as_bytes(), i: 0, depth: 0, opts };
    p.skip_ws();
    if p.i == p.s.len() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if e.degree_bound() > MAX_DEGREE_BOUND {
        return Err(Error::Parse { pos: 0, msg: "expression degree too large".into() });
    }
    Ok(e)
}

const MAX_DEGREE_BOUND: u64 = 1 << 16;

/// Parse and evaluate an element of `Q(q)`.
pub fn parse_scalar(src: &str) -> Result<QRat> {
    let e = parse(src, ParseOptions { allow_division: true })?;
    e.eval(&|v| QRat::from_bigint(v.clone()), &|name, pos| match name {
        "q" => Ok(QRat::q()),
        _ => Err(Error::Parse { pos, msg: format!("unknown identifier '{name}' in scalar") }),
    })
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    depth: usize,
    opts: ParseOptions,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.i, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                Expr::Add(Box::new(acc), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(acc), Box::new(rhs))
            };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Some(b'/') => {
                    let pos = self.i;
                    if !self.opts.allow_division {
                        return Err(self.err("division is not allowed here"));
                    }
                    self.i += 1;
                    let rhs = self.unary()?;
                    acc = Expr::Div { num: Box::new(acc), den: Box::new(rhs), pos };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        self.enter()?;
        let out = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                Expr::Neg(Box::new(self.unary()?))
            }
            Some(b'+') => {
                self.i += 1;
                self.unary()?
            }
            _ => self.power()?,
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let pos = self.i;
            self.i += 1;
            let exp = self.signed_int()?;
            return Ok(Expr::Pow { base: Box::new(base), exp, pos });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.i += 1;
            }
            Some(b'+') => self.i += 1,
            _ => {}
        }
        let paren = self.peek() == Some(b'(');
        if paren {
            self.enter()?;
            self.i += 1;
            let inner = self.signed_int()?;
            self.depth -= 1;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            self.i += 1;
            return Ok(if neg { -inner } else { inner });
        }
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer exponent"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        let v: i64 = txt
            .parse()
            .ok()
            .filter(|v: &i64| *v <= MAX_EXPONENT)
            .ok_or_else(|| Error::Parse { pos: start, msg: "exponent out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                if self.i - start > MAX_DIGITS {
                    return Err(Error::Parse { pos: start, msg: "integer literal too long".into() });
                }
                let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                Ok(Expr::Int(txt.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap().to_string();
                Ok(Expr::Ident { name, pos: start })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl ExprValue for QRat {
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Result<Self> {
        Ok(-self)
    }
    fn div(&self, o: &Self, pos: usize) -> Result<Self> {
        self.checked_div(o).map_err(|_| Error::Parse { pos, msg: "division by zero".into() })
    }
    fn pow(&self, k: i64, pos: usize) -> Result<Self> {
        if self.is_zero() && k < 0 {
            return Err(Error::Parse { pos, msg: "negative power of zero".into() });
        }
        QRat::pow(self, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^2").unwrap(), QRat::q_pow(2));
        assert_eq!(parse_scalar("-q^2 + 1").unwrap(), QRat::one() - QRat::q_pow(2));
        assert_eq!(parse_scalar("(q^2-1)/(q-1)").unwrap(), QRat::q() + QRat::one());
        assert_eq!(parse_scalar("q^-2").unwrap(), QRat::q_pow(-2));
        assert_eq!(parse_scalar("2*q^(-3)").unwrap(), QRat::monomial(2, -3));
    }

    #[test]
    fn wire_round_trip() {
        let a = parse_scalar("(q^3 - 2*q)/(5*q^2+q+7)").unwrap();
        assert_eq!(parse_scalar(&a.to_wire()).unwrap(), a);
        assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_scalar("q + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("q^99999").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("((q)").is_err());
        assert!(parse_scalar(&"(".repeat(10_000)).is_err());
        assert!(parse_scalar(&format!("q^{}1", "(".repeat(10_000))).is_err());
        assert!(parse_scalar("((q+2)^4000)^4000").is_err());
    }
}
