use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `q` with integer coefficients, lowest degree first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        Self::new(vec![v])
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(BigInt::from(v))
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        ZPoly { c: v }
    }

    pub fn from_coeffs_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Largest `k` with `q^k` dividing `self` (0 for the zero polynomial).
    pub fn low_order(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// Multiply by `q^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.c.iter().cloned());
        ZPoly { c: v }
    }

    /// Divide by `q^k`; the caller guarantees `k <= low_order()`.
    pub fn shr(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        debug_assert!(k <= self.low_order() || self.is_zero());
        ZPoly { c: self.c[k.min(self.c.len())..].to_vec() }
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &ZPoly) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut v = long.c.clone();
        for (a, b) in v.iter_mut().zip(&short.c) {
            *a += b;
        }
        Self::new(v)
    }

    pub fn sub(&self, o: &ZPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut v = self.c.clone();
        v.resize(n, BigInt::zero());
        for (a, b) in v.iter_mut().zip(&o.c) {
            *a -= b;
        }
        Self::new(v)
    }

    pub fn mul(&self, o: &ZPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        let mut v = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lead().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&g)
        }
    }

    /// Pseudo-remainder: `lc(d)^k * self mod d`.
    fn prem(&self, d: &ZPoly) -> Self {
        let dd = d.c.len() - 1;
        let ld = d.c.last().unwrap();
        let mut r = self.c.clone();
        while r.len() > dd && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            for x in r.iter_mut() {
                *x *= ld;
            }
            for (i, b) in d.c.iter().enumerate() {
                r[shift + i] -= &lr * b;
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Greatest common divisor over `Z[q]`, normalized to positive leading coefficient.
    pub fn gcd(&self, o: &ZPoly) -> Self {
        if self.is_zero() {
            return o.primitive_sign_only();
        }
        if o.is_zero() {
            return self.primitive_sign_only();
        }
        let cg = self.content().gcd(&o.content());
        if self.is_constant() || o.is_constant() {
            return Self::constant(cg);
        }
        let (mut a, mut b) = if self.c.len() >= o.c.len() {
            (self.primitive(), o.primitive())
        } else {
            (o.primitive(), self.primitive())
        };
        if a == b {
            return a.scale(&cg);
        }
        loop {
            let r = a.prem(&b);
            if r.is_zero() {
                return b.primitive().scale(&cg);
            }
            if r.is_constant() {
                return Self::constant(cg);
            }
            a = b;
            b = r.primitive();
        }
    }

    fn primitive_sign_only(&self) -> Self {
        if self.lead().is_some_and(|l| l.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d` over `Z[q]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &ZPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.c.len() == 1 {
            let k = &d.c[0];
            if self.c.iter().all(|x| (x % k).is_zero()) {
                return Some(self.div_scalar_exact(k));
            }
            return None;
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dd = d.c.len() - 1;
        let ld = d.c.last().unwrap();
        let mut r = self.c.clone();
        let mut qv = vec![BigInt::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] -= &qc * b;
            }
            qv[k] = qc;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(qv))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Total size used as a pivoting heuristic.
    pub fn weight(&self) -> usize {
        self.c.len()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_coeffs_i64(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q-1)(q+1) and (q-1)(q^2+1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1, -1, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
        assert_eq!(p(&[2]).gcd(&p(&[4, 4])), p(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 0, 1]);
        let b = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 0, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "q^2-1");
        assert_eq!(p(&[-1, 2, 0, -3]).to_string(), "-3*q^3+2*q-1");
        assert_eq!(ZPoly::zero().to_string(), "0");
    }
}
