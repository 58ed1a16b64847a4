use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// An element of the rational function field `Q(q)`.
///
/// Stored as `q^e * num / den` where neither `num` nor `den` is divisible by
/// `q`, `gcd(num, den) = 1` (content included) and `den` has positive leading
/// coefficient. Zero is `e = 0, num = 0, den = 1`. The representation is
/// unique, so derived equality and hashing are mathematical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    e: i64,
    num: ZPoly,
    den: ZPoly,
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl QRat {
    pub fn zero() -> Self {
        QRat { e: 0, num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        QRat { e: 0, num: ZPoly::constant(v), den: ZPoly::one() }
    }

    /// The rational number `n / d`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_parts(ZPoly::from_i64(n), ZPoly::from_i64(d)).expect("nonzero denominator")
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        QRat { e: k, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        Self::from_int(c).mul_q_pow(k)
    }

    pub fn from_poly(p: ZPoly) -> Self {
        Self::build(0, p, ZPoly::one())
    }

    pub fn from_parts(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::build(0, num, den))
    }

    fn build(e: i64, num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let ln = num.low_order();
        let ld = den.low_order();
        let mut num = num.shr(ln);
        let mut den = den.shr(ld);
        let e = e + ln as i64 - ld as i64;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
            if den.lead().is_some_and(|l| l.is_negative()) {
                num = num.neg();
                den = den.neg();
            }
        }
        QRat { e, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.e == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True if the value lies in `Z[q, q^-1]`.
    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    /// If the value is `c * q^k` with `c` rational, return `(c, k)`.
    pub fn as_scaled_q_power(&self) -> Option<(BigRational, i64)> {
        if self.is_zero() {
            return None;
        }
        if self.num.is_constant() && self.den.is_constant() {
            let c = BigRational::new(self.num.coeffs()[0].clone(), self.den.coeffs()[0].clone());
            Some((c, self.e))
        } else {
            None
        }
    }

    /// If the value is exactly `q^k` return `k`.
    pub fn as_q_power(&self) -> Option<i64> {
        if self.num.is_one() && self.den.is_one() {
            Some(self.e)
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.e == 0 && self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeffs()[0].clone())
        } else {
            None
        }
    }

    /// Numerator of the canonical fraction `p(q)/r(q)`.
    pub fn numerator(&self) -> ZPoly {
        if self.e > 0 {
            self.num.shl(self.e as usize)
        } else {
            self.num.clone()
        }
    }

    /// Denominator of the canonical fraction `p(q)/r(q)`.
    pub fn denominator(&self) -> ZPoly {
        if self.e < 0 {
            self.den.shl((-self.e) as usize)
        } else {
            self.den.clone()
        }
    }

    /// Degree as a rational function: `deg num - deg den`.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.e + dn - self.den.degree().unwrap_or(0) as i64)
    }

    /// Order of vanishing at `q = 0`.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.e)
        }
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QRat { e: self.e + k, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut n, mut d) = (self.den.clone(), self.num.clone());
        if d.lead().is_some_and(|l| l.is_negative()) {
            n = n.neg();
            d = d.neg();
        }
        Ok(QRat { e: -self.e, num: n, den: d })
    }

    pub fn checked_div(&self, o: &QRat) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k32 = u32::try_from(k).map_err(|_| Error::Overflow)?;
        Ok(QRat { e: self.e * k, num: self.num.pow(k32), den: self.den.pow(k32) })
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.den.eval(q0);
        if d.is_zero() || (q0.is_zero() && self.e < 0) {
            return Err(Error::PoleAtPoint);
        }
        let qe = if self.e >= 0 {
            num_traits::pow(q0.clone(), self.e as usize)
        } else {
            num_traits::pow(q0.clone(), (-self.e) as usize).recip()
        };
        Ok(self.num.eval(q0) / d * qe)
    }

    /// Rough size, used to pick pivots.
    pub fn weight(&self) -> usize {
        self.num.weight() + self.den.weight()
    }

    /// Canonical wire form `(p)/(r)`.
    pub fn to_wire(&self) -> String {
        format!("({})/({})", self.numerator(), self.denominator())
    }

    /// Parse a scalar expression in `q`.
    pub fn parse(s: &str) -> Result<Self> {
        crate::expr::parse_scalar(s)
    }

    fn add_impl(&self, o: &QRat, negate: bool) -> QRat {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -o } else { o.clone() };
        }
        let m = self.e.min(o.e);
        let a = self.num.shl((self.e - m) as usize);
        let b0 = o.num.shl((o.e - m) as usize);
        let b = if negate { b0.neg() } else { b0 };
        if self.den == o.den {
            return Self::build(m, a.add(&b), self.den.clone());
        }
        let n = a.mul(&o.den).add(&b.mul(&self.den));
        Self::build(m, n, self.den.mul(&o.den))
    }

    fn mul_impl(&self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let e = self.e + o.e;
        if self.den.is_one() && o.den.is_one() {
            return QRat { e, num: self.num.mul(&o.num), den: ZPoly::one() };
        }
        let (mut n1, mut d2) = (self.num.clone(), o.den.clone());
        if !d2.is_one() {
            let g = n1.gcd(&d2);
            if !g.is_one() {
                n1 = n1.div_exact(&g).unwrap();
                d2 = d2.div_exact(&g).unwrap();
            }
        }
        let (mut n2, mut d1) = (o.num.clone(), self.den.clone());
        if !d1.is_one() {
            let g = n2.gcd(&d1);
            if !g.is_one() {
                n2 = n2.div_exact(&g).unwrap();
                d1 = d1.div_exact(&g).unwrap();
            }
        }
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.lead().is_some_and(|l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QRat { e, num, den }
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numerator();
        let d = self.denominator();
        if d.is_one() {
            if n.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                write!(f, "({n})")
            } else {
                write!(f, "{n}")
            }
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<i64> for QRat {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { e: self.e, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        self.add_impl(o, false)
    }
}

impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self.add_impl(o, true)
    }
}

impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        self.mul_impl(o)
    }
}

/// Panics on division by zero; use [`QRat::checked_div`] for the fallible form.
impl Div<&QRat> for &QRat {
    type Output = QRat;
    fn div(self, o: &QRat) -> QRat {
        self.checked_div(o).expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                (&self).$m(&o)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: &QRat) -> QRat {
                (&self).$m(o)
            }
        }
        impl $tr<QRat> for &QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::ops::AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, o: &QRat) {
        *self = &*self + o;
    }
}

impl std::ops::SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, o: &QRat) {
        *self = &*self - o;
    }
}

impl std::ops::MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, o: &QRat) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |a, b| a * b)
    }
}

/// Balanced `q`-integer `[k] = (q^k - q^-k)/(q - q^-1)`.
pub fn q_int(k: i64) -> QRat {
    let num = QRat::q_pow(k) - QRat::q_pow(-k);
    let den = QRat::q() - QRat::q_pow(-1);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let a = QRat::q() - QRat::q_pow(-1);
        let b = QRat::q() + QRat::q_pow(-1);
        assert_eq!(&a * &b, QRat::q_pow(2) - QRat::q_pow(-2));
    }

    #[test]
    fn cancellation() {
        let a = QRat::q_pow(2) - QRat::one();
        let b = QRat::q() - QRat::one();
        assert_eq!(&a / &b, QRat::q() + QRat::one());
    }

    #[test]
    fn square_of_q2_plus_one() {
        let a = QRat::q_pow(2) + QRat::one();
        let expect = QRat::q_pow(4) + QRat::monomial(2, 2) + QRat::one();
        assert_eq!(&a * &a, expect);
    }

    #[test]
    fn evaluation() {
        let f = QRat::q_pow(2) + QRat::one();
        assert_eq!(f.eval(&rat(2)).unwrap(), rat(5));
        let g = QRat::one() / (QRat::q() - QRat::one());
        assert!(matches!(g.eval(&rat(1)), Err(Error::PoleAtPoint)));
        let h = (QRat::q_pow(4) - QRat::one()) / (QRat::q_pow(2) - QRat::one());
        assert_eq!(h.eval(&rat(3)).unwrap(), rat(10));
        assert!(QRat::q_pow(-1).eval(&rat(0)).is_err());
    }

    #[test]
    fn canonical_form() {
        let a = QRat::from_parts(ZPoly::from_coeffs_i64(&[2]), ZPoly::from_coeffs_i64(&[-4])).unwrap();
        assert_eq!(a, QRat::ratio(-1, 2));
        assert_eq!(a.denominator(), ZPoly::from_i64(2));
        let b = QRat::q_pow(-2) - QRat::one();
        assert_eq!(b.to_wire(), "(-q^2+1)/(q^2)");
        assert_eq!(QRat::zero().to_wire(), "(0)/(1)");
        assert!(QRat::zero().checked_div(&QRat::zero()).is_err());
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(1), QRat::one());
        assert_eq!(q_int(2), QRat::q() + QRat::q_pow(-1));
        assert_eq!(q_int(3), QRat::q_pow(2) + QRat::one() + QRat::q_pow(-2));
    }
}
