use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::GwaInstance;
use crate::error::{Error, Result};
use crate::polyring::CoefPoly;
use crate::qfield::QRat;

/// `sum_m a_m v_m`, with `v_m = x^m` for `m >= 0` and `y^{-m}` otherwise.
#[derive(Clone)]
pub struct GwaElem {
    inst: Arc<GwaInstance>,
    comps: BTreeMap<i64, CoefPoly>,
}

impl PartialEq for GwaElem {
    fn eq(&self, o: &Self) -> bool {
        self.inst == o.inst && self.comps == o.comps
    }
}

impl fmt::Debug for GwaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GwaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, a) in self.comps.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis = match *m {
                0 => String::new(),
                1 => "x".into(),
                -1 => "y".into(),
                k if k > 0 => format!("x^{k}"),
                k => format!("y^{}", -k),
            };
            match (basis.is_empty(), a.is_one()) {
                (true, _) => write!(f, "({a})")?,
                (false, true) => write!(f, "{basis}")?,
                (false, false) => write!(f, "({a})*{basis}")?,
            }
        }
        Ok(())
    }
}

impl GwaElem {
    pub fn zero(inst: &Arc<GwaInstance>) -> Self {
        GwaElem { inst: inst.clone(), comps: BTreeMap::new() }
    }

    pub fn one(inst: &Arc<GwaInstance>) -> Self {
        Self::ring(inst, CoefPoly::one(inst.ring()))
    }

    /// `a * v_m`.
    pub fn term(inst: &Arc<GwaInstance>, a: CoefPoly, m: i64) -> Self {
        let mut comps = BTreeMap::new();
        if !a.is_zero() {
            comps.insert(m, a);
        }
        GwaElem { inst: inst.clone(), comps }
    }

    pub fn ring(inst: &Arc<GwaInstance>, a: CoefPoly) -> Self {
        Self::term(inst, a, 0)
    }

    pub fn scalar(inst: &Arc<GwaInstance>, c: QRat) -> Self {
        Self::ring(inst, CoefPoly::constant(inst.ring(), c))
    }

    /// A ring variable as an element.
    pub fn var(inst: &Arc<GwaInstance>, name: &str) -> Self {
        Self::ring(inst, CoefPoly::var(inst.ring(), name))
    }

    pub fn v(inst: &Arc<GwaInstance>, m: i64) -> Self {
        Self::term(inst, CoefPoly::one(inst.ring()), m)
    }

    pub fn x(inst: &Arc<GwaInstance>) -> Self {
        Self::v(inst, 1)
    }

    pub fn y(inst: &Arc<GwaInstance>) -> Self {
        Self::v(inst, -1)
    }

    /// Components must lie in the instance ring; zeros are dropped.
    pub fn from_components(inst: &Arc<GwaInstance>, comps: impl IntoIterator<Item = (i64, CoefPoly)>) -> Result<Self> {
        let mut out = Self::zero(inst);
        for (m, a) in comps {
            if a.ring() != inst.ring() {
                return Err(Error::RingMismatch(format!("component {a} is not in {}", inst.ring())));
            }
            out.add_at(m, &a);
        }
        Ok(out)
    }

    pub fn instance(&self) -> &Arc<GwaInstance> {
        &self.inst
    }

    pub fn components(&self) -> &BTreeMap<i64, CoefPoly> {
        &self.comps
    }

    pub fn component(&self, m: i64) -> CoefPoly {
        self.comps.get(&m).cloned().unwrap_or_else(|| CoefPoly::zero(self.inst.ring()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The ring element, if only `v_0` occurs.
    pub fn as_ring(&self) -> Option<CoefPoly> {
        match self.comps.len() {
            0 => Some(CoefPoly::zero(self.inst.ring())),
            1 => self.comps.get(&0).cloned(),
            _ => None,
        }
    }

    /// Lowest and highest occurring degree.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.comps.keys().next()?, *self.comps.keys().next_back()?))
    }

    fn add_at(&mut self, m: i64, a: &CoefPoly) {
        if a.is_zero() {
            return;
        }
        let s = match self.comps.get(&m) {
            Some(b) => b.add(a),
            None => a.clone(),
        };
        if s.is_zero() {
            self.comps.remove(&m);
        } else {
            self.comps.insert(m, s);
        }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.inst == o.inst {
            Ok(())
        } else {
            Err(Error::RingMismatch("elements of different algebras".into()))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (m, a) in &o.comps {
            out.add_at(*m, a);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GwaElem { inst: self.inst.clone(), comps: self.comps.iter().map(|(m, a)| (*m, a.neg())).collect() }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.inst);
        }
        GwaElem { inst: self.inst.clone(), comps: self.comps.iter().map(|(m, a)| (*m, a.scale(c))).collect() }
    }

    /// `r * self` for `r` in the coefficient ring.
    pub fn left_ring_mul(&self, r: &CoefPoly) -> Self {
        let mut out = Self::zero(&self.inst);
        for (m, a) in &self.comps {
            out.add_at(*m, &r.mul(a));
        }
        out
    }

    /// `(ab)_k = sum_{n+m=k} a_n sigma^n(b_m) [[n,m]]`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = Self::zero(&self.inst);
        for (n, a) in &self.comps {
            for (m, b) in &o.comps {
                let sb = self.inst.sigma_pow(b, *n)?;
                let c = a.mul(&sb).mul(&self.inst.zz(*n, *m)?);
                out.add_at(n + m, &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.inst);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Apply `f` to every coefficient and keep degrees, re-homing into `inst`.
    pub fn map_coeffs(&self, inst: &Arc<GwaInstance>, f: impl Fn(i64, &CoefPoly) -> Result<CoefPoly>) -> Result<Self> {
        let mut out = Self::zero(inst);
        for (m, a) in &self.comps {
            out.add_at(*m, &f(*m, a)?);
        }
        Ok(out)
    }

    /// Send each term `a v_m` to `f(m, a) = (k, b)`, read as `b v_k` in `inst`.
    pub fn map_terms(
        &self,
        inst: &Arc<GwaInstance>,
        f: impl Fn(i64, &CoefPoly) -> Result<(i64, CoefPoly)>,
    ) -> Result<Self> {
        let mut out = Self::zero(inst);
        for (m, a) in &self.comps {
            let (k, b) = f(*m, a)?;
            if b.ring() != inst.ring() {
                return Err(Error::RingMismatch(format!("{b} is not in {}", inst.ring())));
            }
            out.add_at(k, &b);
        }
        Ok(out)
    }
}

impl crate::expr::ExprValue for GwaElem {
    fn add(&self, o: &Self) -> Result<Self> {
        GwaElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        GwaElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        GwaElem::mul(self, o)
    }
    fn neg(&self) -> Result<Self> {
        Ok(GwaElem::neg(self))
    }
    fn div(&self, o: &Self, pos: usize) -> Result<Self> {
        match o.as_ring().and_then(|r| r.unit_inverse()) {
            Some(inv) => Ok(self.map_coeffs(&self.inst, |_, a| Ok(a.mul(&inv)))?),
            None => Err(Error::Parse { pos, msg: "division by a non-unit".into() }),
        }
    }
    fn pow(&self, k: i64, pos: usize) -> Result<Self> {
        if k >= 0 {
            return GwaElem::pow(self, k as u32);
        }
        match self.as_ring().map(|r| r.pow_i(k)) {
            Some(Ok(r)) => Ok(GwaElem::ring(&self.inst, r)),
            _ => Err(Error::Parse { pos, msg: "negative power of a non-unit".into() }),
        }
    }
}
