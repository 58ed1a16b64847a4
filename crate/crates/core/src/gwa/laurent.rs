use std::collections::BTreeMap;
use std::sync::Arc;

use super::{GwaElem, GwaInstance};
use crate::error::Result;
use crate::polyring::CoefPoly;

/// Which embedding into `R[x^±; sigma]` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentVariant {
    /// `x -> x`, `y -> z x^{-1}`.
    YToZxInv,
    /// `x -> x z`, `y -> x^{-1}`.
    XToXz,
}

/// An element `sum_m a_m x^m` of the skew-Laurent ring `R[x^±; sigma]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewLaurent {
    inst: Arc<GwaInstance>,
    comps: BTreeMap<i64, CoefPoly>,
}

impl SkewLaurent {
    pub fn zero(inst: &Arc<GwaInstance>) -> Self {
        SkewLaurent { inst: inst.clone(), comps: BTreeMap::new() }
    }

    pub fn term(inst: &Arc<GwaInstance>, a: CoefPoly, m: i64) -> Self {
        let mut s = Self::zero(inst);
        s.add_at(m, &a);
        s
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

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, a) in &o.comps {
            out.add_at(*m, a);
        }
        out
    }

    /// `(a x^n)(b x^m) = a sigma^n(b) x^{n+m}`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = Self::zero(&self.inst);
        for (n, a) in &self.comps {
            for (m, b) in &o.comps {
                out.add_at(n + m, &a.mul(&self.inst.sigma_pow(b, *n)?));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::term(&self.inst, CoefPoly::one(self.inst.ring()), 0);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Image of `a` under the chosen embedding into `R[x^±; sigma]`.
pub fn to_skew_laurent(a: &GwaElem, variant: LaurentVariant) -> Result<SkewLaurent> {
    let inst = a.instance();
    let one = CoefPoly::one(inst.ring());
    let z = inst.z().clone();
    let (xi, yi) = match variant {
        LaurentVariant::YToZxInv => (SkewLaurent::term(inst, one.clone(), 1), SkewLaurent::term(inst, z, -1)),
        LaurentVariant::XToXz => {
            // x z = sigma(z) x
            (SkewLaurent::term(inst, inst.sigma_z(1)?, 1), SkewLaurent::term(inst, one.clone(), -1))
        }
    };
    let mut out = SkewLaurent::zero(inst);
    for (m, c) in a.components() {
        let base = if *m >= 0 { xi.pow(*m as u32)? } else { yi.pow(m.unsigned_abs() as u32)? };
        out = out.add(&SkewLaurent::term(inst, c.clone(), 0).mul(&base)?);
    }
    Ok(out)
}
