use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaInstance};
use crate::polyring::CoefPoly;
use crate::qfield::{QMatrix, QRat};
use crate::report::Report;

/// The maximal ideal of the coefficient ring at a rational point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<QRat>);

impl Weight {
    /// The point `(u0, t0, d0)` of `k[u,t,d]`.
    pub fn utd(u0: QRat, t0: QRat, d0: QRat) -> Self {
        Weight(vec![u0, t0, d0])
    }

    /// Lowest weight of `V_n(u0)`: `t0 = (q^-2n + 1) u0`, `d0 = -q^-2n u0^2`.
    pub fn vn(n: u32, u0: QRat) -> Self {
        let s = QRat::q_pow(-2 * n as i64);
        let t0 = &(&s + &QRat::one()) * &u0;
        let d0 = -(&(&s * &u0) * &u0);
        Weight::utd(u0, t0, d0)
    }

    pub fn coords(&self) -> &[QRat] {
        &self.0
    }

    /// First coordinate; `u0` for the reflection equation algebra.
    pub fn u0(&self) -> &QRat {
        &self.0[0]
    }

    /// The weight `sigma^k(m)`.
    pub fn shifted(&self, inst: &GwaInstance, k: i64) -> Result<Weight> {
        Ok(Weight(inst.sigma().shift_point(&self.0, k)?))
    }

    pub fn eval(&self, f: &CoefPoly) -> Result<QRat> {
        f.eval(&self.0)
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A finite-dimensional module given by the action matrices of the ring
/// variables, `x` and `y` (acting on column vectors).
#[derive(Clone, Debug)]
pub struct WeightModule {
    inst: Arc<GwaInstance>,
    ring: Vec<QMatrix>,
    x: QMatrix,
    y: QMatrix,
}

impl PartialEq for WeightModule {
    fn eq(&self, o: &Self) -> bool {
        self.inst == o.inst && self.ring == o.ring && self.x == o.x && self.y == o.y
    }
}

impl WeightModule {
    /// Checks shapes and every defining relation of the algebra.
    pub fn new(inst: &Arc<GwaInstance>, ring: Vec<QMatrix>, x: QMatrix, y: QMatrix) -> Result<Self> {
        let n = x.rows();
        if ring.len() != inst.ring().nvars() {
            return Err(Error::Shape(format!("{} ring matrices for {} variables", ring.len(), inst.ring().nvars())));
        }
        if ring.iter().chain([&x, &y]).any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("action matrices must all be n x n".into()));
        }
        let m = WeightModule { inst: inst.clone(), ring, x, y };
        let rep = m.relation_report()?;
        if let Some(f) = rep.failures().next() {
            return Err(Error::RelationFailure(f.name.clone()));
        }
        Ok(m)
    }

    /// The chain module on `e_lo..e_hi` with weights `sigma^i(m)`,
    /// `x e_i = e_{i+1}`, `y e_i = sigma^{1-i}(z)(m) e_{i-1}`.
    pub(crate) fn chain(inst: &Arc<GwaInstance>, w: &Weight, lo: i64, hi: i64) -> Result<Self> {
        let dim = (hi - lo + 1) as usize;
        let nv = inst.ring().nvars();
        let mut diag = vec![Vec::with_capacity(dim); nv];
        for i in lo..=hi {
            let p = w.shifted(inst, i)?;
            for (k, c) in p.0.into_iter().enumerate() {
                diag[k].push(c);
            }
        }
        let mut x = QMatrix::zeros(dim, dim);
        let mut y = QMatrix::zeros(dim, dim);
        for i in lo..hi {
            let c = (i - lo) as usize;
            x.set(c + 1, c, QRat::one());
            let lam = w.eval(&inst.sigma_z(-i)?)?;
            y.set(c, c + 1, lam);
        }
        let ring = diag.iter().map(|d| QMatrix::diag(d)).collect();
        Self::new(inst, ring, x, y)
    }

    pub fn instance(&self) -> &Arc<GwaInstance> {
        &self.inst
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn ring_actions(&self) -> &[QMatrix] {
        &self.ring
    }

    pub fn ring_action(&self, name: &str) -> Option<&QMatrix> {
        self.inst.ring().index_of(name).map(|i| &self.ring[i])
    }

    pub fn x(&self) -> &QMatrix {
        &self.x
    }

    pub fn y(&self) -> &QMatrix {
        &self.y
    }

    /// Ring matrices, then `x`, then `y`.
    pub fn generators(&self) -> Vec<&QMatrix> {
        self.ring.iter().chain([&self.x, &self.y]).collect()
    }

    fn ring_is_diagonal(&self) -> bool {
        self.ring.iter().all(|m| m.is_diagonal())
    }

    /// Action of a coefficient-ring element.
    pub fn poly_action(&self, f: &CoefPoly) -> Result<QMatrix> {
        let n = self.dim();
        if self.ring_is_diagonal() {
            let mut d = Vec::with_capacity(n);
            for i in 0..n {
                let p: Vec<QRat> = self.ring.iter().map(|m| m.get(i, i).clone()).collect();
                d.push(f.eval(&p)?);
            }
            return Ok(QMatrix::diag(&d));
        }
        let mut acc = QMatrix::zeros(n, n);
        for (e, c) in f.terms() {
            let mut t = QMatrix::scalar(n, c);
            for (k, &a) in e.iter().enumerate().take(self.ring.len()) {
                let base = if a < 0 { self.ring[k].inverse()? } else { self.ring[k].clone() };
                t = t.mul(&base.pow(a.unsigned_abs())?)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Action of an algebra element.
    pub fn elem_action(&self, a: &GwaElem) -> Result<QMatrix> {
        let n = self.dim();
        let mut acc = QMatrix::zeros(n, n);
        for (m, c) in a.components() {
            let base = if *m >= 0 { self.x.pow(*m as u32)? } else { self.y.pow(m.unsigned_abs() as u32)? };
            acc = acc.add(&self.poly_action(c)?.mul(&base)?)?;
        }
        Ok(acc)
    }

    /// Commutation of the ring matrices and the GWA relations as matrix identities.
    pub fn relation_report(&self) -> Result<Report> {
        let mut rep = Report::new();
        let vars = self.inst.ring().vars();
        for i in 0..self.ring.len() {
            for j in i + 1..self.ring.len() {
                let c = self.ring[i].mul(&self.ring[j])?.sub(&self.ring[j].mul(&self.ring[i])?)?;
                rep.push(format!("[{}, {}] = 0", vars[i], vars[j]), c.is_zero(), "");
            }
        }
        let sigma = self.inst.sigma();
        for (i, v) in vars.iter().enumerate() {
            let r = CoefPoly::var(self.inst.ring(), v);
            let lhs = self.x.mul(&self.ring[i])?;
            let rhs = self.poly_action(&sigma.apply(&r)?)?.mul(&self.x)?;
            rep.push(format!("x {v} = sigma({v}) x"), lhs == rhs, "");
            let lhs = self.y.mul(&self.ring[i])?;
            let rhs = self.poly_action(&sigma.apply_inv(&r)?)?.mul(&self.y)?;
            rep.push(format!("y {v} = sigma^-1({v}) y"), lhs == rhs, "");
        }
        let yx = self.y.mul(&self.x)?;
        rep.push("yx = z", yx == self.poly_action(self.inst.z())?, "");
        let xy = self.x.mul(&self.y)?;
        rep.push("xy = sigma(z)", xy == self.poly_action(&self.inst.sigma_z(1)?)?, "");
        Ok(rep)
    }

    pub fn direct_sum(&self, o: &WeightModule) -> Result<WeightModule> {
        if self.inst != o.inst {
            return Err(Error::RingMismatch("modules over different algebras".into()));
        }
        Ok(WeightModule {
            inst: self.inst.clone(),
            ring: self.ring.iter().zip(&o.ring).map(|(a, b)| a.direct_sum(b)).collect(),
            x: self.x.direct_sum(&o.x),
            y: self.y.direct_sum(&o.y),
        })
    }

    /// The action on an invariant subspace, in the given basis.
    pub fn restrict(&self, basis: &[Vec<QRat>]) -> Result<WeightModule> {
        let n = self.dim();
        let k = basis.len();
        let mut b = QMatrix::zeros(n, k);
        for (j, v) in basis.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                b.set(i, j, c.clone());
            }
        }
        let sub = |a: &QMatrix| -> Result<QMatrix> {
            let mut out = QMatrix::zeros(k, k);
            for (j, v) in basis.iter().enumerate() {
                let img = a.mul_vec(v);
                let c = b.solve(&img).ok_or_else(|| Error::Shape("subspace is not invariant".into()))?;
                for (i, ci) in c.into_iter().enumerate() {
                    out.set(i, j, ci);
                }
            }
            Ok(out)
        };
        Ok(WeightModule {
            inst: self.inst.clone(),
            ring: self.ring.iter().map(&sub).collect::<Result<_>>()?,
            x: sub(&self.x)?,
            y: sub(&self.y)?,
        })
    }
}
