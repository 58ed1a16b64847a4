//! Simple `U_q(sl_2)`-modules and their pullbacks along `psi_alpha`.

use crate::error::{Error, Result};
use crate::expr::ExprValue;
use crate::qfield::{q_int, QMatrix, QRat};
use crate::rea::{rea_instance, relation_words};
use crate::report::Report;
use crate::repr::{classify, is_simple, Classification, WeightModule};

/// Action matrices of `E`, `F`, `K`, `K^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UqModule {
    pub e: QMatrix,
    pub f: QMatrix,
    pub k: QMatrix,
    pub kinv: QMatrix,
}

impl UqModule {
    pub fn dim(&self) -> usize {
        self.k.rows()
    }

    pub fn relation_report(&self) -> Result<Report> {
        let n = self.dim();
        let (e, f, k, ki) = (&self.e, &self.f, &self.k, &self.kinv);
        let q2 = QRat::q_pow(2);
        let mut rep = Report::new();
        rep.push("K K^-1 = 1", k.mul(ki)? == QMatrix::identity(n), "");
        rep.push("K E = q^2 E K", k.mul(e)? == e.mul(k)?.scale(&q2), "");
        rep.push("K F = q^-2 F K", k.mul(f)? == f.mul(k)?.scale(&q2.inv()?), "");
        let lhs = e.mul(f)?.sub(&f.mul(e)?)?;
        let rhs = k.sub(ki)?.scale(&(QRat::q() - QRat::q_pow(-1)).inv()?);
        rep.push("EF - FE = (K - K^-1)/(q - q^-1)", lhs == rhs, "");
        Ok(rep)
    }
}

/// The `n`-dimensional simple module of highest weight `q^{n-1}`:
/// `K m_p = q^{n-1-2p} m_p`, `F m_p = m_{p+1}`, `E m_p = [p][n-p] m_{p-1}`.
pub fn uqsl2_module(n: usize) -> Result<UqModule> {
    if n == 0 {
        return Err(Error::Shape("dimension must be positive".into()));
    }
    let mut e = QMatrix::zeros(n, n);
    let mut f = QMatrix::zeros(n, n);
    let mut kd = Vec::with_capacity(n);
    for p in 0..n {
        kd.push(QRat::q_pow(n as i64 - 1 - 2 * p as i64));
        if p + 1 < n {
            f.set(p + 1, p, QRat::one());
        }
        if p > 0 {
            e.set(p - 1, p, &q_int(p as i64) * &q_int((n - p) as i64));
        }
    }
    let kinv: Vec<QRat> = kd.iter().map(|c| c.inv()).collect::<Result<_>>()?;
    let m = UqModule { e, f, k: QMatrix::diag(&kd), kinv: QMatrix::diag(&kinv) };
    let rep = m.relation_report()?;
    if let Some(c) = rep.failures().next() {
        return Err(Error::RelationFailure(c.name.clone()));
    }
    Ok(m)
}

struct Mat(QMatrix);

impl ExprValue for Mat {
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(Mat(self.0.add(&o.0)?))
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(Mat(self.0.sub(&o.0)?))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Mat(self.0.mul(&o.0)?))
    }
    fn neg(&self) -> Result<Self> {
        Ok(Mat(self.0.scale(&-QRat::one())))
    }
    fn div(&self, o: &Self, _pos: usize) -> Result<Self> {
        Ok(Mat(self.0.mul(&o.0.inverse()?)?))
    }
    fn pow(&self, k: i64, _pos: usize) -> Result<Self> {
        let base = if k < 0 { self.0.inverse()? } else { self.0.clone() };
        Ok(Mat(base.pow(k.unsigned_abs() as u32)?))
    }
}

/// Images of `u11, u12, u21, u22` under `psi_alpha`.
pub fn psi_images(alpha: &QRat, m: &UqModule) -> Result<[QMatrix; 4]> {
    if alpha.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c = &(&QRat::q_pow(-1) * &(QRat::q() - QRat::q_pow(-1)).pow(2)?) * alpha;
    let u11 = m.e.mul(&m.f)?.scale(&c).add(&m.kinv.scale(alpha))?;
    let u12 = m.e.scale(alpha);
    let u21 = m.k.mul(&m.f)?.scale(&c);
    let u22 = m.k.scale(alpha);
    Ok([u11, u12, u21, u22])
}

/// Check the six defining relations on matrices assigned to `u11, u12, u21, u22`.
pub fn matrix_relations(images: &[QMatrix; 4]) -> Result<Report> {
    let n = images[0].rows();
    let mut rep = Report::new();
    for (name, w) in relation_words() {
        let v = w.expr().eval(&|i| Mat(QMatrix::scalar(n, &QRat::from_bigint(i.clone()))), &|id, pos| match id {
            "u11" => Ok(Mat(images[0].clone())),
            "u12" => Ok(Mat(images[1].clone())),
            "u21" => Ok(Mat(images[2].clone())),
            "u22" => Ok(Mat(images[3].clone())),
            "q" => Ok(Mat(QMatrix::scalar(n, &QRat::q()))),
            _ => Err(Error::Parse { pos, msg: format!("unexpected identifier '{id}'") }),
        })?;
        rep.push(name, v.0.is_zero(), "");
    }
    Ok(rep)
}

/// The pullback of `m` along `psi_alpha`, in GWA coordinates
/// `u = u22`, `t = u11 + q^-2 u22`, `d = u12 u21 - q^-2 u11 u22`, `x = u21`, `y = u12`.
pub fn psi_alpha(alpha: &QRat, m: &UqModule) -> Result<WeightModule> {
    let imgs = psi_images(alpha, m)?;
    let rep = matrix_relations(&imgs)?;
    if let Some(c) = rep.failures().next() {
        return Err(Error::RelationFailure(c.name.clone()));
    }
    let [u11, u12, u21, u22] = imgs;
    let q2 = QRat::q_pow(-2);
    let t = u11.add(&u22.scale(&q2))?;
    let d = u12.mul(&u21)?.sub(&u11.mul(&u22)?.scale(&q2))?;
    WeightModule::new(&rea_instance(), vec![u22, t, d], u21, u12)
}

/// `psi_alpha(alpha, V(n-1,+))` is simple with classification `(n, alpha q^{n-1})`.
pub fn pullback_matches(alpha: &QRat, n: usize) -> Result<(bool, Classification)> {
    let m = psi_alpha(alpha, &uqsl2_module(n)?)?;
    let c = classify(&m)?;
    let ok = is_simple(&m)? && c.dim == n && *c.u0() == alpha * &QRat::q_pow(n as i64 - 1);
    Ok((ok, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_modules() {
        let m1 = uqsl2_module(1).unwrap();
        assert!(m1.e.is_zero() && m1.f.is_zero());
        assert_eq!(m1.k, QMatrix::identity(1));
        let m2 = uqsl2_module(2).unwrap();
        assert_eq!(m2.k.diagonal(), vec![QRat::q(), QRat::q_pow(-1)]);
        let m5 = uqsl2_module(5).unwrap();
        assert_eq!(m5.k.diagonal(), (0..5).map(|p| QRat::q_pow(4 - 2 * p)).collect::<Vec<_>>());
    }

    #[test]
    fn pullbacks() {
        let w = psi_alpha(&QRat::from_int(7), &uqsl2_module(1).unwrap()).unwrap();
        assert_eq!(w.ring_action("u").unwrap(), &QMatrix::scalar(1, &QRat::from_int(7)));
        assert!(w.y().is_zero());
        assert_eq!(w, crate::repr::vn_module(1, QRat::from_int(7)).unwrap());

        let w = psi_alpha(&QRat::one(), &uqsl2_module(2).unwrap()).unwrap();
        assert_eq!(w.ring_action("u").unwrap().diagonal(), vec![QRat::q(), QRat::q_pow(-1)]);

        let (ok, c) = pullback_matches(&QRat::one(), 3).unwrap();
        assert!(ok);
        assert_eq!((c.dim, c.u0().clone()), (3, QRat::q_pow(2)));
        let (ok, c) = pullback_matches(&QRat::q(), 1).unwrap();
        assert!(ok && *c.u0() == QRat::q());
        let (ok, c) = pullback_matches(&QRat::from_int(2), 4).unwrap();
        assert!(ok && *c.u0() == QRat::monomial(2, 3));
    }
}
