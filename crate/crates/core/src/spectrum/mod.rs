//! Prime-spectrum machinery for the reflection equation algebra: the
//! elements `r_n`, `s^n_j`, `pi^n_m`, `z_n`, homogeneous ideal families,
//! the ideal `<x^n>`, and the strata `T1`, `T2`, `T3n`.

mod family;
mod strata;

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwa::GwaInstance;
use crate::polyring::{CoefPoly, IdealGens, RingSpec, SigmaMap, MAX_VARS};
use crate::qfield::QRat;
use crate::rea::rea_instance;
use crate::report::Report;

pub use family::{
    certificate_chain, family_conditions, ideal_includes, pi_certificates, saturate, validate_family, xn_ideal,
    HomIdealFamily, IdealKind,
};
pub use strata::{
    normal_separation_scan, pathologies, product_correspondence_check, product_correspondence_report, stratum_ideal,
    t1_ring, t2_ring, StratumDescriptor,
};

/// The algebras ideal families live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Algebra {
    /// `k[u,t,d][x,y; sigma, z]`.
    Rea,
    /// `k[u^±,t^±,d][x,y; sigma, z]`.
    Localized,
    /// `k[u,t][x,y; sigma, z_n]`, the quotient by `<r_n>`.
    Quotient { n: u32 },
    /// `k[u^±,t^±][x,y; sigma, z_n]`.
    Reduced { n: u32 },
}

impl Algebra {
    pub fn instance(&self) -> Result<Arc<GwaInstance>> {
        static CACHE: OnceLock<Mutex<HashMap<Algebra, Arc<GwaInstance>>>> = OnceLock::new();
        if *self == Algebra::Rea {
            return Ok(rea_instance());
        }
        let cache = CACHE.get_or_init(Default::default);
        if let Some(w) = cache.lock().unwrap().get(self) {
            return Ok(w.clone());
        }
        let w = match *self {
            Algebra::Rea => unreachable!(),
            Algebra::Localized => {
                let r = RingSpec::new(&["u", "t", "d"], &["u", "t"])?;
                let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2")?;
                GwaInstance::new(SigmaMap::q_diagonal(&r, &[2, 0, 0])?, z)?
            }
            Algebra::Quotient { n } => {
                check_n(n)?;
                let r = RingSpec::new(&["u", "t"], &[])?;
                GwaInstance::new(SigmaMap::q_diagonal(&r, &[2, 0])?, z_reduced(&r, n))?
            }
            Algebra::Reduced { n } => {
                check_n(n)?;
                let r = reduced_ring();
                GwaInstance::new(SigmaMap::q_diagonal(&r, &[2, 0])?, z_reduced(&r, n))?
            }
        };
        cache.lock().unwrap().insert(*self, w.clone());
        Ok(w)
    }

    pub fn ring(&self) -> Result<Arc<RingSpec>> {
        Ok(self.instance()?.ring().clone())
    }
}

impl std::fmt::Display for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algebra::Rea => write!(f, "A"),
            Algebra::Localized => write!(f, "A_ut"),
            Algebra::Quotient { n } => write!(f, "A/<r_{n}>"),
            Algebra::Reduced { n } => write!(f, "A_({n})"),
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDescriptor("n must be at least 1".into()));
    }
    Ok(())
}

/// `k[u^±, t^±]`.
pub fn reduced_ring() -> Arc<RingSpec> {
    static R: OnceLock<Arc<RingSpec>> = OnceLock::new();
    R.get_or_init(|| RingSpec::new(&["u", "t"], &["u", "t"]).expect("valid ring")).clone()
}

/// `k[t^±]`.
pub fn t_ring() -> Arc<RingSpec> {
    static R: OnceLock<Arc<RingSpec>> = OnceLock::new();
    R.get_or_init(|| RingSpec::new(&["t"], &["t"]).expect("valid ring")).clone()
}

fn exps(ring: &RingSpec, pairs: &[(&str, i32)]) -> [i32; MAX_VARS] {
    let mut e = [0; MAX_VARS];
    for (v, k) in pairs {
        e[ring.index_of(v).unwrap_or_else(|| panic!("no variable {v} in {ring}"))] = *k;
    }
    e
}

fn term(ring: &Arc<RingSpec>, pairs: &[(&str, i32)], c: QRat) -> CoefPoly {
    CoefPoly::monomial(ring, exps(ring, pairs), c)
}

/// `r_n = (q^2n + 1)^2 d + q^2n t^2`; the ring needs `t` and `d`.
pub fn r_elem(ring: &Arc<RingSpec>, n: i64) -> CoefPoly {
    let q2n = QRat::q_pow(2 * n);
    let a = &q2n + &QRat::one();
    term(ring, &[("d", 1)], &a * &a).add(&term(ring, &[("t", 2)], q2n))
}

/// The coefficient `q^2j / (q^2n + 1)` of `t` in `s^n_j`.
pub fn s_coeff(n: u32, j: i64) -> QRat {
    &QRat::q_pow(2 * j) / &(&QRat::q_pow(2 * n as i64) + &QRat::one())
}

/// `s^n_j = u - q^2j/(q^2n + 1) t`.
pub fn s_elem(ring: &Arc<RingSpec>, n: u32, j: i64) -> CoefPoly {
    term(ring, &[("u", 1)], QRat::one()).sub(&term(ring, &[("t", 1)], s_coeff(n, j)))
}

/// The index set `J^n_m`.
pub fn j_range(n: u32, m: i64) -> RangeInclusive<i64> {
    let n = n as i64;
    if m >= 0 {
        1..=n - m
    } else {
        -m + 1..=n
    }
}

/// `pi^n_m`, the product of `s^n_j` over `J^n_m`.
pub fn pi_elem(ring: &Arc<RingSpec>, n: u32, m: i64) -> CoefPoly {
    j_range(n, m).fold(CoefPoly::one(ring), |acc, j| acc.mul(&s_elem(ring, n, j)))
}

/// `z_n = -q^2n/(q^2n + 1)^2 t^2 + q^-2 u t - q^-4 u^2`.
pub fn z_reduced(ring: &Arc<RingSpec>, n: u32) -> CoefPoly {
    let q2n = QRat::q_pow(2 * n as i64);
    let a = &q2n + &QRat::one();
    let c = -(&q2n / &(&a * &a));
    term(ring, &[("t", 2)], c).add(&term(ring, &[("u", 1), ("t", 1)], QRat::q_pow(-2))).sub(&term(
        ring,
        &[("u", 2)],
        QRat::q_pow(-4),
    ))
}

/// `r_n` in `k[u,t,d]` together with `z_n`, `s^n_j` and `pi^n_m` in `k[u^±,t^±]`.
#[derive(Clone, Debug)]
pub struct SpecialElements {
    pub n: u32,
    pub r: CoefPoly,
    pub z: CoefPoly,
    /// `s_j` for `1 - n <= j <= n + 1`.
    pub s: BTreeMap<i64, CoefPoly>,
    /// `pi_m` for `-n <= m <= n`.
    pub pi: BTreeMap<i64, CoefPoly>,
}

pub fn special_elements(n: u32) -> Result<SpecialElements> {
    check_n(n)?;
    let rr = reduced_ring();
    let ni = n as i64;
    Ok(SpecialElements {
        n,
        r: r_elem(&RingSpec::utd(), ni),
        z: z_reduced(&rr, n),
        s: (1 - ni..=ni + 1).map(|j| (j, s_elem(&rr, n, j))).collect(),
        pi: (-ni..=ni).map(|m| (m, pi_elem(&rr, n, m))).collect(),
    })
}

/// `sigma^-1(s_j) = q^-2 s_{j+1}`, `sigma(z_n) = -s_n s_0`,
/// `sigma^i(z_n) = -q^(4i-4) s_{n-i+1} s_{1-i}`, and `z_n = z mod r_n`.
pub fn special_identities(n: u32) -> Result<Report> {
    let w = Algebra::Reduced { n }.instance()?;
    let rr = w.ring().clone();
    let ni = n as i64;
    let mut rep = Report::new();
    for j in -ni..=ni + 1 {
        let lhs = w.sigma_pow(&s_elem(&rr, n, j), -1)?;
        let rhs = s_elem(&rr, n, j + 1).scale(&QRat::q_pow(-2));
        rep.push(format!("sigma^-1(s_{j}) = q^-2 s_{}", j + 1), lhs == rhs, "");
    }
    let lhs = w.sigma_z(1)?;
    let rhs = s_elem(&rr, n, ni).mul(&s_elem(&rr, n, 0)).neg();
    rep.push("sigma(z_n) = -s_n s_0", lhs == rhs, "");
    for i in -ni..=ni + 1 {
        let lhs = w.sigma_z(i)?;
        let rhs = s_elem(&rr, n, ni - i + 1).mul(&s_elem(&rr, n, 1 - i)).scale(&-QRat::q_pow(4 * i - 4));
        rep.push(format!("sigma^{i}(z_n) = -q^{} s_{} s_{}", 4 * i - 4, ni - i + 1, 1 - i), lhs == rhs, "");
    }
    let utd = RingSpec::utd();
    let z = rea_instance().z().clone();
    let zn = z_reduced(&utd, n);
    let ok = IdealGens::new(&utd, vec![r_elem(&utd, ni)])?.contains(&z.sub(&zn))?;
    rep.push("z = z_n mod r_n", ok, "");
    for m in -ni - 1..=ni + 1 {
        let empty = j_range(n, m).is_empty();
        if m.abs() >= ni {
            rep.push(format!("pi_{m} = 1"), empty, "");
        }
    }
    Ok(rep)
}

fn laurent_instance() -> Result<Arc<GwaInstance>> {
    static W: OnceLock<Arc<GwaInstance>> = OnceLock::new();
    if let Some(w) = W.get() {
        return Ok(w.clone());
    }
    let r = RingSpec::new(&["u", "t", "d"], &["u"])?;
    let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2")?;
    let w = GwaInstance::new(SigmaMap::q_diagonal(&r, &[2, 0, 0])?, z)?;
    Ok(W.get_or_init(|| w).clone())
}

/// Whether `r = q^(2n+2)/(q^2n - 1) t u^-1 (sigma^n(z) - z) + (q^2n + 1)/(q^2n - 1) (q^4n z - sigma^n(z))`
/// holds exactly in `k[u^±,t,d]`; `r` must live in that ring or in `k[u,t,d]`.
pub fn rn_identity_holds(n: u32, r: &CoefPoly) -> Result<bool> {
    check_n(n)?;
    let w = laurent_instance()?;
    let ring = w.ring().clone();
    let r = r.to_ring(&ring)?;
    let ni = n as i64;
    let q2n = QRat::q_pow(2 * ni);
    let den = &q2n - &QRat::one();
    let z = w.z().clone();
    let szn = w.sigma_z(ni)?;
    let c1 = &QRat::q_pow(2 * ni + 2) / &den;
    let c2 = &(&q2n + &QRat::one()) / &den;
    let tu = term(&ring, &[("t", 1), ("u", -1)], c1);
    let rhs = tu.mul(&szn.sub(&z)).add(&z.scale(&QRat::q_pow(4 * ni)).sub(&szn).scale(&c2));
    Ok(rhs == r)
}

/// The identity for `r_n` itself.
pub fn rn_identity_check(n: u32) -> Result<bool> {
    rn_identity_holds(n, &r_elem(&RingSpec::utd(), n as i64))
}

/// `e_0 = prod (u - c_i t) / ((c_0 - c_i) t)` over nonzero `i` in `[l1 - l2, l2 - l1]`,
/// then `e_j = sigma^-j(e_0)` for `l1 <= j <= l2`.
pub fn crt_idempotents(n: u32, l1: i64, l2: i64) -> Result<BTreeMap<i64, CoefPoly>> {
    if l1 > l2 {
        return Err(Error::WindowEmpty);
    }
    let w = Algebra::Reduced { n }.instance()?;
    let rr = w.ring().clone();
    let c0 = s_coeff(n, 0);
    let mut e0 = CoefPoly::one(&rr);
    for i in l1 - l2..=l2 - l1 {
        if i == 0 {
            continue;
        }
        let scale = (&c0 - &s_coeff(n, i)).inv()?;
        e0 = e0.mul(&s_elem(&rr, n, i)).mul(&term(&rr, &[("t", -1)], scale));
    }
    (l1..=l2).map(|j| Ok((j, w.sigma_pow(&e0, -j)?))).collect()
}

/// The three defining properties of the idempotents for `l1..=l2`.
pub fn crt_check(n: u32, l1: i64, l2: i64) -> Result<Report> {
    let e = crt_idempotents(n, l1, l2)?;
    let rr = reduced_ring();
    let one = CoefPoly::one(&rr);
    let mut rep = Report::new();
    let s_ideal = |j: i64| IdealGens::new(&rr, vec![s_elem(&rr, n, j)]);
    for (&j, ej) in &e {
        rep.push(format!("e_{j} = 1 mod s_{j}"), s_ideal(j)?.contains(&ej.sub(&one))?, "");
        for i in l1..=l2 {
            if i != j {
                rep.push(format!("e_{j} = 0 mod s_{i}"), s_ideal(i)?.contains(ej)?, "");
            }
        }
    }
    let prod = (l1..=l2).fold(one.clone(), |acc, i| acc.mul(&s_elem(&rr, n, i)));
    let gb = IdealGens::new(&rr, vec![prod])?.groebner()?;
    let mut sum = CoefPoly::zero(&rr);
    for (&j, ej) in &e {
        sum = sum.add(ej);
        rep.push(format!("e_{j}^2 = e_{j} mod prod"), gb.contains(&ej.mul(ej).sub(ej)), "");
        for (&i, ei) in e.range(j + 1..) {
            rep.push(format!("e_{i} e_{j} = 0 mod prod"), gb.contains(&ei.mul(ej)), "");
        }
    }
    rep.push("sum e_j = 1 mod prod", gb.contains(&sum.sub(&one)), "");
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_matches_closed_form() {
        let r = RingSpec::utd();
        assert_eq!(r_elem(&r, 1), CoefPoly::parse(&r, "(q^2+1)^2*d + q^2*t^2").unwrap());
    }

    #[test]
    fn index_sets() {
        assert_eq!(j_range(3, 2), 1..=1);
        assert_eq!(j_range(3, 0), 1..=3);
        assert_eq!(j_range(3, -1), 2..=3);
        assert!(j_range(3, 3).is_empty() && j_range(3, -3).is_empty() && j_range(3, 5).is_empty());
        let rr = reduced_ring();
        assert!(pi_elem(&rr, 2, 2).is_one() && pi_elem(&rr, 2, -2).is_one());
        assert_eq!(pi_elem(&rr, 2, 0), s_elem(&rr, 2, 1).mul(&s_elem(&rr, 2, 2)));
    }

    #[test]
    fn s_and_z_identities() {
        for n in 1..=3 {
            let rep = special_identities(n).unwrap();
            assert!(rep.all_passed(), "{rep}");
        }
    }

    #[test]
    fn rn_identity_and_control() {
        for n in 1..=4 {
            assert!(rn_identity_check(n).unwrap());
        }
        let r = RingSpec::utd();
        let bad = r_elem(&r, 2).add(&CoefPoly::parse(&r, "d").unwrap());
        assert!(!rn_identity_holds(2, &bad).unwrap());
        assert!(!rn_identity_holds(1, &r_elem(&r, 2)).unwrap());
    }

    #[test]
    fn crt_small() {
        let rep = crt_check(2, 1, 2).unwrap();
        assert!(rep.all_passed(), "{rep}");
        let e = crt_idempotents(3, 1, 3).unwrap();
        let w = Algebra::Reduced { n: 3 }.instance().unwrap();
        assert_eq!(w.sigma_pow(&e[&1], -1).unwrap(), e[&2]);
    }
}
