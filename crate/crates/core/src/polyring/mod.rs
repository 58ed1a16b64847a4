//! Commutative (Laurent) polynomial rings over `Q(q)`, automorphisms and ideal membership.

mod groebner;
mod ring;
mod sigma;

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

pub use groebner::GroebnerBasis;
pub use ring::{exps_add, CoefPoly, Exps, RingSpec, MAX_VARS};
pub use sigma::{orbit_zeros, OrbitZeros, SigmaMap};

use crate::error::{Error, Result};

static DEGREE_CAP: AtomicU32 = AtomicU32::new(40);

/// Total-degree cap applied to Gröbner computations.
pub fn degree_cap() -> u32 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: u32) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

/// Generators of an ideal of a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGens {
    ring: Arc<RingSpec>,
    generators: Vec<CoefPoly>,
}

/// Outcome of a membership query.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// `f = sum cofactors[i] * generators[i]` when `member`.
    pub cofactors: Option<Vec<CoefPoly>>,
}

impl IdealGens {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<RingSpec>, generators: Vec<CoefPoly>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("generator {g} is not in {ring}")));
            }
        }
        Ok(IdealGens { ring: ring.clone(), generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn parse(ring: &Arc<RingSpec>, gens: &[&str]) -> Result<Self> {
        Self::new(ring, gens.iter().map(|s| CoefPoly::parse(ring, s)).collect::<Result<_>>()?)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[CoefPoly] {
        &self.generators
    }

    pub fn groebner(&self) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(&self.ring, &self.generators, degree_cap(), false)
    }

    pub fn contains(&self, f: &CoefPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.contains(f))
    }
}

/// Decide `f ∈ I`, with cofactors on success.
pub fn ideal_member(f: &CoefPoly, ideal: &IdealGens) -> Result<Membership> {
    if f.ring() != ideal.ring() {
        return Err(Error::RingMismatch(format!("{f} is not in {}", ideal.ring())));
    }
    if f.is_zero() {
        let zeros = ideal.generators.iter().map(|g| CoefPoly::zero(g.ring())).collect();
        return Ok(Membership { member: true, cofactors: Some(zeros) });
    }
    let gb = GroebnerBasis::compute(&ideal.ring, &ideal.generators, degree_cap(), true)?;
    match gb.certificate(f) {
        Some(c) => Ok(Membership { member: true, cofactors: Some(c) }),
        None => Ok(Membership { member: false, cofactors: None }),
    }
}

/// True iff `<f, g>` is the unit ideal.
pub fn coprime_check(f: &CoefPoly, g: &CoefPoly) -> Result<bool> {
    let ideal = IdealGens::new(f.ring(), vec![f.clone(), g.clone()])?;
    Ok(ideal.groebner()?.is_unit_ideal())
}

/// True iff `f` and `g` have no common non-unit factor.
///
/// Decided by linear algebra: `a f = b g` with `deg a < deg g` and
/// `deg b < deg f` has a nonzero solution exactly when the gcd is non-trivial.
/// Monomial factors in invertible variables are units and are removed first.
pub fn gcd_is_one(f: &CoefPoly, g: &CoefPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Ok(f.unit_inverse().is_some() || g.unit_inverse().is_some());
    }
    let f = strip_unit_monomial(f);
    let g = strip_unit_monomial(g);
    let (df, dg) = (f.total_degree(), g.total_degree());
    if df == 0 || dg == 0 {
        return Ok(true);
    }
    let ring = f.ring().clone();
    let n = ring.nvars();
    let ma = monomials_up_to(n, dg - 1);
    let mb = monomials_up_to(n, df - 1);
    // columns: coefficients of a, then of b; rows: monomials of a f - b g
    let mut rows: std::collections::BTreeMap<Exps, usize> = Default::default();
    let mut entries: Vec<(Exps, usize, crate::qfield::QRat)> = Vec::new();
    for (j, m) in ma.iter().enumerate() {
        for (e, c) in f.terms() {
            entries.push((exps_add(e, m), j, c.clone()));
        }
    }
    for (j, m) in mb.iter().enumerate() {
        for (e, c) in g.terms() {
            entries.push((exps_add(e, m), ma.len() + j, -c));
        }
    }
    for (e, _, _) in &entries {
        let k = rows.len();
        rows.entry(*e).or_insert(k);
    }
    let mut mat = crate::qfield::QMatrix::zeros(rows.len(), ma.len() + mb.len());
    for (e, j, c) in entries {
        let i = rows[&e];
        let v = mat.get(i, j) + &c;
        mat.set(i, j, v);
    }
    Ok(mat.kernel_vectors().is_empty())
}

pub(crate) fn strip_unit_monomial(f: &CoefPoly) -> CoefPoly {
    let ring = f.ring();
    let mut shift = [0i32; MAX_VARS];
    for (i, s) in shift.iter_mut().enumerate().take(ring.nvars()) {
        if ring.is_invertible(i) {
            *s = -f.terms().map(|(e, _)| e[i]).min().unwrap_or(0);
        }
    }
    f.mul_term(&shift, &crate::qfield::QRat::one())
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: i32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = [0i32; MAX_VARS];
    fn rec(i: usize, n: usize, left: i32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == n {
            out.push(*cur);
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, n, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if d >= 0 {
        rec(0, n, d, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_membership_examples() {
        let r = RingSpec::new(&["u", "t", "d"], &["u"]).unwrap();
        let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2").unwrap();
        let sz = CoefPoly::parse(&r, "d + t*u - u^2").unwrap();
        let r1 = CoefPoly::parse(&r, "(q^2+1)^2*d + q^2*t^2").unwrap();
        let ideal = IdealGens::new(&r, vec![sz.clone(), z.clone()]).unwrap();
        let m = ideal_member(&r1, &ideal).unwrap();
        assert!(m.member);
        let c = m.cofactors.unwrap();
        assert_eq!(c[0].mul(&sz).add(&c[1].mul(&z)), r1);

        let p = RingSpec::utd();
        let td = IdealGens::parse(&p, &["t", "d"]).unwrap();
        assert!(!ideal_member(&CoefPoly::var(&p, "u"), &td).unwrap().member);
        assert!(ideal_member(&CoefPoly::zero(&p), &td).unwrap().member);
    }

    #[test]
    fn coprimality() {
        let r = RingSpec::utd();
        let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2").unwrap();
        let sz = CoefPoly::parse(&r, "d + t*u - u^2").unwrap();
        // z and sigma(z) share the zero u = d = 0 but no factor
        assert!(!coprime_check(&z, &sz).unwrap());
        assert!(gcd_is_one(&z, &sz).unwrap());
        assert!(!coprime_check(&z, &z).unwrap());
        assert!(!gcd_is_one(&z, &z).unwrap());
        let uz = z.mul(&CoefPoly::var(&r, "u"));
        assert!(!gcd_is_one(&uz, &sz.mul(&z)).unwrap());

        let l = RingSpec::new(&["u", "t"], &["u", "t"]).unwrap();
        let s1 = CoefPoly::parse(&l, "u - q^2/(q^4+1)*t").unwrap();
        let s2 = CoefPoly::parse(&l, "u - q^4/(q^4+1)*t").unwrap();
        assert!(coprime_check(&s1, &s2).unwrap());
        assert!(gcd_is_one(&s1, &s2).unwrap());
        let ut = CoefPoly::parse(&l, "u*t").unwrap();
        assert!(gcd_is_one(&ut.mul(&s1), &ut.mul(&s2)).unwrap());
    }
}
