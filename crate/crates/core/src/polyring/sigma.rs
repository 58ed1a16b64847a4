use std::sync::Arc;

use super::ring::{CoefPoly, RingSpec, MAX_VARS};
use crate::error::{Error, Result};
use crate::qfield::QRat;

/// Ring automorphism given by variable images, stored together with its inverse.
#[derive(Clone, PartialEq, Debug)]
pub struct SigmaMap {
    ring: Arc<RingSpec>,
    forward: Vec<CoefPoly>,
    backward: Vec<CoefPoly>,
    diag: Option<Vec<i64>>,
}

impl SigmaMap {
    /// Build and check that the two maps are mutually inverse on every variable.
    pub fn new(ring: &Arc<RingSpec>, forward: Vec<CoefPoly>, backward: Vec<CoefPoly>) -> Result<Self> {
        let s = Self::new_unchecked(ring, forward, backward)?;
        if let Some(msg) = s.inverse_defect() {
            return Err(Error::InvalidSigma(msg));
        }
        Ok(s)
    }

    /// Build without the inverse check. Used for negative controls.
    pub fn new_unchecked(ring: &Arc<RingSpec>, forward: Vec<CoefPoly>, backward: Vec<CoefPoly>) -> Result<Self> {
        if forward.len() != ring.nvars() || backward.len() != ring.nvars() {
            return Err(Error::InvalidSigma("one image per variable required".into()));
        }
        for p in forward.iter().chain(&backward) {
            if p.ring() != ring {
                return Err(Error::RingMismatch("sigma image outside the ring".into()));
            }
        }
        let mut s = SigmaMap { ring: ring.clone(), forward, backward, diag: None };
        s.diag = s.detect_q_weights();
        Ok(s)
    }

    /// Parse images written as expressions in the ring's variables.
    pub fn parse(ring: &Arc<RingSpec>, forward: &[&str], backward: &[&str]) -> Result<Self> {
        let f = forward.iter().map(|s| CoefPoly::parse(ring, s)).collect::<Result<_>>()?;
        let b = backward.iter().map(|s| CoefPoly::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(ring, f, b)
    }

    /// Diagonal automorphism `v_i -> q^{a_i} v_i`.
    pub fn q_diagonal(ring: &Arc<RingSpec>, weights: &[i64]) -> Result<Self> {
        let mut f = Vec::new();
        let mut b = Vec::new();
        for (i, v) in ring.vars().iter().enumerate() {
            let x = CoefPoly::var(ring, v);
            f.push(x.scale(&QRat::q_pow(weights[i])));
            b.push(x.scale(&QRat::q_pow(-weights[i])));
        }
        Self::new(ring, f, b)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn forward(&self) -> &[CoefPoly] {
        &self.forward
    }

    pub fn backward(&self) -> &[CoefPoly] {
        &self.backward
    }

    /// The inverse automorphism.
    pub fn inverse(&self) -> SigmaMap {
        SigmaMap {
            ring: self.ring.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            diag: self.diag.as_ref().map(|w| w.iter().map(|a| -a).collect()),
        }
    }

    /// Description of the first variable not fixed by a round trip, if any.
    pub fn inverse_defect(&self) -> Option<String> {
        for (i, v) in self.ring.vars().iter().enumerate() {
            let x = CoefPoly::var(&self.ring, v);
            let fb = self.forward[i].substitute(&self.backward, &self.ring);
            let bf = self.backward[i].substitute(&self.forward, &self.ring);
            match (fb, bf) {
                (Ok(a), Ok(b)) if a == x && b == x => {}
                (Ok(a), Ok(b)) => {
                    return Some(format!("{v}: sigma^-1(sigma({v})) = {a}, sigma(sigma^-1({v})) = {b}"));
                }
                (Err(e), _) | (_, Err(e)) => return Some(format!("{v}: {e}")),
            }
        }
        None
    }

    /// `sigma^k(f)`.
    pub fn pow(&self, f: &CoefPoly, k: i64) -> Result<CoefPoly> {
        let imgs = if k >= 0 { &self.forward } else { &self.backward };
        if let Some(w) = &self.diag {
            return Ok(diagonal_pow(f, w, k));
        }
        let mut r = f.clone();
        for _ in 0..k.unsigned_abs() {
            r = r.substitute(imgs, &self.ring)?;
        }
        Ok(r)
    }

    pub fn apply(&self, f: &CoefPoly) -> Result<CoefPoly> {
        self.pow(f, 1)
    }

    pub fn apply_inv(&self, f: &CoefPoly) -> Result<CoefPoly> {
        self.pow(f, -1)
    }

    /// If every variable satisfies `sigma(v) = q^a v`, the weights `a`.
    pub fn q_weights(&self) -> Option<Vec<i64>> {
        self.diag.clone()
    }

    fn detect_q_weights(&self) -> Option<Vec<i64>> {
        let mut w = Vec::with_capacity(self.ring.nvars());
        for (i, p) in self.forward.iter().enumerate() {
            let (e, c) = p.as_monomial()?;
            let mut unit = [0; MAX_VARS];
            unit[i] = 1;
            if e != unit {
                return None;
            }
            w.push(c.as_q_power()?);
        }
        // the stored inverse must agree, otherwise the fast path would hide a defect
        for (i, p) in self.backward.iter().enumerate() {
            let (e, c) = p.as_monomial()?;
            let mut unit = [0; MAX_VARS];
            unit[i] = 1;
            if e != unit || c.as_q_power()? != -w[i] {
                return None;
            }
        }
        Some(w)
    }

    /// Coordinates of `sigma^k(m)` for the maximal ideal `m` with coordinates `p`:
    /// the value of each variable there is `sigma^{-k}(v)` evaluated at `p`.
    pub fn shift_point(&self, p: &[QRat], k: i64) -> Result<Vec<QRat>> {
        self.ring.vars().iter().map(|v| self.pow(&CoefPoly::var(&self.ring, v), -k)?.eval(p)).collect()
    }
}

fn diagonal_pow(f: &CoefPoly, w: &[i64], k: i64) -> CoefPoly {
    let terms = f.terms().map(|(e, c)| {
        let s: i64 = e.iter().zip(w).map(|(&x, &a)| x as i64 * a).sum();
        (*e, c.mul_q_pow(s * k))
    });
    CoefPoly::from_terms(f.ring(), terms).expect("exponents unchanged")
}

/// Integer zeros of `k -> sigma^k(f)(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitZeros {
    /// Vanishes for every `k`.
    All,
    /// Exactly these `k`, sorted.
    Finite(Vec<i64>),
}

impl OrbitZeros {
    pub fn contains(&self, k: i64) -> bool {
        match self {
            OrbitZeros::All => true,
            OrbitZeros::Finite(v) => v.binary_search(&k).is_ok(),
        }
    }

    /// Smallest zero in `[lo, hi]`.
    pub fn first_in(&self, lo: i64, hi: i64) -> Option<i64> {
        match self {
            OrbitZeros::All => (lo <= hi).then_some(lo),
            OrbitZeros::Finite(v) => v.iter().copied().find(|&k| k >= lo && k <= hi),
        }
    }
}

/// Decide exactly which `k` give `sigma^k(f)(p) = 0`.
///
/// Needs `sigma` of the form `v -> q^a v`. Then the value is
/// `sum_j A_j q^{k b_j}` with distinct `b_j`, and a zero forces the largest
/// `deg A_j + k b_j` to be attained twice, which leaves finitely many
/// candidates to test exactly.
pub fn orbit_zeros(sigma: &SigmaMap, f: &CoefPoly, p: &[QRat]) -> Result<OrbitZeros> {
    let w = sigma
        .q_weights()
        .ok_or_else(|| Error::HypothesisUnverified("orbit zero solving needs a q-diagonal sigma".into()))?;
    // sigma^k(f)(p) = sum over terms c p^e q^{k <e,w>}
    let mut groups: std::collections::BTreeMap<i64, QRat> = Default::default();
    for (e, c) in f.terms() {
        let b: i64 = e.iter().zip(&w).map(|(&x, &a)| x as i64 * a).sum();
        let mut v = c.clone();
        for (i, &x) in e.iter().enumerate().take(f.ring().nvars()) {
            if x != 0 {
                v = &v * &p[i].pow(x as i64)?;
            }
        }
        *groups.entry(b).or_default() += &v;
    }
    let groups: Vec<(i64, QRat)> = groups.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    if groups.is_empty() {
        return Ok(OrbitZeros::All);
    }
    let mut cands = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let (bi, ai) = (&groups[i].0, &groups[i].1);
            let (bj, aj) = (&groups[j].0, &groups[j].1);
            let num = aj.degree().unwrap() - ai.degree().unwrap();
            let den = bi - bj;
            if num % den == 0 {
                cands.push(num / den);
            }
        }
    }
    cands.sort_unstable();
    cands.dedup();
    let mut zeros = Vec::new();
    for k in cands {
        let v: QRat = groups.iter().map(|(b, a)| a.mul_q_pow(b * k)).sum();
        if v.is_zero() {
            zeros.push(k);
        }
    }
    Ok(OrbitZeros::Finite(zeros))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rea_ring() -> (Arc<RingSpec>, SigmaMap, CoefPoly) {
        let r = RingSpec::utd();
        let s = SigmaMap::q_diagonal(&r, &[2, 0, 0]).unwrap();
        let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2").unwrap();
        (r, s, z)
    }

    #[test]
    fn sigma_powers_of_z() {
        let (r, s, z) = rea_ring();
        for m in -6..=6i64 {
            let expect = CoefPoly::parse(&r, &format!("d + q^({})*t*u - q^({})*u^2", 2 * m - 2, 4 * m - 4)).unwrap();
            assert_eq!(s.pow(&z, m).unwrap(), expect);
        }
        assert_eq!(s.pow(&z, 0).unwrap(), z);
    }

    #[test]
    fn inverse_checked() {
        let r = RingSpec::utd();
        let bad = SigmaMap::parse(&r, &["q^2*u", "t", "d"], &["q^2*u", "t", "d"]);
        assert!(matches!(bad, Err(Error::InvalidSigma(_))));
    }

    #[test]
    fn affine_sigma_round_trip() {
        let r = RingSpec::new(&["u22", "u11", "z"], &[]).unwrap();
        let s = SigmaMap::parse(
            &r,
            &["q^2*u22", "u11 + (q^-2-1)*u22", "z + (q^-2-1)*u22*(u22-u11)"],
            &["q^-2*u22", "u11 + (q^-2-q^-4)*u22", "z - (q^-2-1)*q^-2*u22*(q^-4*u22-u11)"],
        );
        assert!(s.is_ok(), "{s:?}");
        assert!(s.unwrap().q_weights().is_none());
    }

    #[test]
    fn leaving_the_ring() {
        let r = RingSpec::new(&["u", "t"], &["u"]).unwrap();
        let s = SigmaMap::parse(&r, &["u+t", "t"], &["u-t", "t"]).unwrap();
        let f = CoefPoly::parse(&r, "u^-1").unwrap();
        assert!(matches!(s.pow(&f, 1), Err(Error::SubstitutionLeavesRing(_))));
        let g = CoefPoly::parse(&r, "u^2*t").unwrap();
        assert_eq!(s.pow(&g, -1).unwrap(), CoefPoly::parse(&r, "(u-t)^2*t").unwrap());
        assert!(CoefPoly::parse(&r, "t^-1").is_err());
    }

    #[test]
    fn orbit_zeros_of_z() {
        let (_, s, z) = rea_ring();
        // V_3(1): t0 = q^-6 + 1, d0 = -q^-6; sigma^{1-i}(z) vanishes at i = 0 and i = 3
        let p = vec![QRat::one(), QRat::q_pow(-6) + QRat::one(), -QRat::q_pow(-6)];
        assert_eq!(orbit_zeros(&s, &z, &p).unwrap(), OrbitZeros::Finite(vec![-2, 1]));
        let generic = vec![QRat::one(); 3];
        assert_eq!(orbit_zeros(&s, &z, &generic).unwrap(), OrbitZeros::Finite(vec![]));
        let zero_u = vec![QRat::zero(), QRat::one(), QRat::zero()];
        assert_eq!(orbit_zeros(&s, &z, &zero_u).unwrap(), OrbitZeros::All);
    }
}
