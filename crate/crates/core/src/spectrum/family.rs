use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{pi_elem, r_elem, Algebra};
use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaInstance};
use crate::polyring::{degree_cap, ideal_member, strip_unit_monomial, CoefPoly, GroebnerBasis, IdealGens};
use crate::report::Report;

/// Which multiplications an ideal family must be closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Right,
    Left,
    Twosided,
}

impl IdealKind {
    fn right(self) -> bool {
        self != IdealKind::Left
    }

    fn left(self) -> bool {
        self != IdealKind::Right
    }
}

/// A homogeneous ideal `⊕ I_m v_m` recorded on a window `[lo, hi]`;
/// outside the window `I_m` is taken to be `I_lo` or `I_hi`.
#[derive(Clone, Debug)]
pub struct HomIdealFamily {
    algebra: Algebra,
    inst: Arc<GwaInstance>,
    lo: i64,
    hi: i64,
    gens: BTreeMap<i64, Vec<CoefPoly>>,
    stable_lo: bool,
    stable_hi: bool,
}

impl PartialEq for HomIdealFamily {
    /// Structural equality of the recorded generators.
    fn eq(&self, o: &Self) -> bool {
        self.algebra == o.algebra && self.lo == o.lo && self.hi == o.hi && self.gens == o.gens
    }
}

fn groebner(ring: &Arc<crate::polyring::RingSpec>, gens: &[CoefPoly]) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(ring, gens, degree_cap(), false)
}

pub(crate) fn same_ideal(ring: &Arc<crate::polyring::RingSpec>, a: &[CoefPoly], b: &[CoefPoly]) -> Result<bool> {
    let ga = groebner(ring, a)?;
    let gb = groebner(ring, b)?;
    Ok(a.iter().all(|f| gb.contains(f)) && b.iter().all(|f| ga.contains(f)))
}

impl HomIdealFamily {
    /// Generators are moved into the algebra's ring; degrees missing from
    /// `gens` get the zero ideal.
    pub fn new(algebra: Algebra, lo: i64, hi: i64, gens: BTreeMap<i64, Vec<CoefPoly>>) -> Result<Self> {
        if lo > hi {
            return Err(Error::WindowEmpty);
        }
        if let Some(m) = gens.keys().find(|m| !(lo..=hi).contains(*m)) {
            return Err(Error::Shape(format!("degree {m} outside window [{lo}, {hi}]")));
        }
        let inst = algebra.instance()?;
        let ring = inst.ring().clone();
        let mut g: BTreeMap<i64, Vec<CoefPoly>> = BTreeMap::new();
        for m in lo..=hi {
            let list = match gens.get(&m) {
                Some(l) => l.iter().map(|f| f.to_ring(&ring)).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            g.insert(m, list.into_iter().filter(|f| !f.is_zero()).collect());
        }
        let stable_lo = lo < hi && same_ideal(&ring, &g[&lo], &g[&(lo + 1)])?;
        let stable_hi = lo < hi && same_ideal(&ring, &g[&hi], &g[&(hi - 1)])?;
        Ok(HomIdealFamily { algebra, inst, lo, hi, gens: g, stable_lo, stable_hi })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn instance(&self) -> &Arc<GwaInstance> {
        &self.inst
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// `I_lo = I_{lo+1}` and `I_hi = I_{hi-1}` as ideals.
    pub fn stabilized(&self) -> (bool, bool) {
        (self.stable_lo, self.stable_hi)
    }

    pub fn generators(&self) -> &BTreeMap<i64, Vec<CoefPoly>> {
        &self.gens
    }

    /// Generators of `I_m`, clamped to the window.
    pub fn component(&self, m: i64) -> &[CoefPoly] {
        &self.gens[&m.clamp(self.lo, self.hi)]
    }

    pub fn ideal(&self, m: i64) -> Result<IdealGens> {
        IdealGens::new(self.inst.ring(), self.component(m).to_vec())
    }

    fn require_stable(&self) -> Result<()> {
        if !(self.stable_lo && self.stable_hi) {
            return Err(Error::NoStabilization(format!(
                "window [{}, {}] of a family over {}",
                self.lo, self.hi, self.algebra
            )));
        }
        Ok(())
    }
}

/// Images of `g v_m` under the generating multiplications:
/// `(target degree, coefficient, rule name)`.
fn pushes(w: &GwaInstance, g: &CoefPoly, m: i64, kind: IdealKind) -> Result<Vec<(i64, CoefPoly, &'static str)>> {
    let mut out = Vec::with_capacity(4);
    if kind.right() {
        out.push((m + 1, g.mul(&w.zz(m, 1)?), "right x"));
        out.push((m - 1, g.mul(&w.zz(m, -1)?), "right y"));
    }
    if kind.left() {
        out.push((m + 1, w.sigma_pow(g, 1)?.mul(&w.zz(1, m)?), "left x"));
        out.push((m - 1, w.sigma_pow(g, -1)?.mul(&w.zz(-1, m)?), "left y"));
    }
    Ok(out)
}

/// The closure conditions of the chosen kind, one check per rule and degree.
pub fn family_conditions(f: &HomIdealFamily, kind: IdealKind) -> Result<Report> {
    let ring = f.inst.ring().clone();
    let mut bases: HashMap<i64, GroebnerBasis> = HashMap::new();
    let mut rep = Report::new();
    for m in f.lo..=f.hi {
        let mut results: BTreeMap<(i64, &str), Option<String>> = BTreeMap::new();
        for g in f.component(m) {
            for (target, img, rule) in pushes(&f.inst, g, m, kind)? {
                let t = target.clamp(f.lo, f.hi);
                if let std::collections::hash_map::Entry::Vacant(e) = bases.entry(t) {
                    e.insert(groebner(&ring, f.component(t))?);
                }
                let entry = results.entry((target, rule)).or_insert(None);
                if entry.is_none() && !bases[&t].contains(&img) {
                    *entry = Some(format!("{img} from generator {g}"));
                }
            }
        }
        for ((target, rule), bad) in results {
            let name = format!("{rule}: I_{m} -> I_{target}");
            match bad {
                None => rep.push(name, true, ""),
                Some(d) => rep.push(name, false, format!("{d} is not in I_{target}")),
            }
        }
    }
    Ok(rep)
}

/// True iff `f` defines an ideal of the chosen kind.
pub fn validate_family(f: &HomIdealFamily, kind: IdealKind) -> Result<bool> {
    f.require_stable()?;
    Ok(family_conditions(f, kind)?.all_passed())
}

/// Least family on `[lo, hi]` containing the seeds and closed under the
/// rules of `kind`; contributions leaving the window are dropped, so the
/// result is contained in the ideal the seeds generate.
pub fn saturate(
    algebra: Algebra,
    lo: i64,
    hi: i64,
    seeds: &[(i64, CoefPoly)],
    kind: IdealKind,
) -> Result<HomIdealFamily> {
    if lo > hi {
        return Err(Error::WindowEmpty);
    }
    let w = algebra.instance()?;
    let ring = w.ring().clone();
    let mut gens: BTreeMap<i64, Vec<CoefPoly>> = (lo..=hi).map(|m| (m, Vec::new())).collect();
    let mut bases: HashMap<i64, GroebnerBasis> = HashMap::new();
    let mut queue: VecDeque<(i64, CoefPoly)> = VecDeque::new();
    for (m, g) in seeds {
        queue.push_back((*m, g.to_ring(&ring)?));
    }
    while let Some((m, g)) = queue.pop_front() {
        if !(lo..=hi).contains(&m) || g.is_zero() {
            continue;
        }
        let known = match bases.get(&m) {
            Some(b) => b.contains(&g),
            None => false,
        };
        if known {
            continue;
        }
        let list = gens.get_mut(&m).expect("degree in window");
        list.push(g.clone());
        bases.insert(m, groebner(&ring, list)?);
        for (t, img, _) in pushes(&w, &g, m, kind)? {
            queue.push_back((t, img));
        }
    }
    // drop generators made redundant by later ones
    for list in gens.values_mut() {
        let mut i = 0;
        while i < list.len() {
            let rest: Vec<CoefPoly> =
                list.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, f)| f.clone()).collect();
            if !rest.is_empty() && groebner(&ring, &rest)?.contains(&list[i]) {
                list.remove(i);
            } else {
                i += 1;
            }
        }
        if list.len() > 1 {
            if let Some(g) = single_generator(&ring, list)? {
                *list = vec![g];
            }
        }
    }
    HomIdealFamily::new(algebra, lo, hi, gens)
}

/// A single generator of `<gens>` taken from its reduced basis, if there is one.
fn single_generator(ring: &Arc<crate::polyring::RingSpec>, gens: &[CoefPoly]) -> Result<Option<CoefPoly>> {
    let gb = groebner(ring, gens)?;
    if gb.is_unit_ideal() {
        return Ok(Some(CoefPoly::one(ring)));
    }
    let mut cands: Vec<CoefPoly> = gb.generators().iter().filter(|g| !g.is_zero()).map(strip_unit_monomial).collect();
    cands.sort_by_key(|g| g.terms().count());
    for c in cands {
        let principal = groebner(ring, std::slice::from_ref(&c))?;
        if gens.iter().all(|g| principal.contains(g)) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// The ideal `<x^n>` of `A_(n)` on `[-n - pad, n + pad]`, with stabilization
/// beyond `±n` and agreement with `<pi^n_m>` both asserted.
pub fn xn_ideal(n: u32, pad: u32) -> Result<HomIdealFamily> {
    let algebra = Algebra::Reduced { n };
    let ring = algebra.ring()?;
    let (ni, p) = (n as i64, pad as i64);
    let f = saturate(algebra, -ni - p, ni + p, &[(ni, CoefPoly::one(&ring))], IdealKind::Twosided)?;
    if pad == 0 {
        return Err(Error::NoStabilization("pad 0 leaves nothing beyond ±n to compare".into()));
    }
    for m in (ni..=ni + p).chain(-ni - p..=-ni) {
        let anchor = if m > 0 { ni + p } else { -ni - p };
        if !same_ideal(&ring, f.component(m), f.component(anchor))? {
            return Err(Error::NoStabilization(format!("I_{m} differs from I_{anchor}")));
        }
    }
    let rep = pi_certificates(&f, n)?;
    if let Some(c) = rep.failures().next() {
        return Err(Error::RelationFailure(format!("{}: {}", c.name, c.detail)));
    }
    Ok(f)
}

/// Componentwise `I_m = <pi^n_m>`, each direction certified by cofactors
/// that are recombined and compared.
pub fn pi_certificates(f: &HomIdealFamily, n: u32) -> Result<Report> {
    let ring = f.inst.ring().clone();
    let mut rep = Report::new();
    for m in f.lo..=f.hi {
        let pi = pi_elem(&ring, n, m);
        let gens = f.component(m).to_vec();
        let fwd = certified(&pi, &gens)?;
        rep.push(format!("pi_{m} in I_{m}"), fwd, if fwd { String::new() } else { format!("pi_{m} = {pi}") });
        let back = gens.iter().map(|g| certified(g, std::slice::from_ref(&pi))).collect::<Result<Vec<_>>>()?;
        rep.push(format!("I_{m} in <pi_{m}>"), back.iter().all(|b| *b), "");
    }
    Ok(rep)
}

fn certified(f: &CoefPoly, gens: &[CoefPoly]) -> Result<bool> {
    let ideal = IdealGens::new(f.ring(), gens.to_vec())?;
    let m = ideal_member(f, &ideal)?;
    let Some(cof) = m.cofactors.filter(|_| m.member) else {
        return Ok(false);
    };
    let sum = cof.iter().zip(ideal.generators()).fold(CoefPoly::zero(f.ring()), |acc, (c, g)| acc.add(&c.mul(g)));
    Ok(&sum == f)
}

/// `prod_{j=n-i+1}^{n} r_j` lies in `<x^n>_{n-i}` of `k[u^±,t^±,d][x,y; sigma, z]`
/// for `0 <= i <= n`, certified against the coefficients of `y^a x^n y^b`, `a + b = i`.
pub fn certificate_chain(n: u32) -> Result<Report> {
    let w = Algebra::Localized.instance()?;
    let ring = w.ring().clone();
    let ni = n as i64;
    let (x, y) = (GwaElem::x(&w), GwaElem::y(&w));
    let xn = x.pow(n)?;
    let mut rep = Report::new();
    let mut prod = CoefPoly::one(&ring);
    for i in 0..=ni {
        if i > 0 {
            prod = prod.mul(&r_elem(&ring, ni - i + 1));
        }
        let mut gens = Vec::new();
        for a in 0..=i {
            let word = y.pow(a as u32)?.mul(&xn)?.mul(&y.pow((i - a) as u32)?)?;
            gens.push(word.component(ni - i));
        }
        let ok = certified(&prod, &gens)?;
        rep.push(format!("prod r_j (j = {}..{ni}) in <x^{n}>_{}", ni - i + 1, ni - i), ok, "");
    }
    Ok(rep)
}

/// `P ⊆ Q`, decided componentwise by membership of each generator of `P_m` in `Q_m`.
pub fn ideal_includes(p: &HomIdealFamily, q: &HomIdealFamily) -> Result<bool> {
    if p.algebra != q.algebra {
        return Err(Error::RingMismatch(format!("families over {} and {}", p.algebra, q.algebra)));
    }
    p.require_stable()?;
    q.require_stable()?;
    let ring = p.inst.ring().clone();
    for m in p.lo.min(q.lo)..=p.hi.max(q.hi) {
        let gens = p.component(m);
        if gens.is_empty() {
            continue;
        }
        let gb = groebner(&ring, q.component(m))?;
        if !gens.iter().all(|g| gb.contains(g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::reduced_ring;

    #[test]
    fn xn_small() {
        let f = xn_ideal(1, 1).unwrap();
        assert_eq!(f.window(), (-2, 2));
        assert!(validate_family(&f, IdealKind::Twosided).unwrap());
        let f = xn_ideal(2, 1).unwrap();
        let rr = reduced_ring();
        assert!(f.ideal(-2).unwrap().contains(&CoefPoly::one(&rr)).unwrap());
        assert!(matches!(xn_ideal(1, 0), Err(Error::NoStabilization(_))));
    }

    #[test]
    fn non_ideal_rejected() {
        let rr = reduced_ring();
        let g = BTreeMap::from([(0, vec![CoefPoly::one(&rr)])]);
        let f = HomIdealFamily::new(Algebra::Reduced { n: 1 }, -2, 2, g).unwrap();
        assert!(!validate_family(&f, IdealKind::Twosided).unwrap());
        assert!(!validate_family(&f, IdealKind::Right).unwrap());

        let n = 2;
        let mut g: BTreeMap<i64, Vec<CoefPoly>> = (-3..=3).map(|m| (m, vec![pi_elem(&rr, n, m)])).collect();
        let f = HomIdealFamily::new(Algebra::Reduced { n }, -3, 3, g.clone()).unwrap();
        assert!(validate_family(&f, IdealKind::Twosided).unwrap());
        g.insert(0, vec![CoefPoly::one(&rr)]);
        let f = HomIdealFamily::new(Algebra::Reduced { n }, -3, 3, g).unwrap();
        assert!(!validate_family(&f, IdealKind::Twosided).unwrap());
    }

    #[test]
    fn chain_n2() {
        let rep = certificate_chain(2).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }
}
