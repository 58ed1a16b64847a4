use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use super::family::{ideal_includes, same_ideal, saturate, HomIdealFamily, IdealKind};
use super::{pi_elem, r_elem, s_coeff, s_elem, t_ring, Algebra};
use crate::error::{Error, Result};
use crate::gwa::is_normal;
use crate::polyring::{CoefPoly, GroebnerBasis, RingSpec, MAX_VARS};
use crate::qfield::{QMatrix, QRat};
use crate::report::Report;

/// `k[u11, u12, u21]`, the coordinate ring of `A/<u>`.
pub fn t1_ring() -> Arc<RingSpec> {
    static R: OnceLock<Arc<RingSpec>> = OnceLock::new();
    R.get_or_init(|| RingSpec::new(&["u11", "u12", "u21"], &[]).expect("valid ring")).clone()
}

/// `k[t, d]`.
pub fn t2_ring() -> Arc<RingSpec> {
    static R: OnceLock<Arc<RingSpec>> = OnceLock::new();
    R.get_or_init(|| RingSpec::new(&["t", "d"], &[]).expect("valid ring")).clone()
}

/// A point of one of the strata of the prime spectrum.
#[derive(Clone, Debug, PartialEq)]
pub enum StratumDescriptor {
    /// `<u> + <p>` for `p` in `k[u11, u12, u21]`.
    T1 { p: Vec<CoefPoly> },
    /// `<p>` for `p` in `k[t, d]`.
    T2 { p: Vec<CoefPoly> },
    /// `<pi^n_m v_m> + <r_n> + <t - c>`, with `c = None` for the zero ideal of `k[t^±]`.
    T3 { n: u32, c: Option<QRat> },
}

impl StratumDescriptor {
    pub fn validate(&self) -> Result<()> {
        let in_ring = |p: &[CoefPoly], r: &Arc<RingSpec>| match p.iter().find(|g| g.ring() != r) {
            Some(g) => Err(Error::InvalidDescriptor(format!("{g} is not in {r}"))),
            None => Ok(()),
        };
        match self {
            StratumDescriptor::T1 { p } => in_ring(p, &t1_ring()),
            StratumDescriptor::T2 { p } => in_ring(p, &t2_ring()),
            StratumDescriptor::T3 { n, c } => {
                if *n == 0 {
                    return Err(Error::InvalidDescriptor("T3 needs n >= 1".into()));
                }
                if c.as_ref().is_some_and(|c| c.is_zero()) {
                    return Err(Error::InvalidDescriptor("t - c needs c != 0".into()));
                }
                Ok(())
            }
        }
    }
}

/// Power of `d` carrying `f v_m` to degree `k` in the commutative quotient `A/<u>`.
fn d_power(m: i64, k: i64) -> i32 {
    let (m, k) = if m >= 0 { (m, k) } else { (-m, -k) };
    (if k >= m {
        0
    } else if k >= 0 {
        m - k
    } else {
        m
    }) as i32
}

/// A generator of `p`, homogeneous for `deg u21 - deg u12`, as `(degree, f(t, d))`.
fn t1_component(g: &CoefPoly, utd: &Arc<RingSpec>) -> Result<(i64, CoefPoly)> {
    let mut deg = None;
    let mut f = CoefPoly::zero(utd);
    for (e, c) in g.terms() {
        let (a, b, cc) = (e[0], e[1], e[2]);
        let m = (cc - b) as i64;
        if deg.is_some_and(|d| d != m) {
            return Err(Error::InvalidDescriptor(format!("{g} is not homogeneous in x-degree")));
        }
        deg = Some(m);
        let mut ne = [0; MAX_VARS];
        ne[1] = a;
        ne[2] = b.min(cc);
        f.add_term(ne, c);
    }
    Ok((deg.unwrap_or(0), f))
}

/// The homogeneous family of a stratum point, in `k[u,t,d]`.
pub fn stratum_ideal(s: &StratumDescriptor) -> Result<HomIdealFamily> {
    s.validate()?;
    let utd = Algebra::Rea.ring()?;
    let u = CoefPoly::var(&utd, "u");
    match s {
        StratumDescriptor::T1 { p } => {
            let comps = p.iter().map(|g| t1_component(g, &utd)).collect::<Result<Vec<_>>>()?;
            let big = comps.iter().map(|(m, _)| m.abs()).max().unwrap_or(0) + 1;
            let mut gens = BTreeMap::new();
            for k in -big..=big {
                let mut list = vec![u.clone()];
                for (m, f) in &comps {
                    let mut e = [0; MAX_VARS];
                    e[2] = d_power(*m, k);
                    list.push(f.mul_term(&e, &QRat::one()));
                }
                gens.insert(k, list);
            }
            HomIdealFamily::new(Algebra::Rea, -big, big, gens)
        }
        StratumDescriptor::T2 { p } => {
            let list = p.iter().map(|g| g.to_ring(&utd)).collect::<Result<Vec<_>>>()?;
            HomIdealFamily::new(Algebra::Rea, -1, 1, (-1..=1).map(|m| (m, list.clone())).collect())
        }
        StratumDescriptor::T3 { n, c } => {
            let ni = *n as i64;
            let mut extra = vec![r_elem(&utd, ni)];
            if let Some(c) = c {
                extra.push(CoefPoly::var(&utd, "t").sub(&CoefPoly::constant(&utd, c.clone())));
            }
            let gens = (-ni - 2..=ni + 2)
                .map(|m| {
                    let mut list = vec![pi_elem(&utd, *n, m)];
                    list.extend(extra.iter().cloned());
                    (m, list)
                })
                .collect();
            HomIdealFamily::new(Algebra::Rea, -ni - 2, ni + 2, gens)
        }
    }
}

/// `u = c_1 t`, identifying `k[u^±,t^±]/<s_1>` with `k[t^±]`.
fn mod_s1(f: &CoefPoly, n: u32) -> Result<CoefPoly> {
    let tr = t_ring();
    let t = CoefPoly::var(&tr, "t");
    f.substitute(&[t.scale(&s_coeff(n, 1)), t], &tr)
}

/// For ideals `a`, `b` of `k[t^±]` with families `I_m = <pi_m, a>`, `J_m = <pi_m, b>`
/// of `A_(n)`: `(IJ + <x^n>)_k = <pi_k, ab>` on `[-n-1, n+1]`, the contraction
/// `((IJ + <x^n>)_0 + <s_1>) ∩ k[t^±] = <ab>`, and the unit pattern of `[[m,-m]]` mod `s_1`.
pub fn product_correspondence_report(n: u32, a: &CoefPoly, b: &CoefPoly) -> Result<Report> {
    let alg = Algebra::Reduced { n };
    let w = alg.instance()?;
    let rr = w.ring().clone();
    let (a, b) = (a.to_ring(&rr)?, b.to_ring(&rr)?);
    let ab = a.mul(&b);
    let ni = n as i64;
    let fam = |m: i64, c: &CoefPoly| vec![pi_elem(&rr, n, m), c.clone()];
    let mut rep = Report::new();
    let mut zero_gens = Vec::new();
    for k in -ni - 1..=ni + 1 {
        let mut gens = vec![pi_elem(&rr, n, k)];
        // terms with |i| >= n or |k - i| >= n already lie in <x^n>
        for i in (1 - ni..ni).filter(|i| (k - i).abs() < ni) {
            let zz = w.zz(i, k - i)?;
            for g in fam(i, &a) {
                for h in fam(k - i, &b) {
                    gens.push(g.mul(&w.sigma_pow(&h, i)?).mul(&zz));
                }
            }
        }
        let ok = same_ideal(&rr, &gens, &fam(k, &ab))?;
        rep.push(format!("(IJ + <x^{n}>)_{k} = <pi_{k}, ab>"), ok, "");
        if k == 0 {
            zero_gens = gens;
        }
    }
    let tr = t_ring();
    let contracted = zero_gens.iter().map(|g| mod_s1(g, n)).collect::<Result<Vec<_>>>()?;
    let ok = same_ideal(&tr, &contracted, &[mod_s1(&ab, n)?])?;
    rep.push("((IJ + <x^n>)_0 + <s_1>) ∩ k[t^±] = ab", ok, "");
    let s1 = s_elem(&rr, n, 1);
    for m in -ni - 1..=ni + 1 {
        let r = mod_s1(&w.zz(m, -m)?, n)?;
        let expect_unit = (0..ni).contains(&m);
        let ok = if expect_unit { r.unit_inverse().is_some() } else { r.is_zero() };
        let what = if expect_unit { "a unit" } else { "in <s_1>" };
        rep.push(format!("[[{m},{}]] is {what} mod {s1}", -m), ok, "");
    }
    Ok(rep)
}

pub fn product_correspondence_check(n: u32, a: &CoefPoly, b: &CoefPoly) -> Result<bool> {
    Ok(product_correspondence_report(n, a, b)?.all_passed())
}

/// Elements of degree at most `max_deg` in `k[u,t]` that are normal in
/// `A/<r_1> = k[u,t][x,y; sigma, z_1]` and lie in the image of
/// `P = <pi^1_0, x, y, r_1>`; the normal elements there are the sigma-eigenvectors
/// `u^i f(t)`, so each eigenspace is intersected with `P_0`.
pub fn normal_separation_scan(max_deg: u32) -> Result<Vec<CoefPoly>> {
    let alg = Algebra::Quotient { n: 1 };
    let w = alg.instance()?;
    let r = w.ring().clone();
    let one = CoefPoly::one(&r);
    let seeds = [(0, pi_elem(&r, 1, 0)), (1, one.clone()), (-1, one)];
    let p = saturate(alg, -2, 2, &seeds, IdealKind::Twosided)?;
    let gb = GroebnerBasis::compute(&r, p.component(0), crate::polyring::degree_cap(), false)?;
    let d = max_deg as i32;
    let mut found = Vec::new();
    for i in 0..=d {
        let basis: Vec<CoefPoly> = (0..=d - i)
            .map(|j| {
                let mut e = [0; MAX_VARS];
                e[0] = i;
                e[1] = j;
                CoefPoly::monomial(&r, e, QRat::one())
            })
            .collect();
        for b in &basis {
            if is_normal(b, &w)?.is_none() {
                return Err(Error::HypothesisUnverified(format!("{b} should be normal")));
            }
        }
        let nfs: Vec<_> = basis.iter().map(|b| gb.normal_form_coords(b)).collect();
        let mut rows: HashMap<Vec<u16>, usize> = HashMap::new();
        for nf in &nfs {
            for (k, _) in nf {
                let len = rows.len();
                rows.entry(k.to_vec()).or_insert(len);
            }
        }
        let mut mat = QMatrix::zeros(rows.len().max(1), basis.len());
        for (col, nf) in nfs.iter().enumerate() {
            for (k, c) in nf {
                mat.set(rows[&k.to_vec()], col, c.clone());
            }
        }
        for v in mat.kernel_vectors() {
            let f = basis.iter().zip(&v).fold(CoefPoly::zero(&r), |acc, (b, c)| acc.add(&b.scale(c)));
            found.push(f);
        }
    }
    Ok(found)
}

fn strict(rep: &mut Report, name: &str, p: &HomIdealFamily, q: &HomIdealFamily) -> Result<()> {
    let fwd = ideal_includes(p, q)?;
    let back = ideal_includes(q, p)?;
    rep.push(name, fwd && !back, format!("P ⊆ Q: {fwd}, Q ⊆ P: {back}"));
    Ok(())
}

/// Witnesses that the algebra is not catenary, lacks normal separation, and
/// that each sampled `T3n` prime contains the principal prime `<r_n>`.
pub fn pathologies() -> Result<Report> {
    let mut rep = Report::new();
    let t1 = t1_ring();
    let t2 = t2_ring();
    let p1 = |s: &[&str]| -> Result<Vec<CoefPoly>> { s.iter().map(|g| CoefPoly::parse(&t1, g)).collect() };
    let rn_t2 = |n: i64| r_elem(&t2, n);
    let rn_t1 = CoefPoly::parse(&t1, "(q^2+1)^2*u12*u21 + q^2*u11^2")?;

    let a = stratum_ideal(&StratumDescriptor::T2 { p: vec![rn_t2(1)] })?;
    let b = stratum_ideal(&StratumDescriptor::T1 { p: vec![rn_t1] })?;
    let c = stratum_ideal(&StratumDescriptor::T1 { p: p1(&["u11", "u21"])? })?;
    let d = stratum_ideal(&StratumDescriptor::T3 { n: 1, c: None })?;
    let e = stratum_ideal(&StratumDescriptor::T1 { p: p1(&["u11", "u12", "u21"])? })?;
    strict(&mut rep, "catenary: <r_1> ⊂ <r_1, u22>", &a, &b)?;
    strict(&mut rep, "catenary: <r_1, u22> ⊂ <u11, u22, u21>", &b, &c)?;
    strict(&mut rep, "catenary: <u11, u22, u21> ⊂ <u11, u22, u21, u12>", &c, &e)?;
    strict(&mut rep, "catenary: <r_1> ⊂ <pi^1_m v_m> + <r_1>", &a, &d)?;
    strict(&mut rep, "catenary: <pi^1_m v_m> + <r_1> ⊂ <u11, u22, u21, u12>", &d, &e)?;

    let found = normal_separation_scan(3)?;
    let detail: Vec<String> = found.iter().map(|f| f.to_string()).collect();
    rep.push("normal separation: no normal element of P outside Q (degree <= 3)", found.is_empty(), detail.join(", "));

    for n in 1..=3u32 {
        let rn = stratum_ideal(&StratumDescriptor::T2 { p: vec![rn_t2(n as i64)] })?;
        for c in [None, Some(QRat::one())] {
            let label = match &c {
                None => "0".to_string(),
                Some(c) => format!("t - {c}"),
            };
            let t3 = stratum_ideal(&StratumDescriptor::T3 { n, c })?;
            strict(&mut rep, &format!("UFD: <r_{n}> ⊂ T3{n}({label})"), &rn, &t3)?;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::validate_family;

    #[test]
    fn t1_maximal_ideal() {
        let t1 = t1_ring();
        let p = ["u11", "u12", "u21"].iter().map(|s| CoefPoly::parse(&t1, s).unwrap()).collect();
        let f = stratum_ideal(&StratumDescriptor::T1 { p }).unwrap();
        let utd = RingSpec::utd();
        let max = crate::polyring::IdealGens::parse(&utd, &["u", "t", "d"]).unwrap();
        assert!(same_ideal(&utd, f.component(0), max.generators()).unwrap());
        assert!(f.ideal(1).unwrap().contains(&CoefPoly::one(&utd)).unwrap());
        assert!(validate_family(&f, IdealKind::Twosided).unwrap());
    }

    #[test]
    fn t1_rejects_inhomogeneous() {
        let t1 = t1_ring();
        let p = vec![CoefPoly::parse(&t1, "u11 + u12").unwrap()];
        assert!(matches!(stratum_ideal(&StratumDescriptor::T1 { p }), Err(Error::InvalidDescriptor(_))));
        assert!(stratum_ideal(&StratumDescriptor::T3 { n: 0, c: None }).is_err());
        assert!(stratum_ideal(&StratumDescriptor::T3 { n: 1, c: Some(QRat::zero()) }).is_err());
    }

    #[test]
    fn t2_and_t3_validate() {
        let t2 = t2_ring();
        let f = stratum_ideal(&StratumDescriptor::T2 {
            p: vec![CoefPoly::parse(&t2, "t").unwrap(), CoefPoly::parse(&t2, "d").unwrap()],
        })
        .unwrap();
        assert!(validate_family(&f, IdealKind::Twosided).unwrap());
        let f = stratum_ideal(&StratumDescriptor::T3 { n: 1, c: None }).unwrap();
        assert!(validate_family(&f, IdealKind::Twosided).unwrap());
    }

    #[test]
    fn product_n1() {
        let tr = t_ring();
        let a = CoefPoly::parse(&tr, "t - 1").unwrap();
        let b = CoefPoly::parse(&tr, "t - q").unwrap();
        let rep = product_correspondence_report(1, &a, &b).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn scan_is_empty() {
        assert!(normal_separation_scan(2).unwrap().is_empty());
    }
}
