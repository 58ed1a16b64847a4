//! One-shot verification suites over the whole crate.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwa::{is_central, verify_presentation, Fault, GwaElem, GwaInstance};
use crate::polyring::{CoefPoly, SigmaMap};
use crate::qfield::QRat;
use crate::random::Sampler;
use crate::rea::{apply_aut, central_scan, check_relations, check_relations_with, rea_instance, rea_to_gwa, ReaAut};
use crate::report::Report;
use crate::repr::{
    classify, decompose, is_simple, nonsemisimple_module, vn_module, Decomposition, Weight, WeightModule,
};
use crate::spectrum::{
    certificate_chain, crt_check, ideal_includes, pathologies, pi_certificates, product_correspondence_report, r_elem,
    reduced_ring, rn_identity_check, rn_identity_holds, special_identities, stratum_ideal, t1_ring, t2_ring, t_ring,
    validate_family, xn_ideal, Algebra, HomIdealFamily, IdealKind, StratumDescriptor,
};
use crate::uqsl2::{matrix_relations, psi_images, pullback_matches, uqsl2_module};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Gwa,
    Rea,
    Modules,
    Uqsl2,
    Spectrum,
    Controls,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gwa" => Suite::Gwa,
            "rea" => Suite::Rea,
            "modules" => Suite::Modules,
            "uqsl2" => Suite::Uqsl2,
            "spectrum" => Suite::Spectrum,
            "controls" => Suite::Controls,
            "all" => Suite::All,
            _ => return Err(Error::Parse { pos: 0, msg: format!("unknown suite {s:?}") }),
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let one = |s: Suite| -> Result<Report> {
        let (label, rep) = match s {
            Suite::Gwa => ("gwa", gwa_suite(opts)?),
            Suite::Rea => ("rea", rea_suite(opts)?),
            Suite::Modules => ("modules", modules_suite(opts)?),
            Suite::Uqsl2 => ("uqsl2", uqsl2_suite()?),
            Suite::Spectrum => ("spectrum", spectrum_suite()?),
            Suite::Controls => ("controls", controls_suite()?),
            Suite::All => unreachable!(),
        };
        Ok(rep.prefixed(label))
    };
    if suite != Suite::All {
        return one(suite);
    }
    let mut rep = Report::new();
    for s in [Suite::Gwa, Suite::Rea, Suite::Modules, Suite::Uqsl2, Suite::Spectrum, Suite::Controls] {
        rep.extend(one(s)?);
    }
    Ok(rep)
}

fn instance(opts: &VerifyOptions) -> Arc<GwaInstance> {
    let w = rea_instance();
    match opts.fault {
        Some(f) => w.with_fault(f),
        None => w,
    }
}

/// `name` passes iff `bad` stays empty; the first failure is the detail.
fn tally(rep: &mut Report, name: String, total: usize, bad: Vec<String>) {
    let detail = match bad.first() {
        None => format!("{total} cases"),
        Some(b) => format!("{} of {total} failed, first: {b}", bad.len()),
    };
    rep.push(name, bad.is_empty(), detail);
}

/// Associativity identity on `|a|,|b|,|c| <= 3`, and ring axioms on 200 random triples.
pub fn gwa_suite(opts: &VerifyOptions) -> Result<Report> {
    let w = instance(opts);
    let mut rep = verify_presentation(&w, 3)?;
    let mut s = Sampler::new(opts.seed);
    let (mut assoc, mut dist, mut add) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..200 {
        let (a, b, c) = (s.elem(&w, 3), s.elem(&w, 3), s.elem(&w, 3));
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? {
            assoc.push(format!("triple {i}"));
        }
        if a.mul(&b.add(&c)?)? != a.mul(&b)?.add(&a.mul(&c)?)? || a.add(&b)?.mul(&c)? != a.mul(&c)?.add(&b.mul(&c)?)? {
            dist.push(format!("triple {i}"));
        }
        if a.add(&b)?.add(&c)? != a.add(&b.add(&c)?)? {
            add.push(format!("triple {i}"));
        }
    }
    tally(&mut rep, "(ab)c = a(bc) on random triples".into(), 200, assoc);
    tally(&mut rep, "distributivity on random triples".into(), 200, dist);
    tally(&mut rep, "(a+b)+c = a+(b+c) on random triples".into(), 200, add);
    Ok(rep)
}

fn generator_names() -> [&'static str; 5] {
    ["u", "t", "d", "x", "y"]
}

fn named(w: &Arc<GwaInstance>, name: &str) -> GwaElem {
    match name {
        "x" => GwaElem::x(w),
        "y" => GwaElem::y(w),
        v => GwaElem::var(w, v),
    }
}

/// Relations, the homomorphism property, automorphisms and the center.
pub fn rea_suite(opts: &VerifyOptions) -> Result<Report> {
    let w = rea_instance();
    let mut rep = check_relations()?;
    let mut s = Sampler::new(opts.seed);
    let mut bad = Vec::new();
    for i in 0..100 {
        let (a, b) = (s.rea_word(), s.rea_word());
        if rea_to_gwa(&a.product(&b))? != rea_to_gwa(&a)?.mul(&rea_to_gwa(&b)?)? {
            bad.push(format!("pair {i}: {:?} * {:?}", a.expr(), b.expr()));
        }
    }
    tally(&mut rep, "word products map to products".into(), 100, bad);

    let auts: Vec<ReaAut> =
        (0..20).map(|_| ReaAut::new(s.nonzero_scalar(), s.nonzero_scalar())).collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for phi in &auts {
        let r = check_relations_with(&w, &|g| phi.generator_image(g))?;
        if !r.all_passed() {
            bad.push(format!("alpha = {}, gamma = {}", phi.alpha(), phi.gamma()));
        }
    }
    tally(&mut rep, "automorphisms preserve the relations".into(), auts.len(), bad);
    let mut bad = Vec::new();
    for pair in auts.windows(2) {
        let (phi, psi) = (&pair[0], &pair[1]);
        for g in generator_names() {
            let a = named(&w, g);
            if apply_aut(phi, &apply_aut(psi, &a)?)? != apply_aut(&phi.compose(psi), &a)?
                || apply_aut(&ReaAut::identity(), &a)? != a
            {
                bad.push(format!("{g} under alpha = {}", phi.alpha()));
            }
        }
    }
    tally(&mut rep, "group law on generators".into(), 5 * (auts.len() - 1), bad);

    let basis = central_scan(4)?;
    let mut monos = Vec::new();
    for b in 0..=4 {
        for c in 0..=4 - b {
            monos.push(GwaElem::ring(&w, CoefPoly::parse(w.ring(), &format!("t^{b}*d^{c}"))?));
        }
    }
    let all_central = monos.iter().map(is_central).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    rep.push(
        "center in degree <= 4 is spanned by t^b d^c",
        basis.len() == 15 && all_central,
        format!("{} central basis elements", basis.len()),
    );
    rep.push("u is not central", !is_central(&GwaElem::var(&w, "u"))?, "");
    Ok(rep)
}

pub fn module_u0s() -> [QRat; 4] {
    [QRat::one(), QRat::from_int(2), QRat::q(), QRat::q_pow(-3)]
}

/// Relations, simplicity, classification and `lambda` pattern of `V_n(u0)`.
pub fn simple_module_checks(n: u32, u0: &QRat) -> Result<Vec<(String, bool)>> {
    let m = vn_module(n, u0.clone())?;
    let w = m.instance().clone();
    let c = classify(&m)?;
    let lowest = Weight::vn(n, u0.clone());
    let mut lam_ok = true;
    for i in 0..=n as i64 {
        let lam = lowest.eval(&w.sigma_z(1 - i)?)?;
        lam_ok &= lam.is_zero() == (i == 0 || i == n as i64);
    }
    Ok(vec![
        ("relations".into(), m.relation_report()?.all_passed() && m.dim() == n as usize),
        ("simple".into(), is_simple(&m)?),
        ("classify".into(), c.dim == n as usize && c.u0() == u0),
        ("lambda_0 = lambda_n = 0, others nonzero".into(), lam_ok),
    ])
}

fn multiset(parts: &[(Weight, usize)]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (w, k) in parts {
        *out.entry(w.to_string()).or_default() += k;
    }
    out
}

/// A random direct sum of simple modules and its expected decomposition.
pub fn random_sum(s: &mut Sampler) -> Result<(WeightModule, Vec<(Weight, usize)>)> {
    let pool = [QRat::one(), QRat::from_int(2), QRat::from_int(-3), QRat::q(), QRat::q_pow(-3), QRat::monomial(5, 1)];
    let mut parts = Vec::new();
    let mut sum: Option<WeightModule> = None;
    for _ in 0..s.range(1, 3) {
        let n = s.range(1, 5) as u32;
        let u0 = pool[s.range(0, pool.len() as i64 - 1) as usize].clone();
        let v = vn_module(n, u0.clone())?;
        sum = Some(match sum {
            None => v,
            Some(acc) => acc.direct_sum(&v)?,
        });
        parts.push((Weight::vn(n, u0), 1));
    }
    Ok((sum.expect("at least one summand"), parts))
}

/// Simple modules for `n <= 8`, random direct sums and the non-semisimple example.
pub fn modules_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut rep = Report::new();
    for n in 1..=8 {
        for u0 in module_u0s() {
            for (name, ok) in simple_module_checks(n, &u0)? {
                rep.push(format!("V_{n}({u0}) {name}"), ok, "");
            }
        }
    }
    let mut s = Sampler::new(opts.seed);
    let mut bad = Vec::new();
    for i in 0..50 {
        let (m, parts) = random_sum(&mut s)?;
        match decompose(&m)? {
            Decomposition::Semisimple(got) if multiset(&got) == multiset(&parts) => {}
            d => bad.push(format!("sum {i}: expected {:?}, got {d:?}", multiset(&parts))),
        }
    }
    tally(&mut rep, "random direct sums decompose".into(), 50, bad);
    let ns = matches!(decompose(&nonsemisimple_module()?)?, Decomposition::NotSemisimple { .. });
    rep.push("modified-z module is not semisimple", ns, "");
    Ok(rep)
}

pub fn pullback_alphas() -> [QRat; 3] {
    [QRat::one(), QRat::from_int(2), QRat::q()]
}

/// Pullbacks of the simple `U_q(sl_2)` modules for `n <= 6`.
pub fn uqsl2_suite() -> Result<Report> {
    let mut rep = Report::new();
    for n in 1..=6 {
        let m = uqsl2_module(n)?;
        rep.push(format!("U_q(sl_2) module of dimension {n}"), m.relation_report()?.all_passed(), "");
        for a in pullback_alphas() {
            let rel = matrix_relations(&psi_images(&a, &m)?)?;
            rep.push(format!("psi_{a} images, n = {n}, satisfy the relations"), rel.all_passed(), "");
            let (ok, c) = pullback_matches(&a, n)?;
            rep.push(format!("psi_{a} pullback, n = {n}, is V_{n}(alpha q^{})", n - 1), ok, format!("u0 = {}", c.u0()));
        }
    }
    Ok(rep)
}

fn t1(gens: &[&str]) -> Result<StratumDescriptor> {
    let r = t1_ring();
    Ok(StratumDescriptor::T1 { p: gens.iter().map(|g| CoefPoly::parse(&r, g)).collect::<Result<_>>()? })
}

fn t2(gens: &[&str]) -> Result<StratumDescriptor> {
    let r = t2_ring();
    Ok(StratumDescriptor::T2 { p: gens.iter().map(|g| CoefPoly::parse(&r, g)).collect::<Result<_>>()? })
}

fn t3(n: u32, c: Option<i64>) -> StratumDescriptor {
    StratumDescriptor::T3 { n, c: c.map(QRat::from_int) }
}

/// Sample points of every stratum.
pub fn sample_strata() -> Result<Vec<(String, StratumDescriptor)>> {
    let mut out = vec![
        ("T1 <u11, u12, u21>".to_string(), t1(&["u11", "u12", "u21"])?),
        ("T1 <u11, u21>".to_string(), t1(&["u11", "u21"])?),
        ("T1 <u12>".to_string(), t1(&["u12"])?),
        ("T1 <(q^2+1)^2 u12 u21 + q^2 u11^2>".to_string(), t1(&["(q^2+1)^2*u12*u21 + q^2*u11^2"])?),
        ("T2 <t, d>".to_string(), t2(&["t", "d"])?),
        ("T2 <d>".to_string(), t2(&["d"])?),
        ("T2 <t - 1>".to_string(), t2(&["t - 1"])?),
        ("T2 <r_1>".to_string(), t2(&["(q^2+1)^2*d + q^2*t^2"])?),
    ];
    for n in 1..=3 {
        out.push((format!("T3_{n}(0)"), t3(n, None)));
        out.push((format!("T3_{n}(t - 1)"), t3(n, Some(1))));
    }
    Ok(out)
}

/// `(P, Q, expected P ⊆ Q)` pairs covering the inclusion pattern among strata.
pub fn inclusion_spot_checks() -> Result<Vec<(String, StratumDescriptor, StratumDescriptor, bool)>> {
    let max = t1(&["u11", "u12", "u21"])?;
    let mut out = vec![
        ("T3_1(0) ⊆ max".to_string(), t3(1, None), max.clone(), true),
        ("T3_2(t - 1) ⊆ max".to_string(), t3(2, Some(1)), max.clone(), false),
        ("T3_1(t - 1) ⊆ T1 <u11, u21>".to_string(), t3(1, Some(1)), t1(&["u11", "u21"])?, false),
        ("T2 <t, d> ⊆ max".to_string(), t2(&["t", "d"])?, max.clone(), true),
        ("T2 <d> ⊆ T1 <u12>".to_string(), t2(&["d"])?, t1(&["u12"])?, true),
        ("T2 <t> ⊆ T1 <u12>".to_string(), t2(&["t"])?, t1(&["u12"])?, false),
        ("T2 <t - 1> ⊆ T3_1(t - 1)".to_string(), t2(&["t - 1"])?, t3(1, Some(1)), true),
        ("T2 <t - 2> ⊆ T3_1(t - 1)".to_string(), t2(&["t - 2"])?, t3(1, Some(1)), false),
        ("max ⊆ T2 <t, d>".to_string(), max, t2(&["t", "d"])?, false),
    ];
    for n in 1..=3 {
        for m in 1..=3 {
            if n != m {
                out.push((format!("T3_{n}(0) ⊆ T3_{m}(0)"), t3(n, None), t3(m, None), false));
            }
        }
    }
    Ok(out)
}

pub fn product_grid() -> Vec<(u32, &'static str, &'static str)> {
    let pairs = [("t - 1", "t - q"), ("t - 1", "t - 2"), ("t - 1", "t - 1")];
    (1..=2).flat_map(|n| pairs.iter().map(move |(a, b)| (n, *a, *b))).collect()
}

/// Identities, `<x^n>`, idempotents, correspondences, strata and pathologies.
pub fn spectrum_suite() -> Result<Report> {
    let mut rep = Report::new();
    for n in 1..=6 {
        rep.push(format!("r_{n} identity"), rn_identity_check(n)?, "");
    }
    for n in 1..=3 {
        rep.extend(special_identities(n)?.prefixed(&format!("n = {n}")));
    }
    for n in 1..=3u32 {
        let f = xn_ideal(n, 1)?;
        rep.extend(pi_certificates(&f, n)?.prefixed(&format!("<x^{n}>")));
        let unit = f.ideal(-(n as i64))?.contains(&CoefPoly::one(&reduced_ring()))?;
        rep.push(format!("<x^{n}>_-{n} = <1>"), unit, "");
        rep.push(format!("<x^{n}> is a two-sided family"), validate_family(&f, IdealKind::Twosided)?, "");
        rep.extend(certificate_chain(n)?);
    }
    for n in 1..=4u32 {
        let ni = n as i64;
        for (l1, l2) in [(1, ni), (1 - ni / 2, ni - ni / 2)] {
            let r = crt_check(n, l1, l2)?;
            rep.push(
                format!("CRT idempotents, n = {n}, [{l1}, {l2}]"),
                r.all_passed(),
                format!("{} checks", r.checks.len()),
            );
        }
    }
    let tr = t_ring();
    for (n, a, b) in product_grid() {
        let r = product_correspondence_report(n, &CoefPoly::parse(&tr, a)?, &CoefPoly::parse(&tr, b)?)?;
        let first = r.failures().next().map(|c| c.name.clone()).unwrap_or_default();
        rep.push(format!("products correspond, n = {n}, <{a}><{b}>"), r.all_passed(), first);
    }
    for (name, s) in sample_strata()? {
        rep.push(
            format!("{name} is a two-sided family"),
            validate_family(&stratum_ideal(&s)?, IdealKind::Twosided)?,
            "",
        );
    }
    for (name, p, q, expect) in inclusion_spot_checks()? {
        let got = ideal_includes(&stratum_ideal(&p)?, &stratum_ideal(&q)?)?;
        rep.push(name, got == expect, format!("expected {expect}"));
    }
    rep.extend(pathologies()?);
    Ok(rep)
}

/// A family that is not closed under multiplication by `x`.
pub fn non_ideal_family() -> Result<HomIdealFamily> {
    let g = BTreeMap::from([(0, vec![CoefPoly::one(&reduced_ring())])]);
    HomIdealFamily::new(Algebra::Reduced { n: 1 }, -2, 2, g)
}

/// Deliberately broken inputs that each verifier has to reject.
pub fn controls_suite() -> Result<Report> {
    let mut rep = Report::new();
    let w = rea_instance();
    let r = w.ring().clone();
    let p = |s: &str| CoefPoly::parse(&r, s);
    let bad = SigmaMap::new_unchecked(&r, vec![p("q^2*u")?, p("t")?, p("d")?], vec![p("q^-3*u")?, p("t")?, p("d")?])?;
    let wb = GwaInstance::new(bad, w.z().clone())?;
    let pres = verify_presentation(&wb, 1)?;
    rep.push("corrupted sigma inverse is rejected", !pres.all_passed(), "");
    let mut rejected = true;
    for n in 1..=4 {
        let rn = r_elem(&r, n);
        rejected &= !rn_identity_holds(n as u32, &rn.add(&p("d")?))?;
        rejected &= !rn_identity_holds(n as u32, &rn.add(&p("t^2")?))?;
    }
    rep.push("corrupted r_n coefficients are rejected", rejected, "");
    let f = non_ideal_family()?;
    rep.push("non-ideal homogeneous family is rejected", !validate_family(&f, IdealKind::Twosided)?, "");
    let faulty = verify_presentation(&w.with_fault(Fault::ZzShift), 2)?;
    rep.push("shifted [[n,m]] is rejected", !faulty.all_passed(), "");
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("spectrum".parse::<Suite>().unwrap(), Suite::Spectrum);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn controls_pass() {
        let rep = controls_suite().unwrap();
        assert!(rep.all_passed(), "{rep}");
    }
}
