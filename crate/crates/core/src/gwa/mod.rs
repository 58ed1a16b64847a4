//! Generalized Weyl algebras `R[x, y; sigma, z]` over commutative `R`.

mod elem;
mod instance;
mod laurent;

use std::sync::Arc;

pub use elem::GwaElem;
pub use instance::{Fault, GwaInstance};
pub use laurent::{to_skew_laurent, LaurentVariant, SkewLaurent};

use crate::error::{Error, Result};
use crate::polyring::{CoefPoly, MAX_VARS};
use crate::report::Report;

/// Check the defining relations, `sigma o sigma^-1 = id`, and the identity
/// `[[a,b]][[a+b,c]] = sigma^a([[b,c]]) [[a,b+c]]` for `|a|,|b|,|c| <= bound`.
pub fn verify_presentation(w: &Arc<GwaInstance>, bound: i64) -> Result<Report> {
    let mut rep = Report::new();
    let x = GwaElem::x(w);
    let y = GwaElem::y(w);
    let z = GwaElem::ring(w, w.z().clone());
    let sz = GwaElem::ring(w, w.sigma_z(1)?);

    let yx = y.mul(&x)?;
    rep.push("yx = z", yx == z, if yx == z { String::new() } else { format!("yx = {yx}") });
    let xy = x.mul(&y)?;
    rep.push("xy = sigma(z)", xy == sz, if xy == sz { String::new() } else { format!("xy = {xy}") });

    let sigma = w.sigma();
    for v in w.ring().vars() {
        let r = CoefPoly::var(w.ring(), v);
        let re = GwaElem::ring(w, r.clone());
        let lhs = x.mul(&re)?;
        let rhs = GwaElem::ring(w, sigma.apply(&r)?).mul(&x)?;
        rep.push(format!("x{v} = sigma({v})x"), lhs == rhs, "");
        let lhs = y.mul(&re)?;
        let rhs = GwaElem::ring(w, sigma.apply_inv(&r)?).mul(&y)?;
        rep.push(format!("y{v} = sigma^-1({v})y"), lhs == rhs, "");
    }

    let defect = sigma.inverse_defect();
    rep.push("sigma o sigma^-1 = id", defect.is_none(), defect.unwrap_or_default());

    let (mut total, mut bad) = (0usize, Vec::new());
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                total += 1;
                let lhs = w.zz(a, b)?.mul(&w.zz(a + b, c)?);
                let rhs = w.sigma_pow(&w.zz(b, c)?, a)?.mul(&w.zz(a, b + c)?);
                if lhs != rhs {
                    bad.push((a, b, c));
                }
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{total} identities"),
        Some(t) => format!("{} of {total} fail, first at (a,b,c) = {t:?}", bad.len()),
    };
    rep.push("associativity identity", bad.is_empty(), detail);
    Ok(rep)
}

/// Whether `z` is a unit multiple of some `sigma^k(z)`, `k != 0`, is decided
/// exactly when `sigma` is `q`-diagonal: this happens iff `z` is weight-homogeneous.
fn check_normal_hypothesis(w: &GwaInstance) -> Result<()> {
    let weights = w.sigma().q_weights().ok_or_else(|| {
        Error::HypothesisUnverified("sigma is not q-diagonal; the side condition on z is not decided".into())
    })?;
    let mut seen = None;
    for (e, _) in w.z().terms() {
        let wt: i64 = e.iter().zip(&weights).map(|(a, b)| *a as i64 * b).sum();
        if seen.is_some_and(|s| s != wt) {
            return Ok(());
        }
        seen = Some(wt);
    }
    Err(Error::HypothesisUnverified("z is fixed up to a unit by a nonzero power of sigma".into()))
}

/// `Some(c)` with `sigma(r) = c r` for a unit `c` of `R`, or `None` if `r` is not normal.
pub fn is_normal(r: &CoefPoly, w: &GwaInstance) -> Result<Option<CoefPoly>> {
    check_normal_hypothesis(w)?;
    if r.ring() != w.ring() {
        return Err(Error::RingMismatch(format!("{r} is not in {}", w.ring())));
    }
    let Some((er, cr)) = r.terms().last() else {
        return Ok(None);
    };
    let sr = w.sigma().apply(r)?;
    let Some((es, cs)) = sr.terms().last() else {
        return Ok(None);
    };
    let mut e = [0i32; MAX_VARS];
    for i in 0..MAX_VARS {
        e[i] = es[i] - er[i];
    }
    if !w.ring().admits(&e) {
        return Ok(None);
    }
    let c = CoefPoly::monomial(w.ring(), e, cs / cr);
    if c.unit_inverse().is_none() || c.mul(r) != sr {
        return Ok(None);
    }
    Ok(Some(c))
}

/// Commutes with every ring variable, `x` and `y`.
pub fn is_central(a: &GwaElem) -> Result<bool> {
    let w = a.instance();
    let mut gens: Vec<GwaElem> = w.ring().vars().iter().map(|v| GwaElem::var(w, v)).collect();
    gens.push(GwaElem::x(w));
    gens.push(GwaElem::y(w));
    for g in &gens {
        if !a.commutator(g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R[x, y; sigma^-1, sigma(z)]`.
pub fn alternative_instance(w: &GwaInstance) -> Result<Arc<GwaInstance>> {
    GwaInstance::new(w.sigma().inverse(), w.sigma_z(1)?)
}

/// The isomorphism `W -> R[x, y; sigma^-1, sigma(z)]`, `a v_m -> a v_{-m}`.
pub fn to_alternative(a: &GwaElem, alt: &Arc<GwaInstance>) -> Result<GwaElem> {
    a.map_terms(alt, |m, c| Ok((-m, c.clone())))
}

/// The anti-isomorphism `W -> R[x, y; sigma^-1, sigma(z)]`,
/// `a v_m -> sigma^{-m}(a) v_m`, reversing products.
pub fn to_opposite(a: &GwaElem, alt: &Arc<GwaInstance>) -> Result<GwaElem> {
    let w = a.instance();
    a.map_terms(alt, |m, c| Ok((m, w.sigma_pow(c, -m)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{RingSpec, SigmaMap};

    fn a_inst() -> Arc<GwaInstance> {
        let r = RingSpec::utd();
        let s = SigmaMap::q_diagonal(&r, &[2, 0, 0]).unwrap();
        let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2").unwrap();
        GwaInstance::new(s, z).unwrap()
    }

    fn p(w: &GwaInstance, s: &str) -> CoefPoly {
        CoefPoly::parse(w.ring(), s).unwrap()
    }

    #[test]
    fn zz_cases() {
        let w = a_inst();
        assert_eq!(w.zz(1, -1).unwrap(), w.sigma_z(1).unwrap());
        assert!(w.zz(2, 3).unwrap().is_one());
        assert_eq!(w.zz(-1, 1).unwrap(), w.z().clone());
        assert_eq!(w.zz(1, -2).unwrap(), w.sigma_z(1).unwrap());
        assert_eq!(w.zz(-2, 1).unwrap(), w.sigma_z(-1).unwrap());
        assert_eq!(w.zz(-1, 2).unwrap(), w.z().clone());
        assert_eq!(w.zz(2, -2).unwrap(), w.sigma_z(1).unwrap().mul(&w.sigma_z(2).unwrap()));
    }

    #[test]
    fn products() {
        let w = a_inst();
        let x = GwaElem::x(&w);
        let y = GwaElem::y(&w);
        assert_eq!(x.mul(&y).unwrap(), GwaElem::ring(&w, w.sigma_z(1).unwrap()));
        let u = GwaElem::var(&w, "u");
        assert_eq!(x.mul(&u).unwrap(), GwaElem::term(&w, p(&w, "q^2*u"), 1));
        let x2y = x.pow(2).unwrap().mul(&y).unwrap();
        assert_eq!(x2y, GwaElem::term(&w, w.sigma_z(2).unwrap(), 1));
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx, GwaElem::ring(&w, w.z().clone()));
    }

    #[test]
    fn presentation() {
        let w = a_inst();
        let rep = verify_presentation(&w, 3).unwrap();
        assert!(rep.all_passed(), "{rep}");
        assert_eq!(rep.get("associativity identity").unwrap().detail, "343 identities");

        let r = w.ring().clone();
        let bad = SigmaMap::new_unchecked(
            &r,
            vec![p(&w, "q^2*u"), p(&w, "t"), p(&w, "d")],
            vec![p(&w, "q^-3*u"), p(&w, "t"), p(&w, "d")],
        )
        .unwrap();
        let wb = GwaInstance::new(bad, w.z().clone()).unwrap();
        let rep = verify_presentation(&wb, 1).unwrap();
        assert!(!rep.get("sigma o sigma^-1 = id").unwrap().passed);

        let faulty = w.with_fault(Fault::ZzShift);
        let rep = verify_presentation(&faulty, 2).unwrap();
        assert!(!rep.get("associativity identity").unwrap().passed);
    }

    #[test]
    fn laurent() {
        let w = a_inst();
        let x = GwaElem::x(&w);
        let y = GwaElem::y(&w);
        let v1 = LaurentVariant::YToZxInv;
        assert_eq!(to_skew_laurent(&y, v1).unwrap(), SkewLaurent::term(&w, w.z().clone(), -1));
        assert_eq!(to_skew_laurent(&x, v1).unwrap(), SkewLaurent::term(&w, CoefPoly::one(w.ring()), 1));
        for v in [v1, LaurentVariant::XToXz] {
            let lhs = to_skew_laurent(&y.mul(&x).unwrap(), v).unwrap();
            let rhs = to_skew_laurent(&y, v).unwrap().mul(&to_skew_laurent(&x, v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, SkewLaurent::term(&w, w.z().clone(), 0));
        }
    }

    #[test]
    fn normal_and_central() {
        let w = a_inst();
        assert_eq!(is_normal(&p(&w, "u"), &w).unwrap().unwrap(), p(&w, "q^2"));
        assert!(is_normal(&p(&w, "t"), &w).unwrap().unwrap().is_one());
        assert!(is_normal(&p(&w, "u+t"), &w).unwrap().is_none());
        assert!(is_central(&GwaElem::var(&w, "t")).unwrap());
        assert!(is_central(&GwaElem::var(&w, "d")).unwrap());
        assert!(!is_central(&GwaElem::var(&w, "u")).unwrap());
        assert!(!is_central(&GwaElem::x(&w)).unwrap());

        let r = RingSpec::new(&["u"], &[]).unwrap();
        let s = SigmaMap::q_diagonal(&r, &[2]).unwrap();
        let hom = GwaInstance::new(s, CoefPoly::parse(&r, "u^2").unwrap()).unwrap();
        assert!(matches!(is_normal(&CoefPoly::var(&r, "u"), &hom), Err(Error::HypothesisUnverified(_))));
    }

    #[test]
    fn opposite_symmetry() {
        let w = a_inst();
        let alt = alternative_instance(&w).unwrap();
        let a = GwaElem::from_components(&w, [(2, p(&w, "u+t")), (-1, p(&w, "d"))]).unwrap();
        let b = GwaElem::from_components(&w, [(-2, p(&w, "u^2")), (1, p(&w, "t-1"))]).unwrap();
        let ab = a.mul(&b).unwrap();
        let (ia, ib) = (to_alternative(&a, &alt).unwrap(), to_alternative(&b, &alt).unwrap());
        assert_eq!(to_alternative(&ab, &alt).unwrap(), ia.mul(&ib).unwrap());
        let (oa, ob) = (to_opposite(&a, &alt).unwrap(), to_opposite(&b, &alt).unwrap());
        assert_eq!(to_opposite(&ab, &alt).unwrap(), ob.mul(&oa).unwrap());
    }
}
