//! The 2x2 reflection equation algebra as the GWA `k[u,t,d][x, y; sigma, z]`
//! with `sigma(u) = q^2 u`, `sigma(t) = t`, `sigma(d) = d` and
//! `z = d + q^-2 t u - q^-4 u^2`.
//!
//! Dictionary: `u22 = u`, `u11 = t - q^-2 u`, `u21 = x`, `u12 = y`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, ParseOptions};
use crate::gwa::{is_normal, GwaElem, GwaInstance};
use crate::polyring::{degree_cap, monomials_up_to, CoefPoly, Exps, RingSpec, SigmaMap};
use crate::qfield::{QMatrix, QRat};
use crate::report::Report;

/// The algebra, shared.
pub fn rea_instance() -> Arc<GwaInstance> {
    static INST: OnceLock<Arc<GwaInstance>> = OnceLock::new();
    INST.get_or_init(|| {
        let r = RingSpec::utd();
        let s = SigmaMap::q_diagonal(&r, &[2, 0, 0]).expect("diagonal sigma");
        let z = CoefPoly::parse(&r, "d + q^-2*t*u - q^-4*u^2").expect("z parses");
        GwaInstance::new(s, z).expect("valid instance")
    })
    .clone()
}

/// Generator names accepted in words.
pub const IDENTS: [&str; 10] = ["u11", "u12", "u21", "u22", "u", "t", "d", "x", "y", "q"];

/// A parsed word in the generators `u11, u12, u21, u22` (and `u, t, d, x, y, q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReaWord(Expr);

impl ReaWord {
    pub fn parse(s: &str) -> Result<Self> {
        let e = expr::parse(s, ParseOptions { allow_division: false })?;
        check_idents(&e)?;
        Ok(ReaWord(e))
    }

    pub fn expr(&self) -> &Expr {
        &self.0
    }

    pub fn product(&self, o: &ReaWord) -> ReaWord {
        ReaWord(Expr::Mul(Box::new(self.0.clone()), Box::new(o.0.clone())))
    }

    pub fn sum(&self, o: &ReaWord) -> ReaWord {
        ReaWord(Expr::Add(Box::new(self.0.clone()), Box::new(o.0.clone())))
    }

    /// Evaluate with `env` giving the image of each generator.
    pub fn eval_with(&self, inst: &Arc<GwaInstance>, env: &dyn Fn(&str) -> Option<GwaElem>) -> Result<GwaElem> {
        self.0.eval(&|v| GwaElem::scalar(inst, QRat::from_bigint(v.clone())), &|name, pos| {
            if name == "q" {
                return Ok(GwaElem::scalar(inst, QRat::q()));
            }
            env(name).ok_or_else(|| Error::Parse { pos, msg: format!("unknown identifier '{name}'") })
        })
    }
}

fn check_idents(e: &Expr) -> Result<()> {
    fn first_bad(e: &Expr) -> Option<(String, usize)> {
        match e {
            Expr::Int(_) => None,
            Expr::Ident { name, pos } => (!IDENTS.contains(&name.as_str())).then(|| (name.clone(), *pos)),
            Expr::Neg(a) | Expr::Pow { base: a, .. } => first_bad(a),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => first_bad(a).or_else(|| first_bad(b)),
            Expr::Div { num, den, .. } => first_bad(num).or_else(|| first_bad(den)),
        }
    }
    match first_bad(e) {
        Some((name, pos)) => Err(Error::Parse { pos, msg: format!("unknown identifier '{name}'") }),
        None => Ok(()),
    }
}

/// Image of a generator name in GWA coordinates.
pub fn generator(name: &str) -> Option<GwaElem> {
    let w = rea_instance();
    let p = |s: &str| CoefPoly::parse(w.ring(), s).expect("literal parses");
    Some(match name {
        "u22" | "u" => GwaElem::ring(&w, p("u")),
        "u11" => GwaElem::ring(&w, p("t - q^-2*u")),
        "t" => GwaElem::ring(&w, p("t")),
        "d" => GwaElem::ring(&w, p("d")),
        "u21" | "x" => GwaElem::x(&w),
        "u12" | "y" => GwaElem::y(&w),
        _ => return None,
    })
}

pub fn rea_to_gwa(w: &ReaWord) -> Result<GwaElem> {
    w.eval_with(&rea_instance(), &generator)
}

/// Parse and normalize.
pub fn reduce(s: &str) -> Result<GwaElem> {
    rea_to_gwa(&ReaWord::parse(s)?)
}

/// The six defining relations, each as `lhs - rhs`.
pub const RELATIONS: [(&str, &str); 6] = [
    ("u11 u22 = u22 u11", "u11*u22 - u22*u11"),
    ("u11 u12 = u12 (u11 + (q^-2-1) u22)", "u11*u12 - u12*(u11 + (q^-2-1)*u22)"),
    ("u21 u11 = (u11 + (q^-2-1) u22) u21", "u21*u11 - (u11 + (q^-2-1)*u22)*u21"),
    ("u22 u12 = q^2 u12 u22", "u22*u12 - q^2*u12*u22"),
    ("u21 u22 = q^2 u22 u21", "u21*u22 - q^2*u22*u21"),
    ("u21 u12 - u12 u21 = (q^-2-1) u22 (u22 - u11)", "u21*u12 - u12*u21 - (q^-2-1)*u22*(u22 - u11)"),
];

pub fn relation_words() -> Vec<(&'static str, ReaWord)> {
    RELATIONS.iter().map(|(n, s)| (*n, ReaWord::parse(s).expect("relation parses"))).collect()
}

/// Evaluate every relation with `env` and report which vanish.
pub fn check_relations_with(inst: &Arc<GwaInstance>, env: &dyn Fn(&str) -> Option<GwaElem>) -> Result<Report> {
    let mut rep = Report::new();
    for (name, w) in relation_words() {
        let v = w.eval_with(inst, env)?;
        let detail = if v.is_zero() { String::new() } else { format!("residue {v}") };
        rep.push(name, v.is_zero(), detail);
    }
    Ok(rep)
}

pub fn check_relations() -> Result<Report> {
    check_relations_with(&rea_instance(), &generator)
}

/// The automorphism `u11 -> a u11, u12 -> (a/g) u12, u21 -> a g u21, u22 -> a u22`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReaAut {
    alpha: QRat,
    gamma: QRat,
}

impl ReaAut {
    pub fn new(alpha: QRat, gamma: QRat) -> Result<Self> {
        if alpha.is_zero() || gamma.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ReaAut { alpha, gamma })
    }

    pub fn identity() -> Self {
        ReaAut { alpha: QRat::one(), gamma: QRat::one() }
    }

    pub fn alpha(&self) -> &QRat {
        &self.alpha
    }

    pub fn gamma(&self) -> &QRat {
        &self.gamma
    }

    /// `self o other`.
    pub fn compose(&self, other: &ReaAut) -> ReaAut {
        ReaAut { alpha: &self.alpha * &other.alpha, gamma: &self.gamma * &other.gamma }
    }

    /// Images of the four generators, written on the `u_ij` side.
    pub fn generator_image(&self, name: &str) -> Option<GwaElem> {
        let (a, g) = (&self.alpha, &self.gamma);
        let c = match name {
            "u11" | "u22" | "u" | "t" => a.clone(),
            "d" => a * a,
            "u21" | "x" => a * g,
            "u12" | "y" => a / g,
            _ => return None,
        };
        Some(generator(name)?.scale(&c))
    }
}

/// Apply in GWA coordinates: `u -> a u, t -> a t, d -> a^2 d, x -> a g x, y -> (a/g) y`.
pub fn apply_aut(phi: &ReaAut, a: &GwaElem) -> Result<GwaElem> {
    let w = a.instance();
    let ring = w.ring();
    let al = CoefPoly::constant(ring, phi.alpha.clone());
    let images = vec![
        CoefPoly::var(ring, "u").mul(&al),
        CoefPoly::var(ring, "t").mul(&al),
        CoefPoly::var(ring, "d").mul(&al).mul(&al),
    ];
    let xs = &phi.alpha * &phi.gamma;
    let ys = &phi.alpha / &phi.gamma;
    a.map_coeffs(w, |m, c| {
        let s = if m >= 0 { xs.pow(m) } else { ys.pow(-m) };
        Ok(c.substitute(&images, ring)?.scale(&s?))
    })
}

/// Coordinates of elements of `R v_m` over the monomial basis used by the scans.
struct Coords {
    index: BTreeMap<(i64, Exps), usize>,
}

impl Coords {
    fn new() -> Self {
        Coords { index: BTreeMap::new() }
    }

    fn row(&mut self, m: i64, e: Exps) -> usize {
        let k = self.index.len();
        *self.index.entry((m, e)).or_insert(k)
    }
}

/// Basis of the central elements among `u^a t^b d^c v_m` with `a+b+c+|m| <= D`.
pub fn central_scan(max_deg: u32) -> Result<Vec<GwaElem>> {
    if max_deg > degree_cap() {
        return Err(Error::DegreeCapExceeded { cap: degree_cap() });
    }
    let w = rea_instance();
    let d = max_deg as i64;
    let mut unknowns: Vec<GwaElem> = Vec::new();
    for m in -d..=d {
        for e in monomials_up_to(3, (d - m.abs()) as i32) {
            unknowns.push(GwaElem::term(&w, CoefPoly::monomial(w.ring(), e, QRat::one()), m));
        }
    }
    let tests = [GwaElem::var(&w, "u"), GwaElem::x(&w), GwaElem::y(&w)];
    let mut coords = Coords::new();
    let mut entries: Vec<(usize, usize, QRat)> = Vec::new();
    for (j, b) in unknowns.iter().enumerate() {
        for (k, g) in tests.iter().enumerate() {
            let c = b.commutator(g)?;
            for (m, p) in c.components() {
                for (e, v) in p.terms() {
                    // keep the three commutators in separate row blocks
                    let r = coords.row(m * 3 + k as i64, *e);
                    entries.push((r, j, v.clone()));
                }
            }
        }
    }
    let mut mat = QMatrix::zeros(coords.index.len().max(1), unknowns.len());
    for (r, j, v) in entries {
        mat.set(r, j, v);
    }
    let mut out = Vec::new();
    for vec in mat.kernel_vectors() {
        let mut acc = GwaElem::zero(&w);
        for (j, c) in vec.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&unknowns[j].scale(c))?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// A sigma-eigenspace of `k[u,t,d]` in bounded degree.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFamily {
    pub eigenvalue: QRat,
    pub basis: Vec<CoefPoly>,
}

/// Normal elements of `k[u,t,d]` of total degree at most `D`, grouped by
/// sigma-eigenvalue. Each basis element is confirmed with [`is_normal`].
pub fn normal_scan(max_deg: u32) -> Result<Vec<NormalFamily>> {
    if max_deg > degree_cap() {
        return Err(Error::DegreeCapExceeded { cap: degree_cap() });
    }
    let w = rea_instance();
    let ring = w.ring();
    let monos = monomials_up_to(3, max_deg as i32);
    let pos: BTreeMap<Exps, usize> = monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut sig = QMatrix::zeros(monos.len(), monos.len());
    for (j, e) in monos.iter().enumerate() {
        let img = w.sigma().apply(&CoefPoly::monomial(ring, *e, QRat::one()))?;
        for (f, c) in img.terms() {
            let i = *pos.get(f).ok_or_else(|| Error::HypothesisUnverified("sigma does not preserve degree".into()))?;
            sig.set(i, j, c.clone());
        }
    }
    let mut eigen: Vec<QRat> = Vec::new();
    for c in sig.diagonal() {
        if !eigen.contains(&c) {
            eigen.push(c);
        }
    }
    let mut out = Vec::new();
    for lam in eigen {
        let shifted = sig.sub(&QMatrix::scalar(monos.len(), &lam))?;
        let mut basis = Vec::new();
        for v in shifted.kernel_vectors() {
            let f = CoefPoly::from_terms(ring, monos.iter().zip(v).map(|(e, c)| (*e, c)))?;
            match is_normal(&f, &w)? {
                Some(c) if c.as_constant().as_ref() == Some(&lam) => basis.push(f),
                _ => return Err(Error::HypothesisUnverified(format!("eigenvector {f} is not normal"))),
            }
        }
        if !basis.is_empty() {
            out.push(NormalFamily { eigenvalue: lam, basis });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gwa(s: &str) -> GwaElem {
        reduce(s).unwrap()
    }

    #[test]
    fn dictionary() {
        let w = rea_instance();
        assert_eq!(gwa("u22"), GwaElem::var(&w, "u"));
        assert_eq!(gwa("u11"), GwaElem::ring(&w, CoefPoly::parse(w.ring(), "t - q^-2*u").unwrap()));
        let lhs = gwa("u21*u12 - u12*u21");
        let rhs = gwa("(q^-2-1)*u22*(u22-u11)");
        assert_eq!(lhs, rhs);
        assert_eq!(gwa("x*y - y*x"), GwaElem::ring(&w, w.sigma_z(1).unwrap().sub(w.z())));
        assert_eq!(gwa("q^2"), GwaElem::scalar(&w, QRat::q_pow(2)));
        // t and d recovered from the u_ij side
        assert_eq!(gwa("u11 + q^-2*u22"), GwaElem::var(&w, "t"));
        assert_eq!(gwa("y*x - q^-2*u11*u22"), GwaElem::var(&w, "d"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ReaWord::parse("u11 + v"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(reduce("u^-1"), Err(Error::Parse { .. })));
        assert!(ReaWord::parse("u11/u22").is_err());
    }

    #[test]
    fn relations_hold() {
        let rep = check_relations().unwrap();
        assert_eq!(rep.checks.len(), 6);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn automorphisms() {
        let w = rea_instance();
        let d = GwaElem::var(&w, "d");
        let a = ReaAut::new(QRat::from_int(3), QRat::q()).unwrap();
        assert_eq!(apply_aut(&a, &d).unwrap(), d.scale(&QRat::from_int(9)));
        let id = ReaAut::identity();
        let e = gwa("u21^2*u11 + u12*u22");
        assert_eq!(apply_aut(&id, &e).unwrap(), e);
        for g in ["u11", "u12", "u21", "u22"] {
            assert_eq!(apply_aut(&a, &generator(g).unwrap()).unwrap(), a.generator_image(g).unwrap());
        }
        let rep = check_relations_with(&w, &|n| a.generator_image(n)).unwrap();
        assert!(rep.all_passed());
        assert!(ReaAut::new(QRat::zero(), QRat::one()).is_err());
    }

    #[test]
    fn center_small() {
        let c0 = central_scan(0).unwrap();
        assert_eq!(c0.len(), 1);
        assert_eq!(c0[0], GwaElem::one(&rea_instance()));
        let c2 = central_scan(2).unwrap();
        assert_eq!(c2.len(), 6);
        for c in &c2 {
            let r = c.as_ring().expect("central elements lie in R");
            assert!(r.terms().all(|(e, _)| e[0] == 0));
        }
    }

    #[test]
    fn normal_elements() {
        let fams = normal_scan(2).unwrap();
        let w = rea_instance();
        let u = CoefPoly::var(w.ring(), "u");
        let q2 = fams.iter().find(|f| f.eigenvalue == QRat::q_pow(2)).unwrap();
        assert!(q2.basis.contains(&u));
        let one = fams.iter().find(|f| f.eigenvalue.is_one()).unwrap();
        assert_eq!(one.basis.len(), 6);
        // u + t lies in no eigenspace: it is not in the span of any single family
        let ut = CoefPoly::parse(w.ring(), "u + t").unwrap();
        for f in &fams {
            assert!(!f.basis.contains(&ut));
        }
    }
}
