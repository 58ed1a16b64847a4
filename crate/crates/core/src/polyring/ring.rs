use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::{self, ExprValue, ParseOptions};
use crate::qfield::QRat;

/// Maximum number of variables in a coefficient ring.
pub const MAX_VARS: usize = 4;

/// Exponent vector; entries past the ring's variable count stay zero.
pub type Exps = [i32; MAX_VARS];

/// Commutative coefficient ring `k[v_1, ..., v_n]` with some variables inverted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingSpec {
    vars: Vec<String>,
    inv: Vec<bool>,
}

impl RingSpec {
    pub fn new(vars: &[&str], invertible: &[&str]) -> Result<Arc<Self>> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::RingMismatch(format!("need 1..={MAX_VARS} variables")));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::RingMismatch(format!("duplicate variable {v}")));
            }
            if v == &"q" || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::RingMismatch(format!("bad variable name {v}")));
            }
        }
        for w in invertible {
            if !vars.contains(w) {
                return Err(Error::RingMismatch(format!("invertible {w} is not a variable")));
            }
        }
        Ok(Arc::new(RingSpec {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            inv: vars.iter().map(|v| invertible.contains(v)).collect(),
        }))
    }

    /// `k[u,t,d]`.
    pub fn utd() -> Arc<Self> {
        Self::new(&["u", "t", "d"], &[]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.inv[i]
    }

    pub fn invertible_vars(&self) -> Vec<&str> {
        self.vars.iter().zip(&self.inv).filter(|(_, &b)| b).map(|(v, _)| v.as_str()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// True if the exponent vector is legal in this ring.
    pub fn admits(&self, e: &Exps) -> bool {
        e.iter().enumerate().all(|(i, &x)| if i >= self.vars.len() { x == 0 } else { x >= 0 || self.inv[i] })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> =
            self.vars.iter().zip(&self.inv).map(|(v, &i)| if i { format!("{v}^±") } else { v.clone() }).collect();
        write!(f, "k[{}]", vs.join(","))
    }
}

/// Polynomial (Laurent in the invertible variables) over `Q(q)`.
#[derive(Clone)]
pub struct CoefPoly {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Exps, QRat>,
}

impl PartialEq for CoefPoly {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}

impl Eq for CoefPoly {}

impl std::hash::Hash for CoefPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.terms.hash(h);
    }
}

pub fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut r = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        r[i] = a[i] + b[i];
    }
    r
}

impl CoefPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        CoefPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: QRat) -> Self {
        Self::monomial(ring, [0; MAX_VARS], c)
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, QRat::one())
    }

    /// `c * v^e`; panics if the exponents do not fit the ring.
    pub fn monomial(ring: &Arc<RingSpec>, e: Exps, c: QRat) -> Self {
        assert!(ring.admits(&e), "exponent {e:?} not allowed in {ring}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        CoefPoly { ring: ring.clone(), terms }
    }

    /// The variable called `name`.
    pub fn var(ring: &Arc<RingSpec>, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("no variable {name} in {ring}"));
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(ring, e, QRat::one())
    }

    pub fn from_terms(ring: &Arc<RingSpec>, terms: impl IntoIterator<Item = (Exps, QRat)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if !ring.admits(&e) {
                return Err(Error::SubstitutionLeavesRing(format!("exponent {e:?} in {ring}")));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// Parse a polynomial expression over this ring.
    pub fn parse(ring: &Arc<RingSpec>, s: &str) -> Result<Self> {
        let e = expr::parse(s, ParseOptions { allow_division: true })?;
        e.eval(&|v| Self::constant(ring, QRat::from_bigint(v.clone())), &|name, pos| {
            if name == "q" {
                return Ok(Self::constant(ring, QRat::q()));
            }
            match ring.index_of(name) {
                Some(_) => Ok(Self::var(ring, name)),
                None => Err(Error::Parse { pos, msg: format!("unknown identifier '{name}'") }),
            }
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &QRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exps) -> QRat {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<QRat> {
        match self.terms.len() {
            0 => Some(QRat::zero()),
            1 => self.terms.get(&[0; MAX_VARS]).cloned(),
            _ => None,
        }
    }

    /// Single-term view `(exps, coeff)`.
    pub fn as_monomial(&self) -> Option<(Exps, QRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
        } else {
            None
        }
    }

    /// Inverse if this is a unit of the ring (a monomial in invertible variables).
    pub fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let mut ne = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            if e[i] != 0 && !self.ring.inv[i] {
                return None;
            }
            ne[i] = -e[i];
        }
        Some(Self::monomial(&self.ring, ne, c.inv().ok()?))
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).max().unwrap_or(0)
    }

    /// Largest absolute-exponent sum over the terms.
    pub fn abs_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().map(|x| x.abs()).sum::<i32>()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exps, c: &QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn same_ring(&self, o: &Self) {
        debug_assert!(Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring, "ring mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &-c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        CoefPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, k: &QRat) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        CoefPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: HashMap<Exps, QRat> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = exps_add(ea, eb);
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        CoefPoly { ring: self.ring.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Multiply by `c * v^e`.
    pub fn mul_term(&self, e: &Exps, c: &QRat) -> Self {
        let terms = self.terms.iter().map(|(x, k)| (exps_add(x, e), k * c)).collect();
        CoefPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative only for units.
    pub fn pow_i(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(u32::try_from(k).map_err(|_| Error::Overflow)?));
        }
        let inv = self
            .unit_inverse()
            .ok_or_else(|| Error::SubstitutionLeavesRing(format!("negative power of non-unit {self}")))?;
        Ok(inv.pow(u32::try_from(-k).map_err(|_| Error::Overflow)?))
    }

    /// Divide by a unit of the ring.
    pub fn div_unit(&self, u: &Self) -> Result<Self> {
        let inv = u.unit_inverse().ok_or_else(|| Error::SubstitutionLeavesRing(format!("division by non-unit {u}")))?;
        Ok(self.mul(&inv))
    }

    /// Evaluate at a point given by one value per variable.
    pub fn eval(&self, point: &[QRat]) -> Result<QRat> {
        let mut acc = QRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate().take(self.ring.nvars()) {
                if x != 0 {
                    t = &t * &point[i].pow(x as i64)?;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`; images live in `target`.
    pub fn substitute(&self, images: &[CoefPoly], target: &Arc<RingSpec>) -> Result<Self> {
        if self.terms.is_empty() {
            return Ok(Self::zero(target));
        }
        if let Some(mono) = monomial_images(images) {
            let mut out = Self::zero(target);
            for (e, c) in &self.terms {
                let mut ne = [0; MAX_VARS];
                let mut k = c.clone();
                for (i, &x) in e.iter().enumerate().take(self.ring.nvars()) {
                    if x == 0 {
                        continue;
                    }
                    let (ie, ic) = &mono[i];
                    for j in 0..MAX_VARS {
                        ne[j] += ie[j] * x;
                    }
                    k = &k * &ic.pow(x as i64)?;
                }
                if !target.admits(&ne) {
                    return Err(Error::SubstitutionLeavesRing(format!("exponent {ne:?} in {target}")));
                }
                out.add_term(ne, &k);
            }
            return Ok(out);
        }
        let mut cache: HashMap<(usize, i32), CoefPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate().take(self.ring.nvars()) {
                if x == 0 {
                    continue;
                }
                let p = match cache.get(&(i, x)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i].pow_i(x as i64)?;
                        cache.insert((i, x), p.clone());
                        p
                    }
                };
                t = t.mul(&p);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Re-home into another ring with the same variable names in a possibly
    /// different order or with more variables / inverses.
    pub fn to_ring(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| {
                target.index_of(v).ok_or_else(|| Error::RingMismatch(format!("variable {v} missing from {target}")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = [0; MAX_VARS];
            for (i, &j) in map.iter().enumerate() {
                ne[j] = e[i];
            }
            if !target.admits(&ne) {
                return Err(Error::SubstitutionLeavesRing(format!("{self} does not lie in {target}")));
            }
            out.add_term(ne, c);
        }
        Ok(out)
    }

    /// Terms sorted by descending total degree, then descending exponents.
    fn display_order(&self) -> Vec<(&Exps, &QRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        v
    }
}

fn monomial_images(images: &[CoefPoly]) -> Option<Vec<(Exps, QRat)>> {
    images.iter().map(|p| p.as_monomial()).collect()
}

impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.display_order() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .take(self.ring.nvars())
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let v = &self.ring.vars[i];
                    match x {
                        1 => v.clone(),
                        _ if x < 0 => format!("{v}^({x})"),
                        _ => format!("{v}^{x}"),
                    }
                })
                .collect();
            let (neg, mag) = split_sign(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoefPoly[{}]({self})", self.ring)
    }
}

/// Split off a sign when the numerator is a single negative term.
fn split_sign(c: &QRat) -> (bool, QRat) {
    let n = c.numerator();
    let nz: Vec<&BigInt> = n.coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).collect();
    if nz.len() == 1 && num_traits::Signed::is_negative(nz[0]) {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl ExprValue for CoefPoly {
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(CoefPoly::add(self, o))
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(CoefPoly::sub(self, o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(CoefPoly::mul(self, o))
    }
    fn neg(&self) -> Result<Self> {
        Ok(CoefPoly::neg(self))
    }
    fn div(&self, o: &Self, pos: usize) -> Result<Self> {
        match o.unit_inverse() {
            Some(inv) => Ok(CoefPoly::mul(self, &inv)),
            None => Err(Error::Parse { pos, msg: "division by a non-unit".into() }),
        }
    }
    fn pow(&self, k: i64, pos: usize) -> Result<Self> {
        self.pow_i(k).map_err(|_| Error::Parse { pos, msg: "negative power of a non-unit".into() })
    }
}
