use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::ring::{CoefPoly, Exps, RingSpec, MAX_VARS};
use crate::error::{Error, Result};
use crate::qfield::QRat;

const GV: usize = 2 * MAX_VARS;

/// Monomial in the ring variables followed by adjoined inverse variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Mono {
    deg: u32,
    e: [u16; GV],
}

impl Mono {
    const ONE: Mono = Mono { deg: 0, e: [0; GV] };

    fn mul(&self, o: &Mono) -> Mono {
        let e = std::array::from_fn(|i| self.e[i] + o.e[i]);
        Mono { deg: self.deg + o.deg, e }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..GV).all(|i| self.e[i] <= o.e[i])
    }

    fn div(&self, o: &Mono) -> Mono {
        let e = std::array::from_fn(|i| self.e[i] - o.e[i]);
        Mono { deg: self.deg - o.deg, e }
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let e: [_; GV] = std::array::from_fn(|i| self.e[i].max(o.e[i]));
        let deg = e.iter().map(|&v| v as u32).sum();
        Mono { deg, e }
    }

    fn coprime(&self, o: &Mono) -> bool {
        (0..GV).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }
}

// degree reverse lexicographic
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..GV).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial keyed by monomial; the largest key is the leading term.
type Sparse = BTreeMap<Mono, QRat>;
/// Terms sorted by descending monomial, leading coefficient one.
type Dense = Vec<(Mono, QRat)>;

fn sparse_add_scaled(acc: &mut Sparse, p: &[(Mono, QRat)], m: &Mono, c: &QRat) {
    for (pm, pc) in p {
        let key = pm.mul(m);
        let v = pc * c;
        match acc.get_mut(&key) {
            Some(x) => {
                *x += &v;
                if x.is_zero() {
                    acc.remove(&key);
                }
            }
            None => {
                acc.insert(key, v);
            }
        }
    }
}

fn sparse_add_sparse_scaled(acc: &mut Sparse, p: &Sparse, m: &Mono, c: &QRat) {
    for (pm, pc) in p {
        let key = pm.mul(m);
        let v = pc * c;
        match acc.get_mut(&key) {
            Some(x) => {
                *x += &v;
                if x.is_zero() {
                    acc.remove(&key);
                }
            }
            None => {
                acc.insert(key, v);
            }
        }
    }
}

/// Maps ring exponents to internal monomials (negative exponents go to inverse slots).
#[derive(Clone, Debug)]
struct Layout {
    n: usize,
    inv_slot: [Option<usize>; MAX_VARS],
    inv_of: Vec<usize>,
}

impl Layout {
    fn new(ring: &RingSpec) -> Self {
        let n = ring.nvars();
        let mut inv_slot = [None; MAX_VARS];
        let mut inv_of = Vec::new();
        for (i, slot) in inv_slot.iter_mut().enumerate().take(n) {
            if ring.is_invertible(i) {
                *slot = Some(n + inv_of.len());
                inv_of.push(i);
            }
        }
        Layout { n, inv_slot, inv_of }
    }

    fn encode(&self, e: &Exps) -> Mono {
        let mut m = [0u16; GV];
        for i in 0..self.n {
            let x = e[i];
            if x >= 0 {
                m[i] = x as u16;
            } else {
                m[self.inv_slot[i].expect("negative exponent on invertible variable")] = (-x) as u16;
            }
        }
        Mono { deg: m.iter().map(|&x| x as u32).sum(), e: m }
    }

    fn decode(&self, m: &Mono) -> Exps {
        let mut e = [0i32; MAX_VARS];
        for (d, &s) in e.iter_mut().zip(&m.e).take(self.n) {
            *d = s as i32;
        }
        for (j, &i) in self.inv_of.iter().enumerate() {
            e[i] -= m.e[self.n + j] as i32;
        }
        e
    }

    fn to_sparse(&self, p: &CoefPoly) -> Sparse {
        let mut s = Sparse::new();
        for (e, c) in p.terms() {
            let k = self.encode(e);
            match s.get_mut(&k) {
                Some(x) => *x += c,
                None => {
                    s.insert(k, c.clone());
                }
            }
        }
        s.retain(|_, c| !c.is_zero());
        s
    }

    fn to_poly(&self, ring: &Arc<RingSpec>, s: impl IntoIterator<Item = (Mono, QRat)>) -> CoefPoly {
        CoefPoly::from_terms(ring, s.into_iter().map(|(m, c)| (self.decode(&m), c))).expect("decoded exponents fit")
    }

    /// `v v' - 1` for each invertible variable.
    fn relations(&self) -> Vec<Sparse> {
        self.inv_of
            .iter()
            .enumerate()
            .map(|(j, &i)| {
                let mut e = [0u16; GV];
                e[i] = 1;
                e[self.n + j] = 1;
                let mut s = Sparse::new();
                s.insert(Mono { deg: 2, e }, QRat::one());
                s.insert(Mono::ONE, -QRat::one());
                s
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Elem {
    poly: Dense,
    /// Cofactors against the input generators, when tracked.
    cof: Option<Vec<Sparse>>,
}

impl Elem {
    fn lm(&self) -> &Mono {
        &self.poly[0].0
    }
}

/// A reduced Gröbner basis of an ideal of a (Laurent) polynomial ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<RingSpec>,
    layout: Layout,
    elems: Vec<Elem>,
    ngens: usize,
}

fn make_monic(p: Sparse, cof: Option<Vec<Sparse>>) -> Elem {
    let lc = p.last_key_value().expect("nonzero").1.inv().expect("nonzero");
    let poly: Dense = p.into_iter().rev().map(|(m, c)| (m, &c * &lc)).collect();
    let cof = cof.map(|v| v.into_iter().map(|s| s.into_iter().map(|(m, c)| (m, &c * &lc)).collect()).collect());
    Elem { poly, cof }
}

struct Reduction {
    rem: Sparse,
    /// `(basis index, monomial, coefficient)` steps taken.
    steps: Vec<(usize, Mono, QRat)>,
}

fn reduce_full(mut f: Sparse, basis: &[Elem], track: bool) -> Reduction {
    let mut rem = Sparse::new();
    let mut steps = Vec::new();
    while let Some((m, c)) = f.pop_last() {
        match basis.iter().position(|g| g.lm().divides(&m)) {
            Some(k) => {
                let g = &basis[k];
                let mm = m.div(g.lm());
                let neg = -&c;
                // leading term cancels by construction
                sparse_add_scaled(&mut f, &g.poly[1..], &mm, &neg);
                if track {
                    steps.push((k, mm, c));
                }
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    Reduction { rem, steps }
}

fn apply_steps(mut cof: Vec<Sparse>, steps: &[(usize, Mono, QRat)], basis: &[Elem]) -> Vec<Sparse> {
    for (k, m, c) in steps {
        let neg = -c;
        let gc = basis[*k].cof.as_ref().expect("tracked");
        for (dst, src) in cof.iter_mut().zip(gc) {
            sparse_add_sparse_scaled(dst, src, m, &neg);
        }
    }
    cof
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn buchberger(inputs: Vec<Sparse>, ngens: usize, cap: u32, track: bool) -> Result<Vec<Elem>> {
    let n = inputs.len();
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(Mono, usize, usize)> = Vec::new();

    let unit_cof = |i: usize| -> Vec<Sparse> {
        let mut v = vec![Sparse::new(); n];
        v[i].insert(Mono::ONE, QRat::one());
        v
    };

    let add = |basis: &mut Vec<Elem>,
               pending: &mut HashSet<(usize, usize)>,
               queue: &mut Vec<(Mono, usize, usize)>,
               e: Elem|
     -> Result<()> {
        if e.lm().deg > cap {
            return Err(Error::DegreeCapExceeded { cap });
        }
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pending.insert((i, k));
            queue.push((g.lm().lcm(e.lm()), i, k));
        }
        basis.push(e);
        Ok(())
    };

    // inputs sorted by leading monomial so that small generators reduce the rest
    let mut order: Vec<usize> = (0..n).filter(|&i| !inputs[i].is_empty()).collect();
    order.sort_by(|&a, &b| inputs[a].last_key_value().unwrap().0.cmp(inputs[b].last_key_value().unwrap().0));
    for i in order {
        let r = reduce_full(inputs[i].clone(), &basis, track);
        if r.rem.is_empty() {
            continue;
        }
        let cof = track.then(|| apply_steps(unit_cof(i), &r.steps, &basis));
        let e = make_monic(r.rem, cof);
        let unit = e.lm().deg == 0;
        add(&mut basis, &mut pending, &mut queue, e)?;
        if unit {
            return Ok(finish(basis, track, ngens));
        }
    }

    while !queue.is_empty() {
        let best = (0..queue.len()).min_by(|&a, &b| queue[a].0.cmp(&queue[b].0)).unwrap();
        let (lcm, i, j) = queue.swap_remove(best);
        pending.remove(&(i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.lm().coprime(gj.lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }
        let mi = lcm.div(gi.lm());
        let mj = lcm.div(gj.lm());
        let mut s = Sparse::new();
        sparse_add_scaled(&mut s, &gi.poly[1..], &mi, &QRat::one());
        sparse_add_scaled(&mut s, &gj.poly[1..], &mj, &-QRat::one());
        let cof = if track {
            let mut c = vec![Sparse::new(); n];
            let (ci, cj) = (gi.cof.as_ref().unwrap(), gj.cof.as_ref().unwrap());
            for k in 0..n {
                sparse_add_sparse_scaled(&mut c[k], &ci[k], &mi, &QRat::one());
                sparse_add_sparse_scaled(&mut c[k], &cj[k], &mj, &-QRat::one());
            }
            Some(c)
        } else {
            None
        };
        let r = reduce_full(s, &basis, track);
        if r.rem.is_empty() {
            continue;
        }
        let cof = cof.map(|c| apply_steps(c, &r.steps, &basis));
        let e = make_monic(r.rem, cof);
        let unit = e.lm().deg == 0;
        add(&mut basis, &mut pending, &mut queue, e)?;
        if unit {
            break;
        }
    }
    Ok(finish(basis, track, ngens))
}

/// Minimalize and tail-reduce.
fn finish(basis: Vec<Elem>, track: bool, _ngens: usize) -> Vec<Elem> {
    if let Some(u) = basis.iter().find(|e| e.lm().deg == 0) {
        return vec![u.clone()];
    }
    let mut keep: Vec<Elem> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(j, h)| j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut out: Vec<Elem> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Elem> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let g = &keep[i];
        let lead = g.poly[0].clone();
        let tail: Sparse = g.poly[1..].iter().cloned().collect();
        let r = reduce_full(tail, &others, track);
        let mut poly: Dense = vec![lead];
        poly.extend(r.rem.into_iter().rev());
        let cof = if track {
            let mut c = g.cof.clone().unwrap();
            for (k, m, co) in &r.steps {
                let neg = -co;
                for (dst, src) in c.iter_mut().zip(others[*k].cof.as_ref().unwrap()) {
                    sparse_add_sparse_scaled(dst, src, m, &neg);
                }
            }
            Some(c)
        } else {
            None
        };
        out.push(Elem { poly, cof });
    }
    out
}

impl GroebnerBasis {
    /// Compute a reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &Arc<RingSpec>, gens: &[CoefPoly], cap: u32, track: bool) -> Result<Self> {
        let layout = Layout::new(ring);
        let mut inputs: Vec<Sparse> = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("generator {g} not in {ring}")));
            }
            inputs.push(layout.to_sparse(g));
        }
        let ngens = inputs.len();
        inputs.extend(layout.relations());
        let elems = buchberger(inputs, ngens, cap, track)?;
        Ok(GroebnerBasis { ring: ring.clone(), layout, elems, ngens })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elems.iter().any(|e| e.lm().deg == 0)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis elements mapped back to the ring (inverse variables become negative exponents).
    pub fn generators(&self) -> Vec<CoefPoly> {
        self.elems.iter().map(|e| self.layout.to_poly(&self.ring, e.poly.iter().cloned())).collect()
    }

    /// Normal form of `f`, mapped back to the ring.
    pub fn reduce(&self, f: &CoefPoly) -> CoefPoly {
        let r = reduce_full(self.layout.to_sparse(f), &self.elems, false);
        self.layout.to_poly(&self.ring, r.rem)
    }

    /// Normal form as raw `(exponent key, coefficient)` pairs in internal
    /// coordinates, suitable as coordinates for linear algebra.
    pub fn normal_form_coords(&self, f: &CoefPoly) -> Vec<([u16; GV], QRat)> {
        reduce_full(self.layout.to_sparse(f), &self.elems, false).rem.into_iter().map(|(m, c)| (m.e, c)).collect()
    }

    pub fn contains(&self, f: &CoefPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.is_unit_ideal() {
            return true;
        }
        reduce_full(self.layout.to_sparse(f), &self.elems, false).rem.is_empty()
    }

    /// Cofactors `g_i` with `f = sum g_i * gens_i`, if `f` is in the ideal.
    /// Requires a basis computed with tracking.
    pub fn certificate(&self, f: &CoefPoly) -> Option<Vec<CoefPoly>> {
        let r = reduce_full(self.layout.to_sparse(f), &self.elems, true);
        if !r.rem.is_empty() {
            return None;
        }
        let total = self.elems.first().and_then(|e| e.cof.as_ref()).map_or(self.ngens, |c| c.len());
        let mut acc = vec![Sparse::new(); total];
        for (k, m, c) in &r.steps {
            let src = self.elems[*k].cof.as_ref()?;
            for (dst, s) in acc.iter_mut().zip(src) {
                sparse_add_sparse_scaled(dst, s, m, c);
            }
        }
        Some(acc.into_iter().take(self.ngens).map(|s| self.layout.to_poly(&self.ring, s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<RingSpec> {
        RingSpec::utd()
    }

    fn p(r: &Arc<RingSpec>, s: &str) -> CoefPoly {
        CoefPoly::parse(r, s).unwrap()
    }

    #[test]
    fn membership_basics() {
        let r = ring();
        let gb = GroebnerBasis::compute(&r, &[p(&r, "t"), p(&r, "d")], 40, false).unwrap();
        assert!(!gb.contains(&p(&r, "u")));
        assert!(gb.contains(&p(&r, "u*t + d^2")));
        assert!(gb.contains(&CoefPoly::zero(&r)));
    }

    #[test]
    fn laurent_units() {
        let r = RingSpec::new(&["u", "t"], &["u"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &[p(&r, "u^3")], 40, false).unwrap();
        assert!(gb.is_unit_ideal());
        let gb = GroebnerBasis::compute(&r, &[p(&r, "u*t - u")], 40, false).unwrap();
        assert!(gb.contains(&p(&r, "t - 1")));
        assert!(!gb.contains(&p(&r, "u - 1")));
    }

    #[test]
    fn certificates_recombine() {
        let r = RingSpec::new(&["u", "t", "d"], &["u"]).unwrap();
        let z = p(&r, "d + q^-2*t*u - q^-4*u^2");
        let sz = p(&r, "d + t*u - u^2");
        let r1 = p(&r, "(q^2+1)^2*d + q^2*t^2");
        let gens = vec![sz.clone(), z.clone()];
        let gb = GroebnerBasis::compute(&r, &gens, 40, true).unwrap();
        let cert = gb.certificate(&r1).expect("member");
        let recombined = cert[0].mul(&sz).add(&cert[1].mul(&z));
        assert_eq!(recombined, r1);
    }

    #[test]
    fn degree_cap() {
        let r = ring();
        let gens = [p(&r, "u^5 - t^4*d"), p(&r, "t^5 - u*d^4")];
        assert!(matches!(GroebnerBasis::compute(&r, &gens, 3, false), Err(Error::DegreeCapExceeded { cap: 3 })));
    }
}
