//! Finite-dimensional weight modules: simple modules, truncations,
//! simplicity, classification and semisimple decomposition.

mod module;

use std::sync::{Arc, OnceLock};

pub use module::{Weight, WeightModule};

use crate::error::{Error, Result};
use crate::gwa::GwaInstance;
use crate::polyring::{orbit_zeros, CoefPoly, OrbitZeros, RingSpec, SigmaMap};
use crate::qfield::{span_rank, QMatrix, QRat};

/// Outcome of [`simple_module`].
#[derive(Clone, Debug, PartialEq)]
pub enum SimpleModule {
    Finite(WeightModule),
    Infinite(String),
}

impl SimpleModule {
    pub fn finite(self) -> Option<WeightModule> {
        match self {
            SimpleModule::Finite(m) => Some(m),
            SimpleModule::Infinite(_) => None,
        }
    }
}

/// Whether the sigma-orbit of the point is infinite.
fn orbit_is_infinite(inst: &GwaInstance, w: &Weight) -> Result<bool> {
    let weights = inst
        .sigma()
        .q_weights()
        .ok_or_else(|| Error::HypothesisUnverified("orbit length needs a q-diagonal sigma".into()))?;
    Ok(weights.iter().zip(w.coords()).any(|(a, c)| *a != 0 && !c.is_zero()))
}

fn check_point(inst: &GwaInstance, w: &Weight) -> Result<()> {
    if w.coords().len() != inst.ring().nvars() {
        return Err(Error::Shape(format!("weight {w} has the wrong number of coordinates")));
    }
    Ok(())
}

/// `(n, n')`: least `n >= 1` with `1 - n` a zero, least `n' >= 1` that is a zero.
fn cuts(zeros: &OrbitZeros) -> (Option<i64>, Option<i64>) {
    match zeros {
        OrbitZeros::All => (Some(1), Some(1)),
        OrbitZeros::Finite(v) => {
            let bottom = v.iter().copied().filter(|&k| k >= 1).min();
            let top = v.iter().copied().filter(|&k| k <= 0).max().map(|k| 1 - k);
            (top, bottom)
        }
    }
}

/// The simple module at `w`, when finite-dimensional.
///
/// Its dimension is `n + n' - 1` where `n, n' >= 1` are least with
/// `sigma^{1-n}(z)` and `sigma^{n'}(z)` vanishing at `w`.
pub fn simple_module(inst: &Arc<GwaInstance>, w: &Weight) -> Result<SimpleModule> {
    check_point(inst, w)?;
    if !orbit_is_infinite(inst, w)? {
        return Err(Error::ZeroU0);
    }
    let zeros = orbit_zeros(inst.sigma(), inst.z(), w.coords())?;
    if zeros == OrbitZeros::All {
        return Ok(SimpleModule::Infinite("z vanishes on the whole orbit".into()));
    }
    match cuts(&zeros) {
        (Some(n), Some(np)) => Ok(SimpleModule::Finite(WeightModule::chain(inst, w, 1 - np, n - 1)?)),
        (None, _) => Ok(SimpleModule::Infinite("no sigma^(1-n)(z) vanishes at the weight for n > 0".into())),
        (_, None) => Ok(SimpleModule::Infinite("no sigma^n'(z) vanishes at the weight for n' > 0".into())),
    }
}

/// `V_n(u0)` for the reflection equation algebra.
pub fn vn_module(n: u32, u0: QRat) -> Result<WeightModule> {
    let inst = crate::rea::rea_instance();
    match simple_module(&inst, &Weight::vn(n, u0))? {
        SimpleModule::Finite(m) => Ok(m),
        SimpleModule::Infinite(why) => Err(Error::InfiniteDimension(why)),
    }
}

/// The quotient of the cyclic module at `w` with cut points `j`, `j'`
/// (`None` meaning no cut): basis `e_{-j'+1..j-1}`.
pub fn verma_truncation(inst: &Arc<GwaInstance>, w: &Weight, j: Option<u32>, jp: Option<u32>) -> Result<WeightModule> {
    check_point(inst, w)?;
    let (Some(j), Some(jp)) = (j, jp) else {
        return Err(Error::InfiniteDimension("both cut points are needed for a finite quotient".into()));
    };
    if j == 0 || jp == 0 {
        return Err(Error::InvalidCut("cut points must be positive".into()));
    }
    let (j, jp) = (j as i64, jp as i64);
    if !w.eval(&inst.sigma_z(1 - j)?)?.is_zero() {
        return Err(Error::InvalidCut(format!("sigma^{}(z) does not vanish at {w}", 1 - j)));
    }
    if !w.eval(&inst.sigma_z(jp)?)?.is_zero() {
        return Err(Error::InvalidCut(format!("sigma^{jp}(z) does not vanish at {w}")));
    }
    WeightModule::chain(inst, w, 1 - jp, j - 1)
}

/// `k[u][x, y; u -> q^2 u, (u - q^2)(u - q^-2)(u - q^-6)]`.
pub fn nonsemisimple_instance() -> Arc<GwaInstance> {
    static INST: OnceLock<Arc<GwaInstance>> = OnceLock::new();
    INST.get_or_init(|| {
        let r = RingSpec::new(&["u"], &[]).expect("ring");
        let s = SigmaMap::q_diagonal(&r, &[2]).expect("sigma");
        let z = CoefPoly::parse(&r, "(u - q^2)*(u - q^-2)*(u - q^-6)").expect("z");
        GwaInstance::new(s, z).expect("instance")
    })
    .clone()
}

/// The 4-dimensional truncation at `u = 1` with cuts `j = 4`, `j' = 1`.
pub fn nonsemisimple_module() -> Result<WeightModule> {
    verma_truncation(&nonsemisimple_instance(), &Weight(vec![QRat::one()]), Some(4), Some(1))
}

/// Weight spaces with bases. Fails unless the ring matrices are
/// simultaneously diagonalizable with eigenvalues found on their diagonals.
pub fn weight_spaces(x: &WeightModule) -> Result<Vec<(Weight, Vec<Vec<QRat>>)>> {
    let n = x.dim();
    let mut cands: Vec<Weight> = Vec::new();
    for i in 0..n {
        let w = Weight(x.ring_actions().iter().map(|m| m.get(i, i).clone()).collect());
        if !cands.contains(&w) {
            cands.push(w);
        }
    }
    let mut out = Vec::new();
    let mut total = 0;
    for w in cands {
        let mut stacked: Vec<Vec<QRat>> = Vec::new();
        for (m, c) in x.ring_actions().iter().zip(w.coords()) {
            stacked.extend(m.sub(&QMatrix::scalar(n, c))?.to_rows());
        }
        let basis = if stacked.is_empty() {
            QMatrix::identity(n).to_rows()
        } else {
            QMatrix::from_rows(stacked)?.kernel_vectors()
        };
        if !basis.is_empty() {
            total += basis.len();
            out.push((w, basis));
        }
    }
    if total != n {
        return Err(Error::UnsupportedShape("module is not a sum of rational weight spaces".into()));
    }
    Ok(out)
}

/// Basis of the submodule generated by `v`. When `v` is a weight vector
/// the basis consists of weight vectors.
pub fn generated_submodule(x: &WeightModule, v: &[QRat]) -> Vec<Vec<QRat>> {
    let mut basis: Vec<Vec<QRat>> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if w.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(w.clone());
        if span_rank(&trial) == basis.len() {
            continue;
        }
        basis.push(w.clone());
        for g in x.generators() {
            queue.push(g.mul_vec(&w));
        }
    }
    basis
}

/// Whether every weight vector generates the whole module. Requires
/// one-dimensional weight spaces.
pub fn is_simple(x: &WeightModule) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(false);
    }
    let spaces = weight_spaces(x)?;
    if spaces.iter().any(|(_, b)| b.len() != 1) {
        return Err(Error::UnsupportedShape("weight spaces are not one-dimensional".into()));
    }
    for (_, b) in &spaces {
        if generated_submodule(x, &b[0]).len() != x.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension and lowest weight (the weight of `ker y`) of a simple module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dim: usize,
    pub weight: Weight,
}

impl Classification {
    pub fn u0(&self) -> &QRat {
        self.weight.u0()
    }
}

pub fn classify(x: &WeightModule) -> Result<Classification> {
    match is_simple(x) {
        Ok(true) => {}
        Ok(false) | Err(Error::UnsupportedShape(_)) => return Err(Error::NotSimple),
        Err(e) => return Err(e),
    }
    let inst = x.instance();
    if let Some(ws) = inst.sigma().q_weights() {
        for (m, a) in x.ring_actions().iter().zip(ws) {
            if a != 0 && m.inverse().is_err() {
                return Err(Error::UNotInvertible);
            }
        }
    }
    let ker = x.y().kernel_vectors();
    if ker.len() != 1 {
        return Err(Error::NotSimple);
    }
    let v = &ker[0];
    let weight = weight_spaces(x)?
        .into_iter()
        .find(|(_, b)| span_rank(&[b[0].clone(), v.clone()]) == 1)
        .map(|(w, _)| w)
        .ok_or(Error::NotSimple)?;
    let n = x.dim();
    if **inst == *crate::rea::rea_instance() {
        let expect = Weight::vn(n as u32, weight.u0().clone());
        if expect != weight {
            return Err(Error::RelationFailure(format!(
                "lowest weight {weight} is not that of V_{n}({})",
                weight.u0()
            )));
        }
    }
    Ok(Classification { dim: n, weight })
}

/// `Some(n)` with `n` least such that `sigma^{1-n}(z)` vanishes at `w`,
/// provided `sigma(z)` vanishes there; `None` otherwise.
pub fn chain_length(inst: &GwaInstance, w: &Weight) -> Result<Option<i64>> {
    let zeros = orbit_zeros(inst.sigma(), inst.z(), w.coords())?;
    if !zeros.contains(1) {
        return Ok(None);
    }
    Ok(cuts(&zeros).0)
}

/// For each member with chain length `n`, `sigma^n(m)` is not in the set.
pub fn separated_chains(inst: &Arc<GwaInstance>, set: &[Weight]) -> Result<bool> {
    let mut lens = Vec::with_capacity(set.len());
    for w in set {
        check_point(inst, w)?;
        match chain_length(inst, w)? {
            Some(n) => lens.push(n),
            None => return Err(Error::NotInM(w.to_string())),
        }
    }
    for (w, n) in set.iter().zip(lens) {
        if set.contains(&w.shifted(inst, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`decompose`].
#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    /// Lowest weights of the simple summands with multiplicities.
    Semisimple(Vec<(Weight, usize)>),
    /// A proper nonzero submodule that has no invariant complement among the candidates.
    NotSemisimple { witness: Vec<Vec<QRat>> },
}

/// Split a chain-type module into simple submodules generated by the
/// weight vectors of its lowest weights.
pub fn decompose(x: &WeightModule) -> Result<Decomposition> {
    let inst = x.instance();
    let spaces = weight_spaces(x)?;
    for (w, _) in &spaces {
        if !orbit_is_infinite(inst, w)? {
            return Err(Error::NotChainType(format!("weight {w} has a finite orbit")));
        }
    }
    let mut good: Vec<(Weight, Vec<Vec<QRat>>)> = Vec::new();
    let mut failed = false;
    for (w, basis) in &spaces {
        let Some(n) = chain_length(inst, w)? else { continue };
        for b in basis {
            let sub = generated_submodule(x, b);
            if sub.len() as i64 == n && is_simple(&x.restrict(&sub)?).unwrap_or(false) {
                good.push((w.clone(), sub));
            } else {
                failed = true;
            }
        }
    }
    let all: Vec<Vec<QRat>> = good.iter().flat_map(|(_, s)| s.iter().cloned()).collect();
    let rank = span_rank(&all);
    if !failed && rank == all.len() && rank == x.dim() {
        let mut mult: Vec<(Weight, usize)> = Vec::new();
        for (w, _) in good {
            match mult.iter_mut().find(|(v, _)| *v == w) {
                Some(e) => e.1 += 1,
                None => mult.push((w, 1)),
            }
        }
        return Ok(Decomposition::Semisimple(mult));
    }
    if rank > 0 && rank < x.dim() {
        return Ok(Decomposition::NotSemisimple { witness: crate::qfield::span_basis(&all) });
    }
    for (_, basis) in &spaces {
        for b in basis {
            let sub = generated_submodule(x, b);
            if sub.len() < x.dim() {
                return Ok(Decomposition::NotSemisimple { witness: crate::qfield::span_basis(&sub) });
            }
        }
    }
    Err(Error::UnsupportedShape("no proper submodule found in a module that failed to split".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rea::rea_instance;

    #[test]
    fn v3_of_one() {
        let m = vn_module(3, QRat::one()).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(is_simple(&m).unwrap());
        let u = m.ring_action("u").unwrap();
        assert_eq!(u.diagonal(), vec![QRat::one(), QRat::q_pow(-2), QRat::q_pow(-4)]);
        let c = classify(&m).unwrap();
        assert_eq!((c.dim, c.u0().clone()), (3, QRat::one()));
    }

    #[test]
    fn lambdas_of_vn() {
        // lambda_i = u0^2 (q^-2i - q^-2n)(1 - q^-2i)
        for n in 1..=6u32 {
            let u0 = QRat::from_int(2);
            let w = Weight::vn(n, u0.clone());
            let inst = rea_instance();
            for i in 0..=n as i64 {
                let lam = w.eval(&inst.sigma_z(1 - i).unwrap()).unwrap();
                let expect = &(&u0 * &u0)
                    * &(&(QRat::q_pow(-2 * i) - QRat::q_pow(-2 * n as i64)) * &(QRat::one() - QRat::q_pow(-2 * i)));
                assert_eq!(lam, expect);
                assert_eq!(lam.is_zero(), i == 0 || i == n as i64);
            }
        }
    }

    #[test]
    fn generic_weight_is_infinite() {
        let inst = rea_instance();
        let w = Weight::utd(QRat::one(), QRat::one(), QRat::one());
        assert!(matches!(simple_module(&inst, &w).unwrap(), SimpleModule::Infinite(_)));
        let z = Weight::utd(QRat::zero(), QRat::one(), QRat::one());
        assert_eq!(simple_module(&inst, &z), Err(Error::ZeroU0));
    }

    #[test]
    fn truncations() {
        let inst = rea_instance();
        let w = Weight::vn(4, QRat::q());
        let t = verma_truncation(&inst, &w, Some(4), Some(1)).unwrap();
        assert_eq!(t, vn_module(4, QRat::q()).unwrap());
        assert!(matches!(verma_truncation(&inst, &w, Some(3), Some(1)), Err(Error::InvalidCut(_))));
        assert!(matches!(verma_truncation(&inst, &w, None, Some(1)), Err(Error::InfiniteDimension(_))));
    }

    #[test]
    fn non_semisimple() {
        let m = nonsemisimple_module().unwrap();
        assert_eq!(m.dim(), 4);
        assert!(!is_simple(&m).unwrap());
        match decompose(&m).unwrap() {
            Decomposition::NotSemisimple { witness } => {
                let e = |i: usize| (0..4).map(|j| if j == i { QRat::one() } else { QRat::zero() }).collect::<Vec<_>>();
                assert_eq!(witness.len(), 2);
                assert_eq!(span_rank(&[witness[0].clone(), witness[1].clone(), e(2), e(3)]), 2);
            }
            d => panic!("expected a witness, got {d:?}"),
        }
        let inst = nonsemisimple_instance();
        let s = [Weight(vec![QRat::one()]), Weight(vec![QRat::q_pow(-4)])];
        assert!(!separated_chains(&inst, &s).unwrap());
        assert!(separated_chains(&inst, &[]).unwrap());
        assert!(matches!(separated_chains(&inst, &[Weight(vec![QRat::q_pow(-2)])]), Err(Error::NotInM(_))));
    }

    #[test]
    fn sums() {
        let a = vn_module(2, QRat::one()).unwrap();
        let b = vn_module(3, QRat::q()).unwrap();
        let s = a.direct_sum(&a).unwrap().direct_sum(&b).unwrap();
        assert_eq!(classify(&a.direct_sum(&a).unwrap()), Err(Error::NotSimple));
        assert!(!is_simple(
            &vn_module(1, QRat::one()).unwrap().direct_sum(&vn_module(1, QRat::from_int(2)).unwrap()).unwrap()
        )
        .unwrap());
        let Decomposition::Semisimple(parts) = decompose(&s).unwrap() else { panic!() };
        assert_eq!(parts, vec![(Weight::vn(2, QRat::one()), 2), (Weight::vn(3, QRat::q()), 1)]);
        let inst = rea_instance();
        let set: Vec<Weight> = (1..4).map(|n| Weight::vn(n, QRat::from_int(n as i64))).collect();
        assert!(separated_chains(&inst, &set).unwrap());
    }
}
