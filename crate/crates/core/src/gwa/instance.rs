use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::polyring::{CoefPoly, RingSpec, SigmaMap};

/// Deliberate defects, for exercising verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// `[[n,m]]` for `n < 0 < m`, `|n| < m` is shifted by one sigma-step.
    ZzShift,
}

/// A generalized Weyl algebra `R[x, y; sigma, z]` over a commutative ring.
pub struct GwaInstance {
    ring: Arc<RingSpec>,
    sigma: SigmaMap,
    z: CoefPoly,
    fault: Option<Fault>,
    sigma_z: RwLock<HashMap<i64, CoefPoly>>,
    zz_memo: RwLock<HashMap<(i64, i64), CoefPoly>>,
}

impl std::fmt::Debug for GwaInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[x,y; sigma, z = {}]", self.ring, self.z)
    }
}

impl PartialEq for GwaInstance {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self, o)
            || (self.ring == o.ring && self.sigma == o.sigma && self.z == o.z && self.fault == o.fault)
    }
}

impl GwaInstance {
    pub fn new(sigma: SigmaMap, z: CoefPoly) -> Result<Arc<Self>> {
        let ring = sigma.ring().clone();
        if z.ring() != &ring {
            return Err(Error::RingMismatch(format!("z = {z} is not in {ring}")));
        }
        Ok(Arc::new(GwaInstance {
            ring,
            sigma,
            z,
            fault: None,
            sigma_z: RwLock::new(HashMap::new()),
            zz_memo: RwLock::new(HashMap::new()),
        }))
    }

    /// Same data with a deliberate defect injected.
    pub fn with_fault(&self, fault: Fault) -> Arc<Self> {
        Arc::new(GwaInstance {
            ring: self.ring.clone(),
            sigma: self.sigma.clone(),
            z: self.z.clone(),
            fault: Some(fault),
            sigma_z: RwLock::new(HashMap::new()),
            zz_memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn sigma(&self) -> &SigmaMap {
        &self.sigma
    }

    pub fn z(&self) -> &CoefPoly {
        &self.z
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    /// `sigma^k(f)`.
    pub fn sigma_pow(&self, f: &CoefPoly, k: i64) -> Result<CoefPoly> {
        self.sigma.pow(f, k)
    }

    /// `sigma^l(z)`, memoized.
    pub fn sigma_z(&self, l: i64) -> Result<CoefPoly> {
        if let Some(p) = self.sigma_z.read().unwrap().get(&l) {
            return Ok(p.clone());
        }
        let p = self.sigma.pow(&self.z, l)?;
        self.sigma_z.write().unwrap().insert(l, p.clone());
        Ok(p)
    }

    /// `sigma^{[j,k]}(z) = prod_{l=j}^{k} sigma^l(z)`; 1 when `j > k`.
    pub fn sigma_range(&self, j: i64, k: i64) -> Result<CoefPoly> {
        let mut acc = CoefPoly::one(&self.ring);
        for l in j..=k {
            acc = acc.mul(&self.sigma_z(l)?);
        }
        Ok(acc)
    }

    /// The structure constant `[[n,m]]` with `v_n v_m = [[n,m]] v_{n+m}`.
    pub fn zz(&self, n: i64, m: i64) -> Result<CoefPoly> {
        if let Some(p) = self.zz_memo.read().unwrap().get(&(n, m)) {
            return Ok(p.clone());
        }
        let p = self.zz_uncached(n, m)?;
        self.zz_memo.write().unwrap().insert((n, m), p.clone());
        Ok(p)
    }

    fn zz_uncached(&self, n: i64, m: i64) -> Result<CoefPoly> {
        if n > 0 && m < 0 {
            if n >= -m {
                self.sigma_range(n + m + 1, n)
            } else {
                self.sigma_range(1, n)
            }
        } else if n < 0 && m > 0 {
            if -n >= m {
                self.sigma_range(n + 1, n + m)
            } else if self.fault == Some(Fault::ZzShift) {
                self.sigma_range(n + 2, 1)
            } else {
                self.sigma_range(n + 1, 0)
            }
        } else {
            Ok(CoefPoly::one(&self.ring))
        }
    }
}
