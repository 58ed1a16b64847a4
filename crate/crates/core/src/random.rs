//! Seeded, bounded random inputs for the property suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gwa::{GwaElem, GwaInstance};
use crate::polyring::{CoefPoly, RingSpec, MAX_VARS};
use crate::qfield::QRat;
use crate::rea::ReaWord;

/// Total degree bound for random ring elements.
pub const MAX_DEGREE: i32 = 4;
/// Integer coefficients are drawn from `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 9;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// `c q^k` with `c` in the coefficient bound and `|k| <= 2`.
    pub fn scalar(&mut self) -> QRat {
        let c = self.range(-COEFF_BOUND, COEFF_BOUND);
        QRat::monomial(c, self.range(-2, 2))
    }

    pub fn nonzero_scalar(&mut self) -> QRat {
        let mut c = 0;
        while c == 0 {
            c = self.range(-COEFF_BOUND, COEFF_BOUND);
        }
        QRat::monomial(c, self.range(-2, 2))
    }

    /// Up to four terms of total degree at most `MAX_DEGREE`, nonnegative exponents.
    pub fn poly(&mut self, ring: &Arc<RingSpec>) -> CoefPoly {
        let mut f = CoefPoly::zero(ring);
        for _ in 0..self.range(1, 4) {
            let mut e = [0i32; MAX_VARS];
            let mut left = self.range(0, MAX_DEGREE as i64) as i32;
            for slot in e.iter_mut().take(ring.nvars()) {
                let k = self.range(0, left as i64) as i32;
                *slot = k;
                left -= k;
            }
            f.add_term(e, &self.scalar());
        }
        f
    }

    /// At most three components with degrees in `[-window, window]`.
    pub fn elem(&mut self, inst: &Arc<GwaInstance>, window: i64) -> GwaElem {
        let comps: Vec<(i64, CoefPoly)> =
            (0..self.range(1, 3)).map(|_| (self.range(-window, window), self.poly(inst.ring()))).collect();
        let mut a = GwaElem::zero(inst);
        for (m, c) in comps {
            a = a.add(&GwaElem::term(inst, c, m)).expect("same instance");
        }
        a
    }

    /// A sum of at most three scaled products of at most three generators `u_ij`.
    pub fn rea_word(&mut self) -> ReaWord {
        const GENS: [&str; 4] = ["u11", "u12", "u21", "u22"];
        let mut terms = Vec::new();
        for _ in 0..self.range(1, 3) {
            let mut factors = vec![format!("({})", self.range(-COEFF_BOUND, COEFF_BOUND))];
            for _ in 0..self.range(0, 3) {
                factors.push(GENS[self.range(0, 3) as usize].to_string());
            }
            terms.push(factors.join("*"));
        }
        ReaWord::parse(&terms.join(" + ")).expect("generated word parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rea::rea_instance;

    #[test]
    fn reproducible_and_bounded() {
        let inst = rea_instance();
        let (mut a, mut b) = (Sampler::new(7), Sampler::new(7));
        for _ in 0..20 {
            let (x, y) = (a.elem(&inst, 3), b.elem(&inst, 3));
            assert_eq!(x, y);
            for (m, c) in x.components() {
                assert!(m.abs() <= 3);
                assert!(c.terms().all(|(e, _)| e.iter().sum::<i32>() <= MAX_DEGREE));
            }
        }
        assert!(!Sampler::new(1).nonzero_scalar().is_zero());
    }
}
