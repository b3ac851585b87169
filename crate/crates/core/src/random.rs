//! Seeded sampling of rational test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bethe::V1Element;
use crate::matrix::RatMatrix;
use crate::perm::Perm;
use crate::poly::{Mono, Poly, VarSet};
use crate::rational::{self, Q};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `a/b` with `|a| <= 9`, `1 <= b <= 5`.
    pub fn rational(&mut self) -> Q {
        rational::frac(self.int(-9, 9), self.int(1, 5))
    }

    /// Pairwise distinct rationals: distinct integers in `[-2n, 2n]`, each
    /// shifted by a fraction in `[0, 1)`.
    pub fn distinct_rationals(&mut self, n: usize) -> Vec<Q> {
        let span = 2 * n as i64 + 2;
        let mut ints: Vec<i64> = Vec::new();
        while ints.len() < n {
            let k = self.int(-span, span);
            if !ints.contains(&k) {
                ints.push(k);
            }
        }
        ints.into_iter()
            .map(|k| {
                let d = self.int(2, 7);
                rational::q(k) + rational::frac(self.int(0, d - 1), d)
            })
            .collect()
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn perm(&mut self, n: usize) -> Perm {
        let all = Perm::all(n);
        all[self.index(all.len())].clone()
    }

    /// An invertible matrix with small rational entries.
    pub fn invertible(&mut self, n: usize) -> RatMatrix {
        loop {
            let m = RatMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    rational::q(self.int(1, 3))
                } else {
                    rational::frac(self.int(-3, 3), self.int(1, 2))
                }
            });
            if m.rank() == n {
                return m;
            }
        }
    }

    /// A monomial in `vars` of total degree at most `max_deg`.
    pub fn mono(&mut self, arity: usize, max_deg: u32) -> Mono {
        let mut e = vec![0u16; arity];
        let d = self.int(0, max_deg as i64);
        for _ in 0..d {
            e[self.index(arity)] += 1;
        }
        Mono::from_exps(&e)
    }

    /// A polynomial with up to `terms` terms of degree at most `max_deg`.
    pub fn poly(&mut self, vars: &std::sync::Arc<VarSet>, max_deg: u32, terms: usize) -> Poly {
        let mut p = Poly::zero(vars);
        let k = self.int(1, terms as i64);
        for _ in 0..k {
            let m = self.mono(vars.len(), max_deg);
            p.add_term(m, self.rational());
        }
        p
    }

    /// `c z^a l^b ε_τ`.
    pub fn v1_monomial(&mut self, n: usize, max_deg: u32) -> V1Element {
        let vars = VarSet::zl(n);
        let tau = self.perm(n);
        let mut c = self.rational();
        if c == rational::zero() {
            c = rational::one();
        }
        let p = Poly::monomial(&vars, self.mono(2 * n, max_deg), c);
        V1Element::single(&tau, p).expect("arity matches")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let a = Sampler::new(7).distinct_rationals(5);
        assert_eq!(a, Sampler::new(7).distinct_rationals(5));
        for i in 0..5 {
            for j in i + 1..5 {
                assert_ne!(a[i], a[j]);
            }
        }
        assert_eq!(Sampler::new(3).invertible(3).rank(), 3);
    }
}
