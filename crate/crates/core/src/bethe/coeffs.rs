//! The universal Bethe polynomial on `V_1`, in closed form:
//! `P^B̄ ε_τ = (-1)^N Σ_σ (-1)^σ ∏_{σ(i)=i} (1 - (u - z_{τ^{-1}(i)})(v - l_i)) ε_{στ}`.

use std::collections::BTreeMap;

use super::v1::{iota, poly_times_e, V1Element};
use crate::bipoly::BiPoly;
use crate::cherednik::dunkl::DunklRep;
use crate::cherednik::{check_bound, universal_central_poly, HElement};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RatMatrix};
use crate::multisym::{lambda, z};
use crate::perm::Perm;
use crate::poly::{Poly, VarSet};
use crate::rational::{self, Q};
use crate::ring::Ring;

/// Matrices of `P^B̄` in the basis `ε_σ` (ordered as [`Perm::all`]),
/// keyed by `(deg_u, deg_v)`; column `τ` holds the image of `ε_τ`.
fn closed_form<C: Ring>(n: usize, zs: &[C], ls: &[C]) -> BTreeMap<(u32, u32), Matrix<C>> {
    let perms = Perm::all(n);
    let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let one = zs[0].one_like();
    let d = perms.len();
    let mut out: BTreeMap<(u32, u32), Matrix<C>> = BTreeMap::new();
    // 1 - (u - z)(v - l) = -uv + l u + z v + (1 - z l)
    let factor = |zv: &C, lv: &C| {
        let mut f = BiPoly::zero(&one);
        f.add_term(1, 1, one.neg());
        f.add_term(1, 0, lv.clone());
        f.add_term(0, 1, zv.clone());
        f.add_term(0, 0, one.sub(&zv.mul(lv)));
        f
    };
    for (col, tau) in perms.iter().enumerate() {
        let tinv = tau.inverse();
        for s in &perms {
            let row = index[&s.compose(tau)];
            let mut prod = BiPoly::constant(one.clone());
            for i in s.fixed_points() {
                prod = prod.mul(&factor(&zs[tinv.apply(i)], &ls[i]));
            }
            let sign = if (s.sign() > 0) == n.is_multiple_of(2) { rational::one() } else { -rational::one() };
            for (&key, c) in prod.iter() {
                let m = out.entry(key).or_insert_with(|| Matrix::zero(d, &one));
                let cur = m.get(row, col).add(&c.scale(&sign));
                m.set(row, col, cur);
            }
        }
    }
    out
}

/// The matrices `b̄_ij` over `Q[z, l]`.
#[derive(Clone, Debug)]
pub struct BetheCoeffs {
    pub n: usize,
    pub perms: Vec<Perm>,
    pub by_degree: BTreeMap<(u32, u32), Matrix<Poly>>,
}

impl BetheCoeffs {
    pub fn compute(n: usize) -> Result<BetheCoeffs> {
        check_bound(n)?;
        let vars = VarSet::zl(n);
        let zs: Vec<Poly> = (0..n).map(|i| z(&vars, i)).collect();
        let ls: Vec<Poly> = (0..n).map(|i| lambda(&vars, i)).collect();
        Ok(BetheCoeffs { n, perms: Perm::all(n), by_degree: closed_form(n, &zs, &ls) })
    }

    /// `b̄_ij`: the coefficient of `u^{N-i} v^{N-j}`.
    pub fn b(&self, i: usize, j: usize) -> Matrix<Poly> {
        let key = ((self.n - i) as u32, (self.n - j) as u32);
        self.by_degree.get(&key).cloned().unwrap_or_else(|| Matrix::zero(self.perms.len(), &Poly::zero(&VarSet::zl(self.n))))
    }

    pub fn all(&self) -> Vec<(usize, usize, Matrix<Poly>)> {
        let n = self.n;
        (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|(i, j)| (i, j, self.b(i, j))).collect()
    }

    fn index(&self, p: &Perm) -> usize {
        self.perms.iter().position(|q| q == p).unwrap()
    }

    /// Applies the coefficient at `(deg_u, deg_v)` to `v`.
    pub fn apply_coeff(&self, key: (u32, u32), v: &V1Element) -> V1Element {
        let mut r = V1Element::zero(self.n);
        let Some(m) = self.by_degree.get(&key) else { return r };
        for (tau, f) in v.iter() {
            let col = self.index(tau);
            for (row, sigma) in self.perms.iter().enumerate() {
                let e = m.get(row, col);
                if !e.is_zero() {
                    r.add(sigma, &e.mul(f));
                }
            }
        }
        r
    }

    /// `P^B̄ v`, keyed by `(deg_u, deg_v)`.
    pub fn apply(&self, v: &V1Element) -> BTreeMap<(u32, u32), V1Element> {
        self.by_degree.keys().map(|&k| (k, self.apply_coeff(k, v))).filter(|(_, w)| !w.is_zero()).collect()
    }
}

/// `P^B̄ v` by the closed form.
pub fn bethe_poly_apply(v: &V1Element) -> Result<BTreeMap<(u32, u32), V1Element>> {
    Ok(BetheCoeffs::compute(v.n())?.apply(v))
}

/// `P^B̄` at a rational point `(z0, l0)`: matrices keyed by `(deg_u, deg_v)`.
pub fn bethe_matrices_at(z0: &[Q], l0: &[Q]) -> BTreeMap<(u32, u32), RatMatrix> {
    closed_form(z0.len(), z0, l0)
}

/// First pair of coefficient matrices that fails to commute.
pub fn first_noncommuting<R: Ring>(mats: &[((u32, u32), Matrix<R>)]) -> Option<((u32, u32), (u32, u32))> {
    for (a, (ka, ma)) in mats.iter().enumerate() {
        for (kb, mb) in &mats[a + 1..] {
            if !ma.commutator(mb).is_zero() {
                return Some((*ka, *kb));
            }
        }
    }
    None
}

/// Checks `ι(P^B̄ v) = P^Z ι(v)` for every `u, v` coefficient. Returns the
/// offending `(deg_u, deg_v)` on failure.
pub fn verify_zb_sample(bc: &BetheCoeffs, pz: &BiPoly<HElement>, v: &V1Element) -> Result<Option<(u32, u32)>> {
    let lhs = bc.apply(v);
    let iv = iota(v);
    let n = bc.n as u32;
    for a in 0..=n {
        for b in 0..=n {
            let l = lhs.get(&(a, b)).map(iota).unwrap_or_else(|| HElement::zero(bc.n));
            let r = pz.coeff(a, b).h_mul(&iv)?;
            if l != r {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Runs [`verify_zb_sample`] over `samples`; returns the index and
/// coefficient of the first failure.
pub fn verify_zb(n: usize, samples: &[V1Element]) -> Result<Option<(usize, (u32, u32))>> {
    let bc = BetheCoeffs::compute(n)?;
    let pz = universal_central_poly(n)?;
    for (k, v) in samples.iter().enumerate() {
        if v.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.n() });
        }
        if let Some(at) = verify_zb_sample(&bc, &pz, v)? {
            return Ok(Some((k, at)));
        }
    }
    Ok(None)
}

/// `(pr ι^{-1})(y_i h) = K_i (pr ι^{-1})(h)` with `h = f(x, y) e`; returns
/// the first failing `i`.
pub fn intertwining_failure(f: &Poly) -> Result<Option<usize>> {
    let n = f.arity() / 2;
    let h = poly_times_e(f)?;
    let rep = DunklRep::exact(n);
    for i in 0..n {
        let lhs = super::v1::pr_iota_inv(&HElement::y(n, i).h_mul(&h)?);
        if lhs != rep.y(i, f)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `ι(σ^L v) = σ ι(v)` and `ι(σ^R v) = ι(v) σ^{-1}` for all `σ`.
pub fn actions_intertwined(v: &V1Element) -> Result<bool> {
    use super::v1::Side;
    let iv = iota(v);
    for s in Perm::all(v.n()) {
        let p = HElement::perm(&s);
        if iota(&v.act(&s, Side::L)?) != p.h_mul(&iv)? {
            return Ok(false);
        }
        if iota(&v.act(&s, Side::R)?) != iv.h_mul(&HElement::perm(&s.inverse()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn n1_single_term() {
        let bc = BetheCoeffs::compute(1).unwrap();
        let vars = VarSet::zl(1);
        let one = Poly::one(&vars);
        // (u - z)(v - l) - 1
        assert_eq!(*bc.b(0, 0).get(0, 0), one);
        assert_eq!(*bc.b(1, 1).get(0, 0), z(&vars, 0).mul(&lambda(&vars, 0)).sub(&one));
        assert_eq!(*bc.b(0, 1).get(0, 0), lambda(&vars, 0).neg());
    }

    #[test]
    fn scalar_columns() {
        let n = 3;
        let bc = BetheCoeffs::compute(n).unwrap();
        let vars = VarSet::zl(n);
        let d = bc.perms.len();
        let ez = (0..n).fold(Poly::zero(&vars), |a, i| a.add(&z(&vars, i)));
        let el = (0..n).fold(Poly::zero(&vars), |a, i| a.add(&lambda(&vars, i)));
        assert_eq!(bc.b(0, 0), Matrix::identity(d, &Poly::one(&vars)));
        assert_eq!(bc.b(1, 0), Matrix::identity(d, &Poly::one(&vars)).map(|e| e.mul(&ez.neg())));
        assert_eq!(bc.b(0, 1), Matrix::identity(d, &Poly::one(&vars)).map(|e| e.mul(&el.neg())));
    }

    #[test]
    fn n2_constant_matrix() {
        // v^0 u^0 part: entries of 1 + l1 l2 z1 z2 - M, with ε_s coefficient -1 in P ε_id
        let bc = BetheCoeffs::compute(2).unwrap();
        let m = bc.by_degree[&(0, 0)].clone();
        let vars = VarSet::zl(2);
        assert_eq!(*m.get(1, 0), Poly::constant(&vars, q(-1)));
        assert_eq!(*m.get(0, 1), Poly::constant(&vars, q(-1)));
    }

    #[test]
    fn zb_n2_basis() {
        let samples: Vec<V1Element> = Perm::all(2).iter().map(V1Element::basis).collect();
        assert_eq!(verify_zb(2, &samples).unwrap(), None);
    }

    #[test]
    fn intertwining_n2() {
        let vars = VarSet::zl(2);
        let f = lambda(&vars, 0).pow(2).mul(&z(&vars, 1)).add(&z(&vars, 0));
        assert_eq!(intertwining_failure(&f).unwrap(), None);
        assert!(actions_intertwined(&V1Element::single(&Perm::identity(2), f).unwrap()).unwrap());
    }
}
