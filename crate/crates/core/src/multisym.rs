//! Multi-symmetric polynomials: the universal polynomial
//! `∏ ((u - z_i)(v - l_i) - 1)`, power sums `Σ l_i^k z_i^l`, and recovery of
//! power sums from the coefficients `p_ij` through the log-det expansion.

use std::sync::Arc;

use crate::bipoly::BiPoly;
use crate::error::Result;
use crate::poly::{Mono, Poly, VarSet};
use crate::rational;
use crate::ring::Ring;
use crate::series::TruncSeries;

pub fn z(vars: &Arc<VarSet>, i: usize) -> Poly {
    Poly::var(vars, i)
}

pub fn lambda(vars: &Arc<VarSet>, i: usize) -> Poly {
    Poly::var(vars, vars.len() / 2 + i)
}

/// `P^P = ∏_i ((u - z_i)(v - l_i) - 1)` with coefficients in `Q[z, l]`,
/// keyed by `(deg_u, deg_v)`.
pub fn universal_multisym(n: usize) -> BiPoly<Poly> {
    let vars = VarSet::zl(n);
    let one = Poly::one(&vars);
    let mut acc = BiPoly::constant(one.clone());
    for i in 0..n {
        let mut f = BiPoly::zero(&one);
        let (zi, li) = (z(&vars, i), lambda(&vars, i));
        // (u - z)(v - l) - 1 = uv - l u - z v + z l - 1
        f.add_term(1, 1, one.clone());
        f.add_term(1, 0, li.neg());
        f.add_term(0, 1, zi.neg());
        f.add_term(0, 0, zi.mul(&li).sub(&one));
        acc = acc.mul(&f);
    }
    acc
}

/// `p_ij`: the coefficient of `u^{N-i} v^{N-j}` in `P^P`.
pub fn p_coeff(pp: &BiPoly<Poly>, n: usize, i: usize, j: usize) -> Poly {
    pp.coeff((n - i) as u32, (n - j) as u32)
}

/// `tr(Λ^k Z^l) = Σ_i l_i^k z_i^l`.
pub fn power_sum(k: u16, l: u16, n: usize) -> Poly {
    let vars = VarSet::zl(n);
    let mut p = Poly::zero(&vars);
    for i in 0..n {
        let mut e = Mono::one(2 * n);
        e.0[i] = l;
        e.0[n + i] = k;
        p.add_term(e, rational::one());
    }
    p
}

/// Coefficients of `log det(1 - (u - Z)^{-1}(v - Λ)^{-1})` for diagonal
/// `Z`, `Λ`: entry `(I, J)` (of `u^{-I} v^{-J}`) is
/// `-Σ_{r=1}^{min(I,J)} (1/r) C(I-1, r-1) C(J-1, r-1) tr(Λ^{J-r} Z^{I-r})`.
pub fn logdet_expansion(n: usize, order: usize) -> TruncSeries<Poly> {
    let vars = VarSet::zl(n);
    let zero = Poly::zero(&vars);
    TruncSeries::from_fn(order, &zero, |i, j| {
        let mut acc = zero.clone();
        for r in 1..=i.min(j) {
            let c = rational::binomial(i - 1, r - 1) * rational::binomial(j - 1, r - 1) / rational::q(r as i64);
            acc = acc.sub(&power_sum((j - r) as u16, (i - r) as u16, n).scale(&c));
        }
        acc
    })
}

/// `Ψ^P = P^P / (det(u - Z) det(v - Λ))` expanded at infinity, with
/// polynomial coefficients.
pub fn multisym_psi(n: usize, order: usize) -> Result<TruncSeries<Poly>> {
    let pp = universal_multisym(n);
    let one = Poly::one(&VarSet::zl(n));
    let p = |i: usize, j: usize| if i <= n && j <= n { p_coeff(&pp, n, i, j) } else { one.zero_like() };
    let num = TruncSeries::from_fn(order, &one, p);
    let du = TruncSeries::from_fn(order, &one, |i, j| if j == 0 { p(i, 0) } else { one.zero_like() });
    let dv = TruncSeries::from_fn(order, &one, |i, j| if i == 0 { p(0, j) } else { one.zero_like() });
    Ok(num.mul(&du.invert()?).mul(&dv.invert()?))
}

/// Symbol ring with one variable `P_ij` per coefficient, `(i, j) != (0, 0)`.
pub fn symbol_vars(n: usize) -> (Arc<VarSet>, Vec<(usize, usize)>) {
    let idx: Vec<(usize, usize)> =
        (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).filter(|&(i, j)| (i, j) != (0, 0)).collect();
    let vars = VarSet::new(idx.iter().map(|(i, j)| format!("P{i}{j}")));
    (vars, idx)
}

/// A power sum written as a polynomial in the symbols `P_ij`, together with
/// its value after substituting the actual `p_ij`.
#[derive(Clone, Debug)]
pub struct Recovered {
    pub k: u16,
    pub l: u16,
    pub in_symbols: Poly,
    pub substituted: Poly,
}

/// Solves the triangular log-det system for `tr(Λ^k Z^l)`, `k + l <= max_total`,
/// as polynomials in the `p_ij`.
pub fn recover_power_sums(n: usize, max_total: u16) -> Result<Vec<Recovered>> {
    let order = max_total as usize + 1;
    let (svars, idx) = symbol_vars(n);
    let one = Poly::one(&svars);
    let sym = |i: usize, j: usize| -> Poly {
        if (i, j) == (0, 0) {
            one.clone()
        } else if i <= n && j <= n {
            Poly::var(&svars, idx.iter().position(|&p| p == (i, j)).unwrap())
        } else {
            one.zero_like()
        }
    };
    let num = TruncSeries::from_fn(order, &one, &sym);
    let du = TruncSeries::from_fn(order, &one, |i, j| if j == 0 { sym(i, 0) } else { one.zero_like() });
    let dv = TruncSeries::from_fn(order, &one, |i, j| if i == 0 { sym(0, j) } else { one.zero_like() });
    let log = num.mul(&du.invert()?).mul(&dv.invert()?).log()?;

    // tr(Λ^k Z^l) = -[log]_{l+1,k+1} - Σ_{r>=2} (1/r) C(l, r-1) C(k, r-1) tr(Λ^{k+1-r} Z^{l+1-r})
    let mut table: std::collections::BTreeMap<(u16, u16), Poly> = Default::default();
    let pp = universal_multisym(n);
    let images: Vec<Poly> = idx.iter().map(|&(i, j)| p_coeff(&pp, n, i, j)).collect();
    let zl_one = Poly::one(&VarSet::zl(n));
    let mut out = Vec::new();
    for total in 0..=max_total {
        for k in 0..=total {
            let l = total - k;
            let mut t = log.get(l as usize + 1, k as usize + 1).neg();
            for r in 2..=(k.min(l) + 1) {
                let c = rational::binomial(l as usize, r as usize - 1) * rational::binomial(k as usize, r as usize - 1)
                    / rational::q(r as i64);
                t = t.sub(&table[&(k + 1 - r, l + 1 - r)].scale(&c));
            }
            let substituted = t.substitute(&images, &zl_one);
            table.insert((k, l), t.clone());
            out.push(Recovered { k, l, in_symbols: t, substituted });
        }
    }
    Ok(out)
}

/// `det(u - Z) = Σ_i p_{i0} u^{N-i}` read off `P^P`, as a polynomial in `u`
/// over `Q[z, l]` (index `i` holds the coefficient of `u^{N-i}`).
pub fn w_coeffs(n: usize) -> Vec<Poly> {
    let pp = universal_multisym(n);
    (0..=n).map(|i| p_coeff(&pp, n, i, 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_multisymmetric;
    use crate::rational::q;

    #[test]
    fn n1_single_factor() {
        let pp = universal_multisym(1);
        let v = VarSet::zl(1);
        assert_eq!(pp.coeff(1, 1), Poly::one(&v));
        assert_eq!(pp.coeff(0, 0), z(&v, 0).mul(&lambda(&v, 0)).sub(&Poly::one(&v)));
        assert_eq!(pp.coeff(1, 0), lambda(&v, 0).neg());
    }

    #[test]
    fn leading_and_multisymmetric() {
        for n in 1..=4 {
            let pp = universal_multisym(n);
            assert_eq!(p_coeff(&pp, n, 0, 0), Poly::one(&VarSet::zl(n)));
            for i in 0..=n {
                for j in 0..=n {
                    assert!(is_multisymmetric(&p_coeff(&pp, n, i, j)), "p_{i}{j}, N={n}");
                }
            }
        }
    }

    #[test]
    fn elementary_symmetric_column() {
        let n = 3;
        let pp = universal_multisym(n);
        let v = VarSet::zl(n);
        let e1 = (0..n).fold(Poly::zero(&v), |a, i| a.add(&z(&v, i)));
        assert_eq!(p_coeff(&pp, n, 1, 0), e1.neg());
        let e3 = (0..n).fold(Poly::one(&v), |a, i| a.mul(&z(&v, i)));
        assert_eq!(p_coeff(&pp, n, 3, 0), e3.neg());
    }

    #[test]
    fn power_sum_examples() {
        let v = VarSet::zl(2);
        assert_eq!(power_sum(0, 0, 2), Poly::constant(&v, q(2)));
        assert_eq!(power_sum(1, 1, 2), z(&v, 0).mul(&lambda(&v, 0)).add(&z(&v, 1).mul(&lambda(&v, 1))));
        assert_eq!(power_sum(2, 0, 2), lambda(&v, 0).pow(2).add(&lambda(&v, 1).pow(2)));
    }

    #[test]
    fn logdet_leading_coefficients() {
        let s = logdet_expansion(2, 3);
        assert_eq!(*s.get(1, 1), power_sum(0, 0, 2).neg());
        assert_eq!(*s.get(2, 1), power_sum(0, 1, 2).neg());
        assert!(s.get(0, 3).is_zero());
    }

    #[test]
    fn logdet_exponentiates_to_determinant_series() {
        for n in [2, 3] {
            let order = 4;
            let direct = multisym_psi(n, order).unwrap();
            assert_eq!(logdet_expansion(n, order).exp().unwrap(), direct, "N={n}");
        }
    }

    #[test]
    fn recovers_power_sums_n2() {
        for r in recover_power_sums(2, 3).unwrap() {
            assert_eq!(r.substituted, power_sum(r.k, r.l, 2), "k={} l={}", r.k, r.l);
        }
    }
}
