//! The universal central polynomial
//! `P^Z = (-1)^N Σ_σ :∏_{σ(i)=i} (1 - (v - x_i)(u - y_i)): (-1)^σ σ`.

use std::sync::Arc;

use num_traits::One;

use serde::{Deserialize, Serialize};

use super::helement::{HElement, HElementJson, HKey};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::multisym;
use crate::perm::Perm;
use crate::poly::{Mono, Poly, VarSet};
use crate::rational::Q;
use crate::ring::Ring;

/// Largest `N` accepted by the symbolic constructions. `WORKBENCH_MAX_N`
/// overrides the default of 4.
pub fn symbolic_bound() -> usize {
    std::env::var("WORKBENCH_MAX_N").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(4)
}

pub fn check_bound(n: usize) -> Result<()> {
    let bound = symbolic_bound();
    if n == 0 || n > bound {
        return Err(Error::OverBound { n, bound });
    }
    Ok(())
}

/// Commuting variables `x1..xN, y1..yN`, used to build normal-ordered
/// products before attaching permutations.
pub fn xy_vars(n: usize) -> Arc<VarSet> {
    VarSet::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))))
}

/// Attaches `σ` to a normal-ordered commutative polynomial in `x, y`:
/// `x^a y^b ↦ x^a σ (σ^{-1} y^b)`.
pub fn attach_perm(p: &Poly, s: &Perm) -> HElement {
    let n = s.n();
    let inv = s.inverse();
    let mut h = HElement::zero(n);
    for (m, c) in p.terms() {
        let x = Mono::from_exps(&m.exps()[..n]);
        let y = inv.permute_block(&Mono::from_exps(&m.exps()[n..]), 0);
        h.add_term(HKey { x, perm: s.clone(), y }, c.clone());
    }
    h
}

/// `P^Z` with coefficients keyed by `(deg_u, deg_v)`.
pub fn universal_central_poly(n: usize) -> Result<BiPoly<HElement>> {
    check_bound(n)?;
    let vars = xy_vars(n);
    let one = Poly::one(&vars);
    // 1 - (v - x_i)(u - y_i) = -uv + y_i v + x_i u + (1 - x_i y_i)
    let factor = |i: usize| {
        let (x, y) = (Poly::var(&vars, i), Poly::var(&vars, n + i));
        let mut f = BiPoly::zero(&one);
        f.add_term(1, 1, one.neg());
        f.add_term(0, 1, y.clone());
        f.add_term(1, 0, x.clone());
        f.add_term(0, 0, one.sub(&x.mul(&y)));
        f
    };
    let factors: Vec<BiPoly<Poly>> = (0..n).map(factor).collect();
    let mut out = BiPoly::zero(&HElement::zero(n));
    let global = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
    for s in Perm::all(n) {
        let mut prod = BiPoly::constant(one.clone());
        for i in s.fixed_points() {
            prod = prod.mul(&factors[i]);
        }
        let sign = if s.sign() > 0 { global.clone() } else { -global.clone() };
        for (&(a, b), c) in prod.iter() {
            out.add_term(a, b, attach_perm(c, &s).scale(&sign));
        }
    }
    Ok(out)
}

/// The table `c_ij`, where `P^Z = Σ c_ij v^{N-i} u^{N-j}`.
#[derive(Clone, Debug)]
pub struct CentralCoeffs {
    pub n: usize,
    pub poly: BiPoly<HElement>,
}

impl CentralCoeffs {
    pub fn compute(n: usize) -> Result<CentralCoeffs> {
        Ok(CentralCoeffs { n, poly: universal_central_poly(n)? })
    }

    pub fn c(&self, i: usize, j: usize) -> HElement {
        self.poly.coeff((self.n - j) as u32, (self.n - i) as u32)
    }

    /// All `(i, j, c_ij)`.
    pub fn all(&self) -> Vec<(usize, usize, HElement)> {
        let n = self.n;
        (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|(i, j)| (i, j, self.c(i, j))).collect()
    }

    pub fn to_json(&self) -> CentralJson {
        let coeffs = self
            .all()
            .into_iter()
            .map(|(i, j, c)| CentralEntryJson { i, j, text: c.to_string(), c: c.to_json() })
            .collect();
        CentralJson { n: self.n, coeffs }
    }
}

/// `coeffs` lists every `c_ij`, row-major in `(i, j)`; `text` is a
/// readable rendering of `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub coeffs: Vec<CentralEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralEntryJson {
    pub i: usize,
    pub j: usize,
    pub text: String,
    pub c: HElementJson,
}

/// Top filtration degree of `h` (deg x = deg y = 1, deg σ = 0) sent to
/// `Q[z, l]` by `x ↦ l`, `y ↦ z`, `σ ↦ 1`.
pub fn symbol_projection(h: &HElement) -> Poly {
    let n = h.n();
    let vars = VarSet::zl(n);
    let mut p = Poly::zero(&vars);
    let Some(d) = h.degree() else { return p };
    for (k, c) in h.homogeneous_part(d).terms() {
        let mut e = Mono::one(2 * n);
        e.0[..n].copy_from_slice(k.y.exps());
        e.0[n..].copy_from_slice(k.x.exps());
        p.add_term(e, c.clone());
    }
    p
}

/// Checks that the symbol of every coefficient of `P^Z` is the top-degree
/// part of the coefficient of `P^P` at the same `u, v` monomial (the `p_ij`
/// are inhomogeneous). Returns the first mismatch.
pub fn filtration_mismatch(n: usize) -> Result<Option<(u32, u32)>> {
    let pz = universal_central_poly(n)?;
    let pp = multisym::universal_multisym(n);
    for a in 0..=n as u32 {
        for b in 0..=n as u32 {
            let p = pp.coeff(a, b);
            let top = p.total_degree().map_or(p.clone(), |d| p.homogeneous_part(d));
            if symbol_projection(&pz.coeff(a, b)) != top {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

type Index = (usize, usize);

/// `[c_ij, c_kl] = 0` for all pairs; returns the first failing pair.
pub fn pairwise_commuting(cc: &CentralCoeffs) -> Result<Option<(Index, Index)>> {
    let all = cc.all();
    for (a, (i, j, x)) in all.iter().enumerate() {
        for (k, l, y) in &all[a + 1..] {
            if !x.bracket(y)?.is_empty() {
                return Ok(Some(((*i, *j), (*k, *l))));
            }
        }
    }
    Ok(None)
}

/// Generators of the center of `H_2`: `g1 = x1+x2`, `g2 = y1+y2`,
/// `h1 = x1 x2`, `h2 = y1 y2`, `T = x1 y1 + x2 y2 + s12`.
pub fn n2_generators() -> [HElement; 5] {
    let (x1, x2, y1, y2) = (HElement::x(2, 0), HElement::x(2, 1), HElement::y(2, 0), HElement::y(2, 1));
    let s = HElement::s(2, 0, 1);
    let t = x1.mul(&y1).add(&x2.mul(&y2)).add(&s);
    [x1.add(&x2), y1.add(&y2), x1.mul(&x2), y1.mul(&y2), t]
}

/// The element `x1 y1 + x2 y2 - s12`.
pub fn n2_printed_t() -> HElement {
    let (x1, x2, y1, y2) = (HElement::x(2, 0), HElement::x(2, 1), HElement::y(2, 0), HElement::y(2, 1));
    x1.mul(&y1).add(&x2.mul(&y2)).sub(&HElement::s(2, 0, 1))
}

/// Variables `g1, g2, h1, h2, T` for relations among the generators.
pub fn relation_vars() -> Arc<VarSet> {
    VarSet::new(["g1", "g2", "h1", "h2", "T"])
}

/// All polynomial relations among `g1, g2, h1, h2, T` with weighted degree
/// at most `max_weight` (weights 1, 1, 2, 2, 2), found by exact linear
/// elimination in `H_2`. The result is a basis of the relation space.
pub fn n2_relations(max_weight: u32) -> Result<Vec<Poly>> {
    let gens = n2_generators();
    let weights = [1u32, 1, 2, 2, 2];
    let vars = relation_vars();
    let mut monos: Vec<Mono> = Vec::new();
    let mut stack = vec![(0usize, Mono::one(5), 0u32)];
    while let Some((k, m, w)) = stack.pop() {
        if k == 5 {
            monos.push(m);
            continue;
        }
        let mut m = m;
        let mut w = w;
        loop {
            stack.push((k + 1, m.clone(), w));
            w += weights[k];
            if w > max_weight {
                break;
            }
            m.0[k] += 1;
        }
    }
    monos.sort();
    let values: Vec<HElement> = monos
        .iter()
        .map(|m| {
            let mut acc = HElement::one(2);
            for (k, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&gens[k]);
                }
            }
            acc
        })
        .collect();
    let mut keys: Vec<HKey> = values.iter().flat_map(|h| h.terms().map(|(k, _)| k.clone())).collect();
    keys.sort();
    keys.dedup();
    let mat = RatMatrix::from_fn(keys.len(), monos.len(), |r, c| values[c].coeff(&keys[r]));
    let rels = mat
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(&vars);
            for (m, c) in monos.iter().zip(v) {
                if !c.is_zero() {
                    p.add_term(m.clone(), c);
                }
            }
            normalize_relation(p)
        })
        .collect();
    Ok(rels)
}

/// Scales so that the leading coefficient is 1.
fn normalize_relation(p: Poly) -> Poly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => {
            let inv = Q::one() / c;
            p.scale(&inv)
        }
        _ => p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn n1_polynomial() {
        // P^Z = (v - x)(u - y) - 1 = uv - x u - y v + x y - 1
        let pz = universal_central_poly(1).unwrap();
        let x = HElement::x(1, 0);
        let y = HElement::y(1, 0);
        assert_eq!(pz.coeff(1, 1), HElement::one(1));
        assert_eq!(pz.coeff(1, 0), x.neg());
        assert_eq!(pz.coeff(0, 1), y.neg());
        assert_eq!(pz.coeff(0, 0), x.mul(&y).sub(&HElement::one(1)));
    }

    #[test]
    fn c00_is_one() {
        for n in 1..=3 {
            assert_eq!(CentralCoeffs::compute(n).unwrap().c(0, 0), HElement::one(n));
        }
    }

    #[test]
    fn n2_constant_term() {
        let cc = CentralCoeffs::compute(2).unwrap();
        let (x1, x2, y1, y2) = (HElement::x(2, 0), HElement::x(2, 1), HElement::y(2, 0), HElement::y(2, 1));
        let expect = HElement::one(2)
            .add(&x1.mul(&x2).mul(&y1).mul(&y2))
            .sub(&x1.mul(&y1))
            .sub(&x2.mul(&y2))
            .sub(&HElement::s(2, 0, 1));
        assert_eq!(cc.c(2, 2), expect);
        assert_eq!(cc.c(0, 1), y1.add(&y2).neg());
    }

    #[test]
    fn central_n2() {
        let cc = CentralCoeffs::compute(2).unwrap();
        for (i, j, c) in cc.all() {
            assert!(c.is_central(), "c_{i}{j} = {c}");
        }
        assert_eq!(pairwise_commuting(&cc).unwrap(), None);
    }

    #[test]
    fn filtration_n2() {
        assert_eq!(filtration_mismatch(2).unwrap(), None);
    }

    #[test]
    fn printed_t_is_not_central() {
        let t = n2_printed_t();
        assert!(!t.is_central());
        // [x1, T] = 2 (x2 - x1) s12
        let x1 = HElement::x(2, 0);
        let expect = HElement::x(2, 1).sub(&x1).mul(&HElement::s(2, 0, 1)).scale(&q(2));
        assert_eq!(x1.bracket(&t).unwrap(), expect);
        assert!(n2_generators().iter().all(HElement::is_central));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(universal_central_poly(9), Err(Error::OverBound { n: 9, .. })));
        assert!(universal_central_poly(0).is_err());
    }
}
