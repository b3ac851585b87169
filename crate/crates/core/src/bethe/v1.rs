//! The space `V_1 = (V^{⊗N})_1 ⊗ Q[z, l]` with basis
//! `ε_τ = ε_{τ(1)} ⊗ … ⊗ ε_{τ(N)}`, the isomorphism `ι: V_1 → H_N`, the
//! left/right `S_N` actions and the projection `pr`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cherednik::{HElement, HKey};
use crate::error::{Error, Result};
use crate::perm::{act, Mode, Perm};
use crate::poly::{Mono, Poly, VarSet};
use crate::rational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V1Element {
    n: usize,
    vars: Arc<VarSet>,
    coeffs: BTreeMap<Perm, Poly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

impl V1Element {
    pub fn zero(n: usize) -> V1Element {
        V1Element { n, vars: VarSet::zl(n), coeffs: BTreeMap::new() }
    }

    /// `ε_τ`.
    pub fn basis(tau: &Perm) -> V1Element {
        let n = tau.n();
        let mut v = V1Element::zero(n);
        v.add(tau, &Poly::one(&v.vars));
        v
    }

    /// `p ε_τ`.
    pub fn single(tau: &Perm, p: Poly) -> Result<V1Element> {
        let mut v = V1Element::zero(tau.n());
        v.check_poly(&p)?;
        v.add(tau, &p);
        Ok(v)
    }

    fn check_poly(&self, p: &Poly) -> Result<()> {
        if p.arity() != 2 * self.n {
            return Err(Error::DimensionMismatch { expected: 2 * self.n, got: p.arity() });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn coeff(&self, tau: &Perm) -> Poly {
        self.coeffs.get(tau).cloned().unwrap_or_else(|| Poly::zero(&self.vars))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Perm, &Poly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self += p ε_τ`.
    pub fn add(&mut self, tau: &Perm, p: &Poly) {
        let p = p.rehome(&self.vars, Mono::clone);
        let e = self.coeffs.entry(tau.clone()).or_insert_with(|| Poly::zero(&self.vars));
        *e = e.add(&p);
        if e.is_zero() {
            self.coeffs.remove(tau);
        }
    }

    pub fn plus(&self, o: &V1Element) -> V1Element {
        let mut r = self.clone();
        for (t, p) in &o.coeffs {
            r.add(t, p);
        }
        r
    }

    pub fn scale_poly(&self, p: &Poly) -> V1Element {
        let mut r = V1Element::zero(self.n);
        for (t, c) in &self.coeffs {
            r.add(t, &c.mul(p));
        }
        r
    }

    /// `σ^L` (permutes the `l` variables and the letters `ε_j`) or `σ^R`
    /// (permutes the `z` variables and the tensor factors).
    pub fn act(&self, s: &Perm, side: Side) -> Result<V1Element> {
        let mut r = V1Element::zero(self.n);
        let inv = s.inverse();
        for (t, p) in &self.coeffs {
            match side {
                Side::L => r.add(&s.compose(t), &act(s, p, Mode::Lambda)?),
                Side::R => r.add(&t.compose(&inv), &act(s, p, Mode::Z)?),
            }
        }
        Ok(r)
    }

    /// `(1/N!) Σ_σ σ^side v`, a projection onto the invariants.
    pub fn symmetrize(&self, side: Side) -> Result<V1Element> {
        let c = rational::one() / rational::factorial(self.n);
        let mut r = V1Element::zero(self.n);
        for s in Perm::all(self.n) {
            r = r.plus(&self.act(&s, side)?);
        }
        Ok(r.scale_poly(&Poly::constant(&self.vars, c)))
    }

    /// `pr: Σ p_σ ε_σ ↦ p_id`.
    pub fn projection_pr(&self) -> Poly {
        self.coeff(&Perm::identity(self.n))
    }

    pub fn to_json(&self) -> V1Json {
        let n = self.n;
        let mut terms = Vec::new();
        for (t, p) in &self.coeffs {
            for (m, c) in p.terms().rev() {
                let (num, den) = rational::to_parts(c);
                terms.push(V1TermJson {
                    perm: t.one_line(),
                    z: m.exps()[..n].to_vec(),
                    l: m.exps()[n..].to_vec(),
                    n: num,
                    d: den,
                });
            }
        }
        V1Json { n, terms }
    }

    pub fn from_json(j: &V1Json) -> Result<V1Element> {
        let mut v = V1Element::zero(j.n);
        for t in &j.terms {
            if t.z.len() != j.n || t.l.len() != j.n {
                return Err(Error::DimensionMismatch { expected: j.n, got: t.z.len().max(t.l.len()) });
            }
            let tau = Perm::from_one_line(&t.perm)?;
            if tau.n() != j.n {
                return Err(Error::DimensionMismatch { expected: j.n, got: tau.n() });
            }
            let e: Vec<u16> = t.z.iter().chain(&t.l).copied().collect();
            let p = Poly::monomial(&v.vars, Mono::from_exps(&e), rational::from_parts(&t.n, &t.d)?);
            v.add(&tau, &p);
        }
        Ok(v)
    }
}

/// `ι(z^b l^a ε_τ) = x^a τ y^b`.
pub fn iota(v: &V1Element) -> HElement {
    let n = v.n;
    let mut h = HElement::zero(n);
    for (t, p) in &v.coeffs {
        for (m, c) in p.terms() {
            let key = HKey { x: Mono::from_exps(&m.exps()[n..]), perm: t.clone(), y: Mono::from_exps(&m.exps()[..n]) };
            h.add_term(key, c.clone());
        }
    }
    h
}

pub fn iota_inv(h: &HElement) -> V1Element {
    let n = h.n();
    let mut v = V1Element::zero(n);
    for (k, c) in h.terms() {
        let e: Vec<u16> = k.y.exps().iter().chain(k.x.exps()).copied().collect();
        v.add(&k.perm, &Poly::monomial(&v.vars, Mono::from_exps(&e), c.clone()));
    }
    v
}

/// `N! · pr(ι^{-1}(h))`, normalized so that `q(x) p(y) e ↦ q(l) p(z)`.
pub fn pr_iota_inv(h: &HElement) -> Poly {
    iota_inv(h).projection_pr().scale(&rational::factorial(h.n()))
}

/// `f(l, z) ↦ f(x, y) e`, the inverse of [`pr_iota_inv`] on `H_N e`.
pub fn poly_times_e(f: &Poly) -> Result<HElement> {
    let n = f.arity() / 2;
    let v = V1Element::single(&Perm::identity(n), f.clone())?;
    iota(&v).h_mul(&HElement::symmetrizer(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct V1Json {
    #[serde(rename = "N")]
    pub n: usize,
    pub terms: Vec<V1TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct V1TermJson {
    pub perm: Vec<usize>,
    pub z: Vec<u16>,
    pub l: Vec<u16>,
    pub n: String,
    pub d: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multisym::{lambda, z};

    #[test]
    fn iota_examples() {
        let n = 2;
        let v = VarSet::zl(n);
        let id = Perm::identity(n);
        let e = V1Element::single(&id, z(&v, 0).mul(&lambda(&v, 1))).unwrap();
        let expect = HElement::x(n, 1).mul(&HElement::y(n, 0));
        assert_eq!(iota(&e), expect);
        let s = Perm::transposition(n, 0, 1);
        assert_eq!(iota(&V1Element::basis(&s)), HElement::perm(&s));
        assert_eq!(iota_inv(&iota(&e)), e);
    }

    #[test]
    fn left_action_on_basis() {
        let s = Perm::from_one_line(&[2, 3, 1]).unwrap();
        let id = Perm::identity(3);
        assert_eq!(V1Element::basis(&id).act(&s, Side::L).unwrap(), V1Element::basis(&s));
    }

    #[test]
    fn pr_of_symmetrized_monomial() {
        // ι^{-1}(x1 y2 e), rescaled, is l1 z2
        let n = 2;
        let v = VarSet::zl(n);
        let h = HElement::x(n, 0).mul(&HElement::y(n, 1)).mul(&HElement::symmetrizer(n));
        assert_eq!(pr_iota_inv(&h), lambda(&v, 0).mul(&z(&v, 1)));
        assert_eq!(V1Element::basis(&Perm::identity(n)).projection_pr(), Poly::one(&v));
    }

    #[test]
    fn json_roundtrip() {
        let n = 2;
        let v = VarSet::zl(n);
        let s = Perm::transposition(n, 0, 1);
        let e = V1Element::single(&s, z(&v, 0).scale(&rational::frac(-2, 3)).add(&lambda(&v, 1))).unwrap();
        assert_eq!(V1Element::from_json(&e.to_json()).unwrap(), e);
    }
}
