//! Elements of the rational Cherednik algebra `H_N` in normal form
//! `Σ c · x^a σ y^b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poly::Mono;
use crate::rational::{self, Q};
use crate::ring::Ring;

/// One normal-form basis word `x^a σ y^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HKey {
    pub x: Mono,
    pub perm: Perm,
    pub y: Mono,
}

#[derive(Clone, PartialEq, Eq)]
pub struct HElement {
    n: usize,
    terms: BTreeMap<HKey, Q>,
}

impl HElement {
    pub fn zero(n: usize) -> HElement {
        HElement { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> HElement {
        HElement::term(Mono::one(n), Perm::identity(n), Mono::one(n), c)
    }

    pub fn one(n: usize) -> HElement {
        HElement::constant(n, Q::one())
    }

    pub fn term(x: Mono, perm: Perm, y: Mono, c: Q) -> HElement {
        let mut h = HElement::zero(perm.n());
        h.add_term(HKey { x, perm, y }, c);
        h
    }

    /// `x_i`, 0-based.
    pub fn x(n: usize, i: usize) -> HElement {
        HElement::term(Mono::var(n, i), Perm::identity(n), Mono::one(n), Q::one())
    }

    /// `y_i`, 0-based.
    pub fn y(n: usize, i: usize) -> HElement {
        HElement::term(Mono::one(n), Perm::identity(n), Mono::var(n, i), Q::one())
    }

    pub fn perm(p: &Perm) -> HElement {
        let n = p.n();
        HElement::term(Mono::one(n), p.clone(), Mono::one(n), Q::one())
    }

    /// `s_ij`, 0-based.
    pub fn s(n: usize, i: usize, j: usize) -> HElement {
        HElement::perm(&Perm::transposition(n, i, j))
    }

    /// The symmetrizer `e = (1/N!) Σ_σ σ`.
    pub fn symmetrizer(n: usize) -> HElement {
        let c = Q::one() / rational::factorial(n);
        let mut h = HElement::zero(n);
        for p in Perm::all(n) {
            h.add_term(HKey { x: Mono::one(n), perm: p, y: Mono::one(n) }, c.clone());
        }
        h
    }

    /// Generators `x_i`, `y_i`, `s_{i,i+1}`.
    pub fn generators(n: usize) -> Vec<HElement> {
        let mut g: Vec<HElement> = (0..n).map(|i| HElement::x(n, i)).collect();
        g.extend((0..n).map(|i| HElement::y(n, i)));
        g.extend(Perm::adjacent(n).iter().map(HElement::perm));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HKey, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &HKey) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(rational::zero)
    }

    pub fn add_term(&mut self, k: HKey, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check(&self, o: &HElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: o.n });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &HElement) -> Result<HElement> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        Ok(r)
    }

    /// Maximal total degree in `x` and `y` (permutations have degree 0).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.x.degree() + k.y.degree()).max()
    }

    /// The part of total `x, y` degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> HElement {
        let terms = self.terms.iter().filter(|(k, _)| k.x.degree() + k.y.degree() == d);
        HElement { n: self.n, terms: terms.map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// `x^m · self`.
    pub fn left_mul_xmono(&self, m: &Mono) -> HElement {
        let terms = self.terms.iter().map(|(k, c)| (HKey { x: k.x.mul(m), perm: k.perm.clone(), y: k.y.clone() }, c.clone()));
        HElement { n: self.n, terms: terms.collect() }
    }

    /// `σ · self`, using `σ x_i = x_{σ(i)} σ`.
    pub fn left_mul_perm(&self, s: &Perm) -> HElement {
        let mut r = HElement::zero(self.n);
        for (k, c) in &self.terms {
            r.add_term(HKey { x: s.permute_block(&k.x, 0), perm: s.compose(&k.perm), y: k.y.clone() }, c.clone());
        }
        r
    }

    /// `y_j · self`, using `y_j f(x) = f(x) y_j + Σ_{a≠j} Δ_{ja}(f) s_{ja}`
    /// with `Δ_{ja}(f) = (f - s_{ja} f) / (x_j - x_a)`, then
    /// `y_j τ = τ y_{τ^{-1}(j)}`.
    pub fn left_mul_y(&self, j: usize) -> HElement {
        let n = self.n;
        let mut r = HElement::zero(n);
        for (k, c) in &self.terms {
            let back = k.perm.inverse().apply(j);
            r.add_term(HKey { x: k.x.clone(), perm: k.perm.clone(), y: k.y.mul(&Mono::var(n, back)) }, c.clone());
            for a in (0..n).filter(|&a| a != j) {
                let (p, q) = (k.x.0[j], k.x.0[a]);
                if p == q {
                    continue;
                }
                let s = Perm::transposition(n, j, a);
                let perm = s.compose(&k.perm);
                let (lo, hi, c) = if p > q { (q, p, c.clone()) } else { (p, q, -c.clone()) };
                // x^rest x_j^lo x_a^lo Σ_{t=0}^{hi-lo-1} x_j^t x_a^{hi-lo-1-t}
                for t in 0..hi - lo {
                    let mut x = k.x.clone();
                    x.0[j] = lo + t;
                    x.0[a] = lo + (hi - lo - 1 - t);
                    r.add_term(HKey { x, perm: perm.clone(), y: k.y.clone() }, c.clone());
                }
            }
        }
        r
    }

    /// Product in `H_N`, renormalized.
    pub fn h_mul(&self, o: &HElement) -> Result<HElement> {
        self.check(o)?;
        let mut ymemo: HashMap<Mono, HElement> = HashMap::new();
        let mut r = HElement::zero(self.n);
        for (k, c) in &self.terms {
            let py = y_power_times(&k.y, o, &mut ymemo);
            let t = py.left_mul_perm(&k.perm).left_mul_xmono(&k.x);
            for (k2, c2) in t.terms {
                r.add_term(k2, c2 * c);
            }
        }
        Ok(r)
    }

    /// Two-sided commutator `[self, o]`.
    pub fn bracket(&self, o: &HElement) -> Result<HElement> {
        Ok(self.h_mul(o)?.sub(&o.h_mul(self)?))
    }

    /// Commutes with every generator `x_i`, `y_i`, `s_{i,i+1}`.
    pub fn is_central(&self) -> bool {
        HElement::generators(self.n).iter().all(|g| self.bracket(g).map(|b| b.is_empty()).unwrap_or(false))
    }

    /// The first generator this element fails to commute with.
    pub fn central_witness(&self) -> Option<HElement> {
        HElement::generators(self.n).into_iter().find(|g| !self.bracket(g).map(|b| b.is_empty()).unwrap_or(false))
    }

    pub fn to_json(&self) -> HElementJson {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let (n, d) = rational::to_parts(c);
                HTermJson { x: k.x.exps().to_vec(), perm: k.perm.one_line(), y: k.y.exps().to_vec(), n, d }
            })
            .collect();
        HElementJson { n: self.n, terms }
    }

    pub fn from_json(j: &HElementJson) -> Result<HElement> {
        let mut h = HElement::zero(j.n);
        for t in &j.terms {
            if t.x.len() != j.n || t.y.len() != j.n || t.perm.len() != j.n {
                return Err(Error::DimensionMismatch { expected: j.n, got: t.x.len().max(t.y.len()).max(t.perm.len()) });
            }
            let key = HKey { x: Mono::from_exps(&t.x), perm: Perm::from_one_line(&t.perm)?, y: Mono::from_exps(&t.y) };
            h.add_term(key, rational::from_parts(&t.n, &t.d)?);
        }
        Ok(h)
    }
}

/// `y^m · b`, memoized over the monomials already built.
fn y_power_times(m: &Mono, b: &HElement, memo: &mut HashMap<Mono, HElement>) -> HElement {
    if m.is_one() {
        return b.clone();
    }
    if let Some(h) = memo.get(m) {
        return h.clone();
    }
    let j = m.0.iter().position(|&e| e > 0).unwrap();
    let mut rest = m.clone();
    rest.0[j] -= 1;
    let h = y_power_times(&rest, b, memo).left_mul_y(j);
    memo.insert(m.clone(), h.clone());
    h
}

impl Ring for HElement {
    fn zero_like(&self) -> Self {
        HElement::zero(self.n)
    }
    fn one_like(&self) -> Self {
        HElement::one(self.n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("N mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.h_mul(rhs).expect("N mismatch")
    }
    fn neg(&self) -> Self {
        HElement { n: self.n, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return HElement::zero(self.n);
        }
        HElement { n: self.n, terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }
}

crate::ring_ops!(HElement);

fn fmt_mono(f: &mut fmt::Formatter<'_>, letter: char, m: &Mono) -> fmt::Result {
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => write!(f, "{letter}{}", i + 1)?,
            _ => write!(f, "{letter}{}^{e}", i + 1)?,
        }
    }
    Ok(())
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c < &rational::zero();
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = if neg { -c.clone() } else { c.clone() };
            let bare = k.x.is_one() && k.y.is_one() && k.perm.is_identity();
            if !a.is_one() || bare {
                write!(f, "{}", rational::to_string(&a))?;
            }
            fmt_mono(f, 'x', &k.x)?;
            if !k.perm.is_identity() {
                write!(f, "[{}]", k.perm.one_line().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""))?;
            }
            fmt_mono(f, 'y', &k.y)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HElementJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub terms: Vec<HTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTermJson {
    pub x: Vec<u16>,
    pub perm: Vec<usize>,
    pub y: Vec<u16>,
    pub n: String,
    pub d: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> HElement {
        HElement::x(2, i)
    }
    fn y(i: usize) -> HElement {
        HElement::y(2, i)
    }

    #[test]
    fn defining_relations_n2() {
        let s = HElement::s(2, 0, 1);
        // y1 x2 = x2 y1 - s12
        assert_eq!(y(0).h_mul(&x(1)).unwrap(), x(1).h_mul(&y(0)).unwrap().sub(&s));
        // y1 x1 = x1 y1 + s12
        assert_eq!(y(0).h_mul(&x(0)).unwrap(), x(0).h_mul(&y(0)).unwrap().add(&s));
        // s x1 = x2 s
        assert_eq!(s.h_mul(&x(0)).unwrap(), x(1).h_mul(&s).unwrap());
        assert_eq!(s.h_mul(&s).unwrap(), HElement::one(2));
    }

    #[test]
    fn relations_n3() {
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let xy = HElement::x(n, i).bracket(&HElement::y(n, j)).unwrap();
                let expect = if i != j {
                    HElement::s(n, i, j)
                } else {
                    (0..n).filter(|&a| a != i).fold(HElement::zero(n), |acc, a| acc.sub(&HElement::s(n, i, a)))
                };
                assert_eq!(xy, expect, "[x{i}, y{j}]");
                assert!(HElement::y(n, i).bracket(&HElement::y(n, j)).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn higher_power_commutator() {
        // [y1, x1^3] = Σ_a Δ_{1a}(x1^3) s_1a; for N=2 that is (x1^2 + x1 x2 + x2^2) s12
        let x3 = x(0).pow(3);
        let lhs = y(0).h_mul(&x3).unwrap().sub(&x3.h_mul(&y(0)).unwrap());
        let s = HElement::s(2, 0, 1);
        let rhs = x(0).pow(2).add(&x(0).h_mul(&x(1)).unwrap()).add(&x(1).pow(2)).h_mul(&s).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetrizer_idempotent() {
        for n in 1..=3 {
            let e = HElement::symmetrizer(n);
            assert_eq!(e.h_mul(&e).unwrap(), e);
            for p in Perm::all(n) {
                assert_eq!(HElement::perm(&p).h_mul(&e).unwrap(), e);
            }
        }
    }

    #[test]
    fn central_examples() {
        let n = 3;
        let sx = (0..n).fold(HElement::zero(n), |a, i| a.add(&HElement::x(n, i)));
        let sy = (0..n).fold(HElement::zero(n), |a, i| a.add(&HElement::y(n, i)));
        assert!(sx.is_central());
        assert!(sy.is_central());
        assert!(!HElement::x(n, 0).is_central());
        assert!(HElement::x(2, 0).h_mul(&HElement::x(3, 0)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let h = y(0).h_mul(&x(0)).unwrap().scale(&rational::frac(-3, 2));
        let j = h.to_json();
        assert_eq!(HElement::from_json(&j).unwrap(), h);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"N\":2"));
    }
}
