//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::ring::{CommRing, Ring};

/// Ordered list of named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<VarSet> {
        Arc::new(VarSet { names: names.into_iter().map(Into::into).collect() })
    }

    /// `z1..zN, l1..lN`, the coordinate ring of `N` points with spectral data.
    pub fn zl(n: usize) -> Arc<VarSet> {
        let z = (1..=n).map(|i| format!("z{i}"));
        let l = (1..=n).map(|i| format!("l{i}"));
        VarSet::new(z.chain(l))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub SmallVec<[u16; 8]>);

impl Mono {
    pub fn one(arity: usize) -> Mono {
        Mono(SmallVec::from_elem(0, arity))
    }

    pub fn from_exps(e: &[u16]) -> Mono {
        Mono(SmallVec::from_slice(e))
    }

    pub fn var(arity: usize, i: usize) -> Mono {
        let mut m = Mono::one(arity);
        m.0[i] = 1;
        m
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, Q>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Poly {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Q) -> Poly {
        let mut p = Poly::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Poly {
        Poly::constant(vars, Q::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Poly {
        Poly::monomial(vars, Mono::var(vars.len(), i), Q::one())
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Poly {
        let i = vars.index(name).unwrap_or_else(|| panic!("no variable {name}"));
        Poly::var(vars, i)
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Mono, c: Q) -> Poly {
        assert_eq!(m.arity(), vars.len(), "monomial arity");
        let mut p = Poly::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Mono, Q)>) -> Result<Poly> {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            if m.arity() != vars.len() {
                return Err(Error::DimensionMismatch { expected: vars.len(), got: m.arity() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Q> {
        self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::one(self.arity()))
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Keeps only the terms of the given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: if Zero::is_zero(c) {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect()
            },
        }
    }

    fn check_vars(&self, o: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch(format!("{:?} vs {:?}", self.vars.names, o.vars.names)))
        }
    }

    pub fn try_add(&self, o: &Poly) -> Result<Poly> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Poly) -> Result<Poly> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Poly) -> Result<Poly> {
        self.check_vars(o)?;
        let mut r = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    /// Evaluates at a point given as one rational per variable.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.arity());
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share a target
    /// variable set.
    pub fn substitute<R: Ring>(&self, images: &[R], unit: &R) -> R {
        assert_eq!(images.len(), self.arity());
        let mut acc = unit.zero_like();
        let mut powers: Vec<Vec<R>> = images.iter().map(|x| vec![x.one_like()]).collect();
        for (m, c) in &self.terms {
            let mut t = unit.scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Applies `f` to every exponent vector (e.g. a variable permutation).
    pub fn map_monomials(&self, f: impl Fn(&Mono) -> Mono) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            r.add_term(f(m), c.clone());
        }
        r
    }

    /// Re-expresses in a different variable set via an exponent map.
    pub fn rehome(&self, vars: &Arc<VarSet>, f: impl Fn(&Mono) -> Mono) -> Poly {
        let mut r = Poly::zero(vars);
        for (m, c) in &self.terms {
            r.add_term(f(m), c.clone());
        }
        r
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact_poly(&self, d: &Poly) -> Option<Poly> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars);
        while let Some((lr, cr)) = rem.leading() {
            if !ld.divides(lr) {
                return None;
            }
            let m = ld.quotient_of(lr);
            let c = cr / &lc;
            rem = rem.try_sub(&d.mul_mono(&m, &c)).ok()?;
            quot.add_term(m, c);
        }
        Some(quot)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Poly::one(&self.vars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("variable-set mismatch")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("variable-set mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("variable-set mismatch")
    }
    fn neg(&self) -> Self {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn scale(&self, c: &Q) -> Self {
        self.mul_mono(&Mono::one(self.arity()), c)
    }
}

impl CommRing for Poly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}

crate::ring_ops!(Poly);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(rational::to_string(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Canonical JSON form: terms sorted leading-first in graded-lex order,
/// integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u16>,
    pub n: String,
    pub d: String,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    let (n, d) = rational::to_parts(c);
                    TermJson { e: m.0.to_vec(), n, d }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let vars = VarSet::new(j.vars.iter().cloned());
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((Mono::from_exps(&t.e), rational::from_parts(&t.n, &t.d)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(&vars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn zl2() -> (Arc<VarSet>, Poly, Poly, Poly, Poly) {
        let v = VarSet::zl(2);
        let (z1, z2, l1, l2) = (Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2), Poly::var(&v, 3));
        (v, z1, z2, l1, l2)
    }

    #[test]
    fn difference_of_squares() {
        let (_, z1, _, l1, _) = zl2();
        let lhs = &(&z1 + &l1) * &(&z1 - &l1);
        assert_eq!(lhs, &(&z1 * &z1) - &(&l1 * &l1));
    }

    #[test]
    fn annihilator_and_cancellation() {
        let (v, z1, z2, _, _) = zl2();
        assert!(Ring::is_zero(&(&z1 * &Poly::zero(&v))));
        let p = &(&z1 * &z2) + &Poly::one(&v);
        let r = &p + &Poly::constant(&v, q(-1));
        assert_eq!(r.len(), 1);
        assert_eq!(r, &z1 * &z2);
    }

    #[test]
    fn var_set_mismatch_is_an_error() {
        let a = Poly::var(&VarSet::zl(2), 0);
        let b = Poly::var(&VarSet::zl(3), 0);
        assert!(matches!(a.try_mul(&b), Err(Error::VarMismatch(_))));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn grlex_order() {
        let a = Mono::from_exps(&[1, 0]);
        let b = Mono::from_exps(&[0, 2]);
        let c = Mono::from_exps(&[0, 1]);
        assert!(b > a && a > c);
    }

    #[test]
    fn exact_division() {
        let (_, z1, z2, l1, l2) = zl2();
        let d = &l1 - &l2;
        let f = &(&d * &(&z1 + &z2)) * &(&l1 + &Poly::constant(z1.vars(), frac(1, 3)));
        assert_eq!(f.div_exact_poly(&d).unwrap(), &(&z1 + &z2) * &(&l1 + &Poly::constant(z1.vars(), frac(1, 3))));
        assert!(z1.div_exact_poly(&d).is_none());
    }

    #[test]
    fn json_roundtrip_and_order() {
        let (_, z1, z2, _, _) = zl2();
        let p = &(&z1 * &z1) + &z2.scale(&frac(-3, 2));
        let j = p.to_json();
        assert_eq!(j.terms[0].e, vec![2, 0, 0, 0]);
        assert_eq!(j.terms[1].n, "-3");
        assert_eq!(Poly::from_json(&j).unwrap(), p);
        assert_eq!(p.to_string(), "z1^2 - 3/2*z2");
    }
}
