//! The universal spherical polynomial `P^U = :rdet(D - K): e` with
//! `D = diag((v - x_i)(u - y_i))` and `K` the all-ones matrix, computed over
//! the free algebra on `x_i, y_i, u, v`.

use std::collections::BTreeMap;

use num_traits::One;

use super::central::{check_bound, universal_central_poly};
use super::helement::HElement;
use crate::bipoly::BiPoly;
use crate::error::Result;
use crate::matrix::{rdet, Matrix};
use crate::perm::Perm;
use crate::poly::Mono;
use crate::rational::{self, Q};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(u8),
    Y(u8),
    U,
    V,
}

/// Noncommutative polynomial: a combination of words in [`Letter`]s.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Vec<Letter>, Q>,
}

impl WordPoly {
    pub fn letter(l: Letter) -> WordPoly {
        WordPoly { terms: BTreeMap::from([(vec![l], Q::one())]) }
    }

    pub fn constant(c: Q) -> WordPoly {
        let mut w = WordPoly::default();
        if !c.is_zero() {
            w.terms.insert(Vec::new(), c);
        }
        w
    }

    fn add_term(&mut self, w: Vec<Letter>, c: Q) {
        let e = self.terms.entry(w).or_insert_with(rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &Q)> {
        self.terms.iter()
    }

    /// The normal-ordering map `: :`: each word goes to its commutative image
    /// with every `x` left of every `y`, as an `H_N` element in each
    /// `(deg_u, deg_v)` slot.
    pub fn normal_order(&self, n: usize) -> BiPoly<HElement> {
        let mut out = BiPoly::zero(&HElement::zero(n));
        for (w, c) in &self.terms {
            let (mut x, mut y, mut du, mut dv) = (Mono::one(n), Mono::one(n), 0u32, 0u32);
            for l in w {
                match *l {
                    Letter::X(i) => x.0[i as usize] += 1,
                    Letter::Y(i) => y.0[i as usize] += 1,
                    Letter::U => du += 1,
                    Letter::V => dv += 1,
                }
            }
            out.add_term(du, dv, HElement::term(x, Perm::identity(n), y, c.clone()));
        }
        out
    }
}

impl Ring for WordPoly {
    fn zero_like(&self) -> Self {
        WordPoly::default()
    }
    fn one_like(&self) -> Self {
        WordPoly::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &rhs.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut r = WordPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                r.add_term(w, ca * cb);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        WordPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return WordPoly::default();
        }
        WordPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }
}

/// The matrix `D - K` over the free algebra.
pub fn spherical_matrix(n: usize) -> Matrix<WordPoly> {
    let one = WordPoly::constant(Q::one());
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            let v_x = WordPoly::letter(Letter::V).sub(&WordPoly::letter(Letter::X(i as u8)));
            let u_y = WordPoly::letter(Letter::U).sub(&WordPoly::letter(Letter::Y(i as u8)));
            v_x.mul(&u_y).sub(&one)
        } else {
            one.neg()
        }
    })
}

/// `P^U`, keyed by `(deg_u, deg_v)`.
pub fn spherical_poly(n: usize) -> Result<BiPoly<HElement>> {
    check_bound(n)?;
    let r = rdet(&spherical_matrix(n))?;
    let e = HElement::symmetrizer(n);
    Ok(r.normal_order(n).map(|c| c.mul(&e)))
}

/// First `(deg_u, deg_v)` where `P^Z e` and `P^U` differ, if any.
pub fn satake_mismatch(n: usize) -> Result<Option<(u32, u32)>> {
    let pz = universal_central_poly(n)?;
    let pu = spherical_poly(n)?;
    let e = HElement::symmetrizer(n);
    for a in 0..=n as u32 {
        for b in 0..=n as u32 {
            if pz.coeff(a, b).h_mul(&e)? != pu.coeff(a, b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// `e P^U = P^U`, coefficient-wise.
pub fn spherical_is_left_invariant(n: usize) -> Result<bool> {
    let pu = spherical_poly(n)?;
    let e = HElement::symmetrizer(n);
    for (_, c) in pu.iter() {
        if e.h_mul(c)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}
