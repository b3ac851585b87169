//! Polynomials in two central auxiliary variables `u`, `v` with
//! coefficients in an arbitrary (possibly noncommutative) ring.

use std::collections::BTreeMap;

use crate::rational::Q;
use crate::ring::Ring;

/// `sum c[(a, b)] u^a v^b`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<C: Ring> {
    zero: C,
    coeffs: BTreeMap<(u32, u32), C>,
}

impl<C: Ring> BiPoly<C> {
    pub fn zero(template: &C) -> Self {
        BiPoly { zero: template.zero_like(), coeffs: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut p = BiPoly::zero(&c);
        p.add_term(0, 0, c);
        p
    }

    /// `c * u^a * v^b`.
    pub fn term(a: u32, b: u32, c: C) -> Self {
        let mut p = BiPoly::zero(&c);
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((a, b)).or_insert_with(|| c.zero_like());
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    /// Coefficient of `u^a v^b`.
    pub fn coeff(&self, a: u32, b: u32) -> C {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_u(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    pub fn degree_v(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), c) in &o.coeffs {
            r.add_term(a, b, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    /// Product with `u`, `v` central: coefficient order is preserved.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = BiPoly::zero(&self.zero);
        for (&(a, b), c) in &self.coeffs {
            for (&(a2, b2), c2) in &o.coeffs {
                r.add_term(a + a2, b + b2, c.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Left-multiplies every coefficient by `x`.
    pub fn left_mul(&self, x: &C) -> Self {
        self.map(|c| x.mul(c))
    }

    /// Right-multiplies every coefficient by `x`.
    pub fn right_mul(&self, x: &C) -> Self {
        self.map(|c| c.mul(x))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = BiPoly::zero(&self.zero);
        for (&(a, b), c) in &self.coeffs {
            r.add_term(a, b, f(c));
        }
        r
    }

    pub fn map_into<D: Ring>(&self, template: &D, f: impl Fn(&C) -> D) -> BiPoly<D> {
        let mut r = BiPoly::zero(template);
        for (&(a, b), c) in &self.coeffs {
            r.add_term(a, b, f(c));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn product_of_linear_factors() {
        // (u - 2)(v - 3) - 1 = uv - 3u - 2v + 5
        let u = BiPoly::term(1, 0, q(1)).add(&BiPoly::constant(q(-2)));
        let v = BiPoly::term(0, 1, q(1)).add(&BiPoly::constant(q(-3)));
        let p = u.mul(&v).add(&BiPoly::constant(q(-1)));
        assert_eq!(p.coeff(1, 1), q(1));
        assert_eq!(p.coeff(1, 0), q(-3));
        assert_eq!(p.coeff(0, 1), q(-2));
        assert_eq!(p.coeff(0, 0), q(5));
        assert_eq!(p.iter().count(), 4);
        assert!(p.sub(&p).is_zero());
    }
}
