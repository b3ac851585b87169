//! Univariate polynomials in `u` and exact rational functions of `u`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Q};
use crate::ring::{CommRing, Ring};

/// Dense univariate polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> UPoly {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> UPoly {
        UPoly::constant(Q::one())
    }

    pub fn constant(a: Q) -> UPoly {
        UPoly::new(vec![a])
    }

    /// The monomial `u`.
    pub fn x() -> UPoly {
        UPoly::new(vec![Q::zero(), Q::one()])
    }

    /// `u - a`.
    pub fn linear(a: &Q) -> UPoly {
        UPoly::new(vec![-a, Q::one()])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Q>) -> UPoly {
        roots.into_iter().fold(UPoly::one(), |acc, r| acc.mul(&UPoly::linear(r)))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> UPoly {
        if self.c.is_empty() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&(Q::one() / l))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * Q::from_integer((k as i64).into())).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let t = &rem[k + dd] / &lc;
            if !Zero::is_zero(&t) {
                for (i, b) in d.c.iter().enumerate() {
                    rem[k + i] -= &t * b;
                }
            }
            quot[k] = t;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.c.is_empty() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn shift_mul(&self, k: usize) -> UPoly {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![Q::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }
}

impl Ring for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn one_like(&self) -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.c.is_empty() || rhs.c.is_empty() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
    fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| -a).collect() }
    }
    fn scale(&self, s: &Q) -> Self {
        UPoly::new(self.c.iter().map(|a| a * s).collect())
    }
}

impl CommRing for UPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.c.is_empty() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.c.is_empty().then_some(q)
    }
}

crate::ring_ops!(UPoly);

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if Zero::is_zero(a) {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = a.abs();
            let coeff = if abs.is_one() && k > 0 { String::new() } else { rational::to_string(&abs) };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{}u", if coeff.is_empty() { "" } else { "*" })?,
                _ => write!(f, "{coeff}{}u^{k}", if coeff.is_empty() { "" } else { "*" })?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    pub fn new(num: UPoly, den: UPoly) -> RatFn {
        assert!(!den.c.is_empty(), "zero denominator");
        if num.c.is_empty() {
            return RatFn::zero();
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let l = d.leading();
        if !l.is_one() {
            let inv = Q::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn zero() -> RatFn {
        RatFn { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn poly(p: UPoly) -> RatFn {
        RatFn { num: p, den: UPoly::one() }
    }

    pub fn constant(a: Q) -> RatFn {
        RatFn::poly(UPoly::constant(a))
    }

    /// `1/(u - a)`.
    pub fn simple_pole(a: &Q) -> RatFn {
        RatFn { num: UPoly::one(), den: UPoly::linear(a) }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&UPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn derivative(&self) -> RatFn {
        // (n/d)' = (n'd - nd')/d^2
        let top = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFn::new(top, self.den.mul(&self.den))
    }

    pub fn inv(&self) -> Option<RatFn> {
        (!self.num.c.is_empty()).then(|| RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFn) -> Option<RatFn> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!Zero::is_zero(&d)).then(|| self.num.eval(x) / d)
    }
}

impl Ring for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero()
    }
    fn one_like(&self) -> Self {
        RatFn::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.num.c.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::new(self.num.add(&rhs.num), self.den.clone());
        }
        RatFn::new(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFn::poly(self.num.mul(&rhs.num));
        }
        RatFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }
}

crate::ring_ops!(RatFn);

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_roots(&[q(1), q(2), frac(1, 3)]);
        let b = UPoly::from_roots(&[q(2), q(5)]);
        assert_eq!(a.gcd(&b), UPoly::linear(&q(2)));
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(a.div_exact(&UPoly::linear(&q(1))).is_some());
        assert!(a.div_exact(&UPoly::linear(&q(7))).is_none());
    }

    #[test]
    fn ratfn_reduces_and_differentiates() {
        let p = UPoly::from_roots(&[q(1), q(2)]);
        let r = RatFn::new(p.clone(), UPoly::linear(&q(1)).scale(&q(3)));
        assert_eq!(r, RatFn::poly(UPoly::linear(&q(2)).scale(&frac(1, 3))));
        let s = RatFn::simple_pole(&q(4));
        // d/du 1/(u-4) = -1/(u-4)^2
        let ds = s.derivative();
        assert_eq!(ds, RatFn::new(UPoly::constant(q(-1)), UPoly::from_roots(&[q(4), q(4)])));
        assert_eq!(s.add(&s.neg()), RatFn::zero());
        assert_eq!(s.mul(&s.inv().unwrap()), RatFn::constant(q(1)));
    }

    #[test]
    fn display() {
        let p = UPoly::new(vec![q(-1), q(0), frac(3, 2)]);
        assert_eq!(p.to_string(), "3/2*u^2 - 1");
    }
}
