//! Truncated bivariate series in `u^{-1}`, `v^{-1}`.
//!
//! Entry `(i, j)` is the coefficient of `u^{-i} v^{-j}` for `0 <= i, j <= T`.
//! All products truncate at `T` in each variable separately, so every
//! stored coefficient is exact.

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Ring> {
    order: usize,
    c: Vec<C>,
}

impl<C: Ring> TruncSeries<C> {
    pub fn zero(order: usize, template: &C) -> Self {
        let n = (order + 1) * (order + 1);
        TruncSeries { order, c: vec![template.zero_like(); n] }
    }

    pub fn one(order: usize, template: &C) -> Self {
        let mut s = Self::zero(order, template);
        s.set(0, 0, template.one_like());
        s
    }

    pub fn from_fn(order: usize, template: &C, f: impl Fn(usize, usize) -> C) -> Self {
        let mut s = Self::zero(order, template);
        for i in 0..=order {
            for j in 0..=order {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.order + 1) + j
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.c[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, x: C) {
        let k = self.idx(i, j);
        self.c[k] = x;
    }

    fn same_order(&self, o: &Self) {
        assert_eq!(self.order, o.order, "truncation order mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_order(o);
        TruncSeries { order: self.order, c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_order(o);
        TruncSeries { order: self.order, c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { order: self.order, c: self.c.iter().map(Ring::neg).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        TruncSeries { order: self.order, c: self.c.iter().map(|a| a.scale(s)).collect() }
    }

    /// Truncated product, `self` on the left.
    pub fn mul(&self, o: &Self) -> Self {
        self.same_order(o);
        let t = self.order;
        let mut r = Self::zero(t, &self.c[0]);
        for a in 0..=t {
            for b in 0..=t {
                let x = self.get(a, b);
                if x.is_zero() {
                    continue;
                }
                for i in 0..=t - a {
                    for j in 0..=t - b {
                        let y = o.get(i, j);
                        if y.is_zero() {
                            continue;
                        }
                        let k = r.idx(a + i, b + j);
                        r.c[k] = r.c[k].add(&x.mul(y));
                    }
                }
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    /// Restricts to a smaller truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order);
        let mut r = Self::zero(order, &self.c[0]);
        for i in 0..=order {
            for j in 0..=order {
                r.set(i, j, self.get(i, j).clone());
            }
        }
        r
    }

    fn has_unit_constant(&self) -> bool {
        let c0 = &self.c[0];
        *c0 == c0.one_like()
    }

    /// Two-sided inverse of a series with constant term 1.
    pub fn invert(&self) -> Result<Self> {
        if !self.has_unit_constant() {
            return Err(Error::NonUnitConstant);
        }
        let t = self.order;
        let mut r = Self::zero(t, &self.c[0]);
        r.set(0, 0, self.c[0].one_like());
        for i in 0..=t {
            for j in 0..=t {
                if i == 0 && j == 0 {
                    continue;
                }
                let mut acc = self.c[0].zero_like();
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let x = self.get(a, b);
                        if x.is_zero() {
                            continue;
                        }
                        acc = acc.add(&x.mul(r.get(i - a, j - b)));
                    }
                }
                r.set(i, j, acc.neg());
            }
        }
        Ok(r)
    }

    /// Logarithm of a series with constant term 1 (commutative coefficients).
    pub fn log(&self) -> Result<Self> {
        if !self.has_unit_constant() {
            return Err(Error::NonUnitConstant);
        }
        let t = self.order;
        let x = self.sub(&Self::one(t, &self.c[0]));
        let mut acc = Self::zero(t, &self.c[0]);
        let mut pow = x.clone();
        // x^r only reaches entries with i + j >= r
        for r in 1..=2 * t {
            if pow.is_zero() {
                break;
            }
            let sign = if r % 2 == 1 { rational::one() } else { -rational::one() };
            acc = acc.add(&pow.scale(&(sign / rational::q(r as i64))));
            pow = pow.mul(&x);
        }
        Ok(acc)
    }

    /// Exponential of a series with zero constant term (commutative
    /// coefficients).
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Invalid("exp needs a zero constant term".into()));
        }
        let t = self.order;
        let mut acc = Self::one(t, &self.c[0]);
        let mut pow = Self::one(t, &self.c[0]);
        for r in 1..=2 * t {
            pow = pow.mul(self).scale(&(rational::one() / rational::q(r as i64)));
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc)
    }

    /// `p / (u^du v^dv)` read as a series at infinity. Fails if `p` has a
    /// `u`-degree above `du` or `v`-degree above `dv`.
    pub fn from_bipoly_at_infinity(p: &BiPoly<C>, du: u32, dv: u32, order: usize, template: &C) -> Result<Self> {
        let mut s = Self::zero(order, template);
        for (&(a, b), c) in p.iter() {
            if a > du || b > dv {
                return Err(Error::Degree(format!("term u^{a} v^{b} exceeds denominator degrees ({du}, {dv})")));
            }
            let (i, j) = ((du - a) as usize, (dv - b) as usize);
            if i <= order && j <= order {
                s.set(i, j, c.clone());
            }
        }
        Ok(s)
    }
}

/// Expands `numer(u, v) / (denom_u(u) * denom_v(v))` at `u, v -> infinity`.
pub fn expand_rational<C: Ring>(
    numer: &BiPoly<C>,
    denom_u: &UPoly,
    denom_v: &UPoly,
    order: usize,
    template: &C,
) -> Result<TruncSeries<C>> {
    if !denom_u.is_monic() || !denom_v.is_monic() {
        return Err(Error::Degree("denominators must be monic".into()));
    }
    let du = denom_u.degree().unwrap() as u32;
    let dv = denom_v.degree().unwrap() as u32;
    let top = TruncSeries::from_bipoly_at_infinity(numer, du, dv, order, template)?;
    let unit = template.one_like();
    let su = TruncSeries::from_fn(order, template, |i, j| {
        if j == 0 && i as u32 <= du {
            unit.scale(&denom_u.coeff(du as usize - i))
        } else {
            template.zero_like()
        }
    });
    let sv = TruncSeries::from_fn(order, template, |i, j| {
        if i == 0 && j as u32 <= dv {
            unit.scale(&denom_v.coeff(dv as usize - j))
        } else {
            template.zero_like()
        }
    });
    Ok(top.mul(&su.invert()?).mul(&sv.invert()?))
}

/// JSON form of a rational series: `coeffs[i][j]` is the coefficient of
/// `u^{-i} v^{-j}` as an `"n/d"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<Vec<String>>,
}

impl TruncSeries<Q> {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            order: self.order,
            coeffs: (0..=self.order)
                .map(|i| (0..=self.order).map(|j| rational::to_string(self.get(i, j))).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        if j.coeffs.len() != j.order + 1 || j.coeffs.iter().any(|r| r.len() != j.order + 1) {
            return Err(Error::Invalid("series table shape does not match its order".into()));
        }
        let mut s = TruncSeries::zero(j.order, &rational::zero());
        for (i, row) in j.coeffs.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                s.set(i, k, rational::parse(x)?);
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q, zero};

    #[test]
    fn invert_one() {
        let one = TruncSeries::one(5, &zero());
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn geometric_series() {
        let t = 6;
        let mut s = TruncSeries::one(t, &zero());
        s.set(1, 1, q(-1));
        let inv = s.invert().unwrap();
        for i in 0..=t {
            for j in 0..=t {
                let expect = if i == j { q(1) } else { q(0) };
                assert_eq!(inv.get(i, j), &expect, "({i},{j})");
            }
        }
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let s = TruncSeries::zero(3, &zero());
        assert_eq!(s.invert(), Err(Error::NonUnitConstant));
        let mut s2 = TruncSeries::one(3, &zero());
        s2.set(0, 0, q(2));
        assert!(s2.invert().is_err());
    }

    #[test]
    fn simple_pole_expansion() {
        // 1/(u - a) = sum a^k u^{-k-1}
        let a = frac(3, 2);
        let numer = BiPoly::constant(q(1));
        let s = expand_rational(&numer, &UPoly::linear(&a), &UPoly::one(), 6, &zero()).unwrap();
        let mut pw = q(1);
        assert_eq!(s.get(0, 0), &q(0));
        for k in 0..6 {
            assert_eq!(s.get(k + 1, 0), &pw);
            pw *= &a;
        }
    }

    #[test]
    fn numerator_equal_denominator_is_one() {
        let du = UPoly::from_roots(&[q(1), q(-2)]);
        let dv = UPoly::linear(&q(5));
        let mut numer = BiPoly::zero(&zero());
        for (a, ca) in du.coeffs().iter().enumerate() {
            for (b, cb) in dv.coeffs().iter().enumerate() {
                numer.add_term(a as u32, b as u32, ca * cb);
            }
        }
        let s = expand_rational(&numer, &du, &dv, 5, &zero()).unwrap();
        assert_eq!(s, TruncSeries::one(5, &zero()));
    }

    #[test]
    fn degree_precondition() {
        let numer = BiPoly::term(2, 0, q(1));
        assert!(matches!(
            expand_rational(&numer, &UPoly::linear(&q(0)), &UPoly::one(), 3, &zero()),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn log_exp_roundtrip() {
        let t = 4;
        let s = TruncSeries::from_fn(t, &zero(), |i, j| if i == 0 && j == 0 { q(1) } else { frac((i * 3 + j) as i64, 7) });
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }
}
