//! The polynomial representation of `H_N` on `Q[z, l]`: `x_i ↦ l_i`,
//! `y_i ↦ K_i`, `s_ij ↦ s_ij^{z,l}`, with
//! `K_i = z_i + Σ_{j≠i} s_ij^z (l_i - l_j)^{-1} (1 - s_ij^l)`.

use crate::error::{Error, Result};
use crate::multisym::{lambda, z};
use crate::perm::{act, Mode, Perm};
use crate::poly::Poly;
use crate::ring::Ring;

/// `K_i(p)`, 0-based `i`.
pub fn dunkl_apply(i: usize, p: &Poly) -> Result<Poly> {
    DunklRep::exact(p.arity() / 2).y(i, p)
}

/// The operators of the representation. `drop_z` removes the multiplication
/// term of `K_1`, which must break the relations.
#[derive(Clone, Copy, Debug)]
pub struct DunklRep {
    pub n: usize,
    pub drop_z: bool,
}

impl DunklRep {
    pub fn exact(n: usize) -> DunklRep {
        DunklRep { n, drop_z: false }
    }

    pub fn perturbed(n: usize) -> DunklRep {
        DunklRep { n, drop_z: true }
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.arity() != 2 * self.n {
            return Err(Error::DimensionMismatch { expected: 2 * self.n, got: p.arity() });
        }
        Ok(())
    }

    pub fn x(&self, i: usize, p: &Poly) -> Result<Poly> {
        self.check(p)?;
        Ok(lambda(p.vars(), i).mul(p))
    }

    pub fn y(&self, i: usize, p: &Poly) -> Result<Poly> {
        self.check(p)?;
        let n = self.n;
        if i >= n {
            return Err(Error::Invalid(format!("index {} out of range 1..={n}", i + 1)));
        }
        let vars = p.vars();
        let mut r = if self.drop_z && i == 0 { p.zero_like() } else { z(vars, i).mul(p) };
        for j in (0..n).filter(|&j| j != i) {
            let s = Perm::transposition(n, i, j);
            let diff = p.sub(&act(&s, p, Mode::Lambda)?);
            let den = lambda(vars, i).sub(&lambda(vars, j));
            let q = diff
                .div_exact_poly(&den)
                .ok_or_else(|| Error::InexactDivision(format!("divided difference in l{} - l{}", i + 1, j + 1)))?;
            r = r.add(&act(&s, &q, Mode::Z)?);
        }
        Ok(r)
    }

    pub fn s(&self, s: &Perm, p: &Poly) -> Result<Poly> {
        act(s, p, Mode::Both)
    }

    /// Checks every defining relation of `H_N` on `p`; returns the name of
    /// the first one that fails.
    pub fn failing_relation(&self, p: &Poly) -> Result<Option<String>> {
        let n = self.n;
        let tr = |i: usize, j: usize| Perm::transposition(n, i, j);
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    let yy = self.y(i, &self.y(j, p)?)?.sub(&self.y(j, &self.y(i, p)?)?);
                    if !yy.is_zero() {
                        return Ok(Some(format!("[y{}, y{}] = 0", i + 1, j + 1)));
                    }
                    let xx = self.x(i, &self.x(j, p)?)?.sub(&self.x(j, &self.x(i, p)?)?);
                    if !xx.is_zero() {
                        return Ok(Some(format!("[x{}, x{}] = 0", i + 1, j + 1)));
                    }
                }
                let xy = self.x(i, &self.y(j, p)?)?.sub(&self.y(j, &self.x(i, p)?)?);
                let expect = if i != j {
                    self.s(&tr(i, j), p)?
                } else {
                    let mut acc = p.zero_like();
                    for a in (0..n).filter(|&a| a != i) {
                        acc = acc.sub(&self.s(&tr(i, a), p)?);
                    }
                    acc
                };
                if xy != expect {
                    return Ok(Some(format!("[x{}, y{}]", i + 1, j + 1)));
                }
            }
        }
        let adj = Perm::adjacent(n);
        for (k, s) in adj.iter().enumerate() {
            if self.s(s, &self.s(s, p)?)? != *p {
                return Ok(Some(format!("s{}^2 = 1", k + 1)));
            }
            for i in 0..n {
                let si = s.apply(i);
                if self.s(s, &self.x(i, &self.s(s, p)?)?)? != self.x(si, p)? {
                    return Ok(Some(format!("s{} x{} s{} = x{}", k + 1, i + 1, k + 1, si + 1)));
                }
                if self.s(s, &self.y(i, &self.s(s, p)?)?)? != self.y(si, p)? {
                    return Ok(Some(format!("s{} y{} s{} = y{}", k + 1, i + 1, k + 1, si + 1)));
                }
            }
            if let Some(t) = adj.get(k + 1) {
                let lhs = self.s(s, &self.s(t, &self.s(s, p)?)?)?;
                let rhs = self.s(t, &self.s(s, &self.s(t, p)?)?)?;
                if lhs != rhs {
                    return Ok(Some(format!("braid s{} s{}", k + 1, k + 2)));
                }
            }
        }
        Ok(None)
    }
}

/// True iff all relations hold on every sample.
pub fn polyrep_check(rep: &DunklRep, samples: &[Poly]) -> Result<bool> {
    for p in samples {
        if rep.failing_relation(p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
