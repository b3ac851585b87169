//! The row-determinant operator `D^B` on `V^{⊗N}` at specialized evaluation
//! points, computed with exact rational functions in `u`.
//!
//! Entry `(j, k)` of the operator matrix is `δ_jk (∂ - l_k) - E_kj(u)`, with
//! `E_kj(u) = Σ_m e_kj^{(m)} / (u - z_m)`. The determinant is applied to each
//! basis word separately, so only the columns that are actually reached get
//! materialized.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::coeffs::bethe_matrices_at;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RatMatrix};
use crate::perm::Perm;
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::upoly::{RatFn, UPoly};

/// Words `(i_1, …, i_N)` of letters `0..N` in lexicographic order; the
/// index of a word is its base-`N` value.
fn all_words(n: usize) -> Vec<Vec<u8>> {
    let dim = n.pow(n as u32);
    (0..dim)
        .map(|mut k| {
            let mut w = vec![0u8; n];
            for m in (0..n).rev() {
                w[m] = (k % n) as u8;
                k /= n;
            }
            w
        })
        .collect()
}

fn word_index(w: &[u8], n: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * n + c as usize)
}

type SpVec = BTreeMap<usize, RatFn>;

fn sp_add(v: &mut SpVec, k: usize, c: RatFn) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(e) => {
            *e = e.add(&c);
            if e.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

/// `Σ_p x_p(u) ∂^p` with vector coefficients.
type VecOp = Vec<SpVec>;

struct Ctx {
    n: usize,
    words: Vec<Vec<u8>>,
    poles: Vec<RatFn>,
    l0: Vec<Q>,
}

impl Ctx {
    /// Entry `(j, k)` of the operator matrix applied to `x`.
    fn apply(&self, j: usize, k: usize, x: &VecOp) -> VecOp {
        let mut out: VecOp = vec![SpVec::new(); x.len() + 1];
        if j == k {
            for (p, xp) in x.iter().enumerate() {
                for (w, c) in xp {
                    sp_add(&mut out[p], *w, c.derivative());
                    sp_add(&mut out[p + 1], *w, c.clone());
                    sp_add(&mut out[p], *w, c.scale(&self.l0[k]).neg());
                }
            }
        }
        for (p, xp) in x.iter().enumerate() {
            for (w, c) in xp {
                let word = &self.words[*w];
                for m in 0..self.n {
                    if word[m] as usize == j {
                        let mut w2 = word.clone();
                        w2[m] = k as u8;
                        sp_add(&mut out[p], word_index(&w2, self.n), c.mul(&self.poles[m]).neg());
                    }
                }
            }
        }
        while out.last().is_some_and(|v| v.is_empty()) {
            out.pop();
        }
        out
    }
}

/// A differential operator `Σ_k C_k(u) ∂^k` whose coefficients are matrices
/// of rational functions in `u` on the span of `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    pub order: usize,
    pub basis: Vec<Vec<u8>>,
    pub coeffs: Vec<Matrix<RatFn>>,
}

impl DiffOp {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coeff(&self, k: usize) -> Matrix<RatFn> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Matrix::zero(self.dim(), &RatFn::zero()))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.len() == self.order + 1 && self.coeffs[self.order] == Matrix::identity(self.dim(), &RatFn::zero())
    }

    /// Restriction to the span of the permutation words `ε_τ`, ordered as
    /// [`Perm::all`]. Fails if some `ε_τ` is sent outside that span.
    pub fn restrict_v1(&self) -> Result<DiffOp> {
        let n = self.basis.first().map_or(0, Vec::len);
        let perms = Perm::all(n);
        let idx: Vec<usize> = perms
            .iter()
            .map(|p| {
                self.basis.iter().position(|b| b.as_slice() == p.images()).ok_or_else(|| Error::Invalid("basis lacks a permutation word".into()))
            })
            .collect::<Result<_>>()?;
        for c in &self.coeffs {
            for &col in &idx {
                for row in 0..self.dim() {
                    if !idx.contains(&row) && !c.get(row, col).is_zero() {
                        return Err(Error::Invalid("operator leaves the weight space".into()));
                    }
                }
            }
        }
        let coeffs = self.coeffs.iter().map(|c| Matrix::from_fn(idx.len(), idx.len(), |r, s| c.get(idx[r], idx[s]).clone())).collect();
        Ok(DiffOp { order: self.order, basis: idx.iter().map(|&i| self.basis[i].clone()).collect(), coeffs })
    }

    /// `w(u) C_k(u)` as polynomial matrices, keyed by `(deg_u, k)`. A pole
    /// that survives multiplication by `w(u) = ∏(u - z_m)` is an error.
    pub fn clear_denominators(&self, z0: &[Q]) -> Result<BTreeMap<(u32, u32), RatMatrix>> {
        let w = RatFn::poly(UPoly::from_roots(z0));
        let d = self.dim();
        let mut out: BTreeMap<(u32, u32), RatMatrix> = BTreeMap::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for r in 0..d {
                for s in 0..d {
                    let e = c.get(r, s).mul(&w);
                    let Some(p) = e.as_polynomial() else {
                        return Err(Error::ResidualPole(format!("entry ({r}, {s}) of the ∂^{k} coefficient: {e}")));
                    };
                    for (a, x) in p.coeffs().iter().enumerate() {
                        if !x.is_zero() {
                            let m = out.entry((a as u32, k as u32)).or_insert_with(|| RatMatrix::zero(d, &rational::zero()));
                            m.set(r, s, x.clone());
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> DiffOpJson {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut entries = Vec::new();
                for r in 0..self.dim() {
                    for s in 0..self.dim() {
                        let e = c.get(r, s);
                        if !e.is_zero() {
                            entries.push(EntryJson { row: r, col: s, num: upoly_strings(e.num()), den: upoly_strings(e.den()) });
                        }
                    }
                }
                CoeffJson { power: k, entries }
            })
            .collect();
        DiffOpJson { order: self.order, basis: self.basis.iter().map(|w| w.iter().map(|&c| c as usize + 1).collect()).collect(), coeffs }
    }

    pub fn from_json(j: &DiffOpJson) -> Result<DiffOp> {
        let basis: Vec<Vec<u8>> = j
            .basis
            .iter()
            .map(|w| w.iter().map(|&c| c.checked_sub(1).map(|c| c as u8).ok_or_else(|| Error::Invalid("letters are 1-based".into()))).collect())
            .collect::<Result<_>>()?;
        let d = basis.len();
        let mut coeffs = vec![Matrix::zero(d, &RatFn::zero()); j.order + 1];
        for c in &j.coeffs {
            if c.power > j.order {
                return Err(Error::Invalid(format!("power {} exceeds the order", c.power)));
            }
            for e in &c.entries {
                if e.row >= d || e.col >= d {
                    return Err(Error::DimensionMismatch { expected: d, got: e.row.max(e.col) + 1 });
                }
                let den = upoly_parse(&e.den)?;
                if den.degree().is_none() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                coeffs[c.power].set(e.row, e.col, RatFn::new(upoly_parse(&e.num)?, den));
            }
        }
        Ok(DiffOp { order: j.order, basis, coeffs })
    }
}

fn upoly_strings(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(rational::to_string).collect()
}

fn upoly_parse(s: &[String]) -> Result<UPoly> {
    Ok(UPoly::new(s.iter().map(|x| rational::parse(x)).collect::<Result<_>>()?))
}

/// Serialized [`DiffOp`]: letters are 1-based; polynomials are coefficient
/// lists in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOpJson {
    pub order: usize,
    pub basis: Vec<Vec<usize>>,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub power: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

fn check_points(z0: &[Q], l0: &[Q]) -> Result<()> {
    if z0.is_empty() {
        return Err(Error::Invalid("N must be positive".into()));
    }
    if z0.len() != l0.len() {
        return Err(Error::DimensionMismatch { expected: z0.len(), got: l0.len() });
    }
    for i in 0..z0.len() {
        for j in i + 1..z0.len() {
            if z0[i] == z0[j] {
                return Err(Error::Repeated(format!("z{} = z{} = {}", i + 1, j + 1, z0[i])));
            }
        }
    }
    Ok(())
}

/// `D^B` on all of `V^{⊗N}` at `(z0, l0)`.
pub fn rdet_oracle(z0: &[Q], l0: &[Q]) -> Result<DiffOp> {
    check_points(z0, l0)?;
    let n = z0.len();
    let ctx = Ctx { n, words: all_words(n), poles: z0.iter().map(RatFn::simple_pole).collect(), l0: l0.to_vec() };
    let dim = ctx.words.len();
    let mut coeffs = vec![Matrix::zero(dim, &RatFn::zero()); n + 1];
    let perms = Perm::all(n);
    for col in 0..dim {
        let mut total: VecOp = vec![SpVec::new(); n + 1];
        for s in &perms {
            let mut x: VecOp = vec![SpVec::from([(col, RatFn::constant(rational::one()))])];
            for i in (0..n).rev() {
                x = ctx.apply(i, s.apply(i), &x);
                if x.is_empty() {
                    break;
                }
            }
            for (p, xp) in x.into_iter().enumerate() {
                for (w, c) in xp {
                    sp_add(&mut total[p], w, if s.sign() > 0 { c } else { c.neg() });
                }
            }
        }
        for (p, xp) in total.into_iter().enumerate() {
            for (w, c) in xp {
                coeffs[p].set(w, col, c);
            }
        }
    }
    Ok(DiffOp { order: n, basis: ctx.words, coeffs })
}

/// Compares `w(u) D^B` on `V_1` against the closed form at `(z0, l0)`.
/// Returns the first `(deg_u, deg_∂)` that differs.
pub fn oracle_mismatch(z0: &[Q], l0: &[Q]) -> Result<Option<(u32, u32)>> {
    let op = rdet_oracle(z0, l0)?.restrict_v1()?;
    let from_oracle = op.clear_denominators(z0)?;
    let closed = bethe_matrices_at(z0, l0);
    let d = op.dim();
    let zero = RatMatrix::zero(d, &rational::zero());
    let keys: std::collections::BTreeSet<(u32, u32)> = from_oracle.keys().chain(closed.keys()).copied().collect();
    for k in keys {
        let a = from_oracle.get(&k).unwrap_or(&zero);
        // closed form is keyed (deg_u, deg_v)
        let b = closed.get(&k).unwrap_or(&zero);
        if a != b {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `e_ab(u) = Σ_m e_ab^{(m)} / (u - z_m)` on `V^{⊗N}`.
pub fn e_matrix(a: usize, b: usize, z0: &[Q]) -> Matrix<RatFn> {
    let n = z0.len();
    let words = all_words(n);
    let mut m = Matrix::zero(words.len(), &RatFn::zero());
    for (col, w) in words.iter().enumerate() {
        for k in 0..n {
            if w[k] as usize == b {
                let mut w2 = w.clone();
                w2[k] = a as u8;
                let row = word_index(&w2, n);
                let cur = m.get(row, col).add(&RatFn::simple_pole(&z0[k]));
                m.set(row, col, cur);
            }
        }
    }
    m
}

/// The two-site operator written out by hand:
/// `∂² - (l1 + l2 + e11 + e22) ∂ + (l1 + e11)(l2 + e22) - e21 e12 - e22'`.
pub fn n2_display(z0: &[Q], l0: &[Q]) -> Result<DiffOp> {
    check_points(z0, l0)?;
    if z0.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: z0.len() });
    }
    let e = |a, b| e_matrix(a, b, z0);
    let id = Matrix::identity(4, &RatFn::zero());
    let l1 = id.map(|x| x.scale(&l0[0]));
    let l2 = id.map(|x| x.scale(&l0[1]));
    let c1 = l1.add(&l2).add(&e(0, 0)).add(&e(1, 1)).neg();
    let c0 = l1.add(&e(0, 0)).mul(&l2.add(&e(1, 1))).sub(&e(1, 0).mul(&e(0, 1))).sub(&e(1, 1).map(RatFn::derivative));
    Ok(DiffOp { order: 2, basis: all_words(2), coeffs: vec![c0, c1, id] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn n1_scalar() {
        let op = rdet_oracle(&[q(3)], &[frac(1, 2)]).unwrap();
        assert!(op.is_monic());
        let expect = RatFn::constant(frac(-1, 2)).sub(&RatFn::simple_pole(&q(3)));
        assert_eq!(*op.coeff(0).get(0, 0), expect);
        assert_eq!(oracle_mismatch(&[q(3)], &[frac(1, 2)]).unwrap(), None);
    }

    #[test]
    fn n2_matches_closed_form_and_display() {
        let (z0, l0) = ([q(1), frac(7, 3)], [frac(-2, 5), q(4)]);
        assert_eq!(oracle_mismatch(&z0, &l0).unwrap(), None);
        assert_eq!(rdet_oracle(&z0, &l0).unwrap(), n2_display(&z0, &l0).unwrap());
    }

    #[test]
    fn n3_matches_closed_form() {
        assert_eq!(oracle_mismatch(&[q(0), frac(1, 2), q(-3)], &[q(2), frac(-1, 3), q(5)]).unwrap(), None);
    }

    #[test]
    fn repeated_points_rejected() {
        assert!(matches!(rdet_oracle(&[q(1), q(1)], &[q(0), q(1)]), Err(Error::Repeated(_))));
    }

    #[test]
    fn json_roundtrip() {
        let op = rdet_oracle(&[q(1), q(2)], &[q(0), frac(1, 3)]).unwrap().restrict_v1().unwrap();
        let j = serde_json::to_string(&op.to_json()).unwrap();
        let back: DiffOpJson = serde_json::from_str(&j).unwrap();
        assert_eq!(DiffOp::from_json(&back).unwrap(), op);
    }
}
