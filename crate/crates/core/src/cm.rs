//! Calogero-Moser points `(Z, Λ)` with `rank([Z, Λ] + 1) = 1`, the
//! polynomial `P^C = det((v - Λ)(u - Z) - 1)` and the series
//! `Ψ^C = det(1 - (v - Λ)^{-1}(u - Z)^{-1})`.

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::matrix::{det_exact, Matrix, RatMatrix};
use crate::poly::{Poly, VarSet};
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::series::TruncSeries;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct CmPoint {
    z: RatMatrix,
    l: RatMatrix,
}

pub fn is_cm_point(z: &RatMatrix, l: &RatMatrix) -> Result<bool> {
    Ok(cm_rank(z, l)? == 1)
}

/// `rank([Z, Λ] + 1)`.
pub fn cm_rank(z: &RatMatrix, l: &RatMatrix) -> Result<usize> {
    let n = z.rows();
    if !z.is_square() {
        return Err(Error::NotSquare { rows: z.rows(), cols: z.cols() });
    }
    if !l.is_square() {
        return Err(Error::NotSquare { rows: l.rows(), cols: l.cols() });
    }
    if l.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: l.rows() });
    }
    Ok(z.commutator(l).add(&RatMatrix::identity_q(n)).rank())
}

impl CmPoint {
    pub fn new(z: RatMatrix, l: RatMatrix) -> Result<CmPoint> {
        let r = cm_rank(&z, &l)?;
        if r != 1 {
            return Err(Error::NotCmPoint(r));
        }
        Ok(CmPoint { z, l })
    }

    pub fn n(&self) -> usize {
        self.z.rows()
    }

    pub fn z(&self) -> &RatMatrix {
        &self.z
    }

    pub fn l(&self) -> &RatMatrix {
        &self.l
    }

    /// `(g Z g^{-1}, g Λ g^{-1})`.
    pub fn conjugate(&self, g: &RatMatrix) -> Result<CmPoint> {
        let gi = g.inverse()?;
        CmPoint::new(g.mul(&self.z).mul(&gi), g.mul(&self.l).mul(&gi))
    }

    pub fn to_json(&self) -> CmPointJson {
        CmPointJson { n: self.n(), z: self.z.to_strings(), l: self.l.to_strings() }
    }

    pub fn from_json(j: &CmPointJson) -> Result<CmPoint> {
        let z = RatMatrix::from_strings(&j.z)?;
        let l = RatMatrix::from_strings(&j.l)?;
        if z.rows() != j.n {
            return Err(Error::DimensionMismatch { expected: j.n, got: z.rows() });
        }
        CmPoint::new(z, l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmPointJson {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<String>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<String>>,
}

/// `Λ = diag(l0)`, `Z_ii = d_i`, `Z_ij = 1/(l0_j - l0_i)`, so that
/// `[Z, Λ] + 1` is the all-ones matrix.
pub fn generic_cm_point(l0: &[Q], d: &[Q]) -> Result<CmPoint> {
    let n = l0.len();
    if d.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: d.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if l0[i] == l0[j] {
                return Err(Error::Repeated(format!("l{} = l{} = {}", i + 1, j + 1, l0[i])));
            }
        }
    }
    let z = RatMatrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { rational::one() / (&l0[j] - &l0[i]) });
    CmPoint::new(z, RatMatrix::diagonal(l0))
}

/// `det(u - M)` as a monic polynomial.
pub fn charpoly(m: &RatMatrix) -> Result<UPoly> {
    let n = m.rows();
    let um = Matrix::from_fn(n, n, |i, j| {
        let c = UPoly::constant(-m.get(i, j).clone());
        if i == j {
            c.add(&UPoly::x())
        } else {
            c
        }
    });
    det_exact(&um)
}

/// `P^C` keyed by `(deg_u, deg_v)`.
pub fn cm_universal_poly(p: &CmPoint) -> Result<BiPoly<Q>> {
    let n = p.n();
    let vars = VarSet::new(["u", "v"]);
    let u = Poly::var(&vars, 0);
    let v = Poly::var(&vars, 1);
    let c = |x: &Q| Poly::constant(&vars, x.clone());
    let vl = Matrix::from_fn(n, n, |i, j| if i == j { v.sub(&c(p.l.get(i, j))) } else { c(p.l.get(i, j)).neg() });
    let uz = Matrix::from_fn(n, n, |i, j| if i == j { u.sub(&c(p.z.get(i, j))) } else { c(p.z.get(i, j)).neg() });
    let m = vl.mul(&uz).sub(&Matrix::identity(n, &Poly::one(&vars)));
    let d = det_exact(&m)?;
    let mut out = BiPoly::zero(&rational::zero());
    for (mono, x) in d.terms() {
        out.add_term(mono.exps()[0] as u32, mono.exps()[1] as u32, x.clone());
    }
    Ok(out)
}

/// `m_ij`, the coefficient of `u^{N-i} v^{N-j}`.
pub fn cm_coeff(pc: &BiPoly<Q>, n: usize, i: usize, j: usize) -> Q {
    pc.coeff((n - i) as u32, (n - j) as u32)
}

/// `log Ψ^C = -Σ_r tr(X^r)/r` with `X = (v - Λ)^{-1}(u - Z)^{-1}`, both
/// inverses as Neumann series.
pub fn cm_log_psi(p: &CmPoint, order: usize) -> Result<TruncSeries<Q>> {
    if order == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let n = p.n();
    let t = order;
    let zero = RatMatrix::zero(n, &rational::zero());
    let idx = |i: usize, j: usize| i * (t + 1) + j;
    // w holds the u^{-i} v^{-j} coefficients of X^{r}, starting from X^0 = 1
    let mut w = vec![zero.clone(); (t + 1) * (t + 1)];
    w[0] = RatMatrix::identity_q(n);
    let mut acc = TruncSeries::zero(order, &rational::zero());
    for r in 1..=t {
        // (u - Z)^{-1} w: y(i) = w(i-1) + Z y(i-1)
        let mut y = vec![zero.clone(); w.len()];
        for j in 0..=t {
            for i in 1..=t {
                y[idx(i, j)] = w[idx(i - 1, j)].add(&p.z.mul(&y[idx(i - 1, j)]));
            }
        }
        // (v - Λ)^{-1} y, the same recursion in j
        for i in 0..=t {
            w[idx(i, 0)] = zero.clone();
            for j in 1..=t {
                w[idx(i, j)] = y[idx(i, j - 1)].add(&p.l.mul(&w[idx(i, j - 1)]));
            }
        }
        let c = rational::one() / rational::q(r as i64);
        let tr = TruncSeries::from_fn(order, &rational::zero(), |i, j| w[idx(i, j)].trace() * &c);
        acc = acc.sub(&tr);
    }
    Ok(acc)
}

pub fn cm_psi(p: &CmPoint, order: usize) -> Result<TruncSeries<Q>> {
    cm_log_psi(p, order)?.exp()
}

/// `tr(ΛZ)` read off `Ψ^C`: the `u^{-2} v^{-2}` coefficient of `log Ψ^C`
/// is `-tr(ΛZ) - N/2`.
pub fn trace_lz_from_psi(psi: &TruncSeries<Q>, n: usize) -> Result<Q> {
    if psi.order() < 2 {
        return Err(Error::Invalid("need truncation order at least 2".into()));
    }
    let lg = psi.log()?;
    Ok(-lg.get(2, 2).clone() - rational::frac(n as i64, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use crate::series::expand_rational;

    #[test]
    fn membership() {
        let one = RatMatrix::from_ints(&[&[5]]);
        assert!(is_cm_point(&one, &RatMatrix::from_ints(&[&[-2]])).unwrap());
        let id = RatMatrix::identity_q(2);
        assert!(!is_cm_point(&id, &id).unwrap());
        assert!(is_cm_point(&id, &RatMatrix::identity_q(3)).is_err());
    }

    #[test]
    fn generic_point() {
        let p = generic_cm_point(&[q(0), q(1)], &[q(0), q(0)]).unwrap();
        assert_eq!(*p.z(), RatMatrix::from_ints(&[&[0, 1], &[-1, 0]]));
        let p3 = generic_cm_point(&[q(0), q(1), frac(5, 2)], &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(p3.n(), 3);
        assert!(generic_cm_point(&[q(1), q(1)], &[q(0), q(0)]).is_err());
    }

    #[test]
    fn n1_poly_and_psi() {
        let p = CmPoint::new(RatMatrix::from_ints(&[&[3]]), RatMatrix::from_ints(&[&[-2]])).unwrap();
        // (v + 2)(u - 3) - 1
        let pc = cm_universal_poly(&p).unwrap();
        assert_eq!(pc.coeff(1, 1), q(1));
        assert_eq!(pc.coeff(1, 0), q(2));
        assert_eq!(pc.coeff(0, 1), q(-3));
        assert_eq!(pc.coeff(0, 0), q(-7));
        let psi = cm_psi(&p, 4).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                let expect = -(q(3).pow((i - 1) as i32) * q(-2).pow((j - 1) as i32));
                assert_eq!(*psi.get(i, j), expect);
            }
        }
    }

    #[test]
    fn quotient_identity_n2() {
        let p = generic_cm_point(&[frac(1, 3), q(2)], &[q(-1), frac(3, 4)]).unwrap();
        let pc = cm_universal_poly(&p).unwrap();
        let via = expand_rational(&pc, &charpoly(p.z()).unwrap(), &charpoly(p.l()).unwrap(), 5, &rational::zero()).unwrap();
        let psi = cm_psi(&p, 5).unwrap();
        assert_eq!(psi, via);
        assert_eq!(*psi.get(1, 1), q(-2));
        assert_eq!(trace_lz_from_psi(&psi, 2).unwrap(), p.l().mul(p.z()).trace());
    }
}
