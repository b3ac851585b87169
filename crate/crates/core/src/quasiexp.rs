//! Spaces of quasi-exponentials `⟨q_i(u) e^{l_i u}⟩` with rational
//! exponents: Wronskian, kernel operator, `Ψ^W`, classification.
//!
//! Derivatives are tracked through `∂^j(q e^{lu}) = p_j e^{lu}` with
//! `p_{j+1} = p_j' + l p_j`, so the exponentials never appear explicitly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::cm::{charpoly, cm_psi, generic_cm_point, CmPoint};
use crate::error::{Error, Result};
use crate::matrix::{det_exact, Matrix, RatMatrix};
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::series::{expand_rational, TruncSeries};
use crate::upoly::{RatFn, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpSpace {
    basis: Vec<(UPoly, Q)>,
}

impl QExpSpace {
    /// Rejects empty families, zero `q_i` and linearly dependent families.
    pub fn new(basis: Vec<(UPoly, Q)>) -> Result<QExpSpace> {
        if basis.is_empty() {
            return Err(Error::Invalid("a space of quasi-exponentials needs n >= 1".into()));
        }
        if basis.iter().any(|(q, _)| q.is_zero()) {
            return Err(Error::Invalid("zero polynomial in basis".into()));
        }
        let w = QExpSpace { basis };
        w.raw_wronskian()?;
        Ok(w)
    }

    /// `W_{h, l} = ⟨(u - h_i) e^{l_i u}⟩`.
    pub fn generic(h: &[Q], l: &[Q]) -> Result<QExpSpace> {
        if h.len() != l.len() {
            return Err(Error::DimensionMismatch { expected: h.len(), got: l.len() });
        }
        QExpSpace::new(h.iter().zip(l).map(|(h, l)| (UPoly::linear(h), l.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(UPoly, Q)] {
        &self.basis
    }

    pub fn exponents(&self) -> Vec<Q> {
        self.basis.iter().map(|(_, l)| l.clone()).collect()
    }

    /// `p_{i,0..=k}`.
    fn derivatives(&self, i: usize, k: usize) -> Vec<UPoly> {
        let (q, l) = &self.basis[i];
        let mut out = vec![q.clone()];
        for _ in 0..k {
            let p = out.last().unwrap();
            out.push(p.derivative().add(&p.scale(l)));
        }
        out
    }

    fn derivative_table(&self) -> Vec<Vec<UPoly>> {
        (0..self.dim()).map(|i| self.derivatives(i, self.dim())).collect()
    }

    /// `det(p_{i,j})_{0 <= j < n}` before normalization.
    fn raw_wronskian(&self) -> Result<UPoly> {
        let n = self.dim();
        let t = self.derivative_table();
        let d = det_exact(&Matrix::from_fn(n, n, |i, j| t[i][j].clone()))?;
        if d.is_zero() {
            return Err(Error::Dependent);
        }
        Ok(d)
    }

    /// The monic Wronskian.
    pub fn wronskian(&self) -> UPoly {
        self.raw_wronskian().expect("checked at construction").monic()
    }

    pub fn degree(&self) -> usize {
        self.wronskian().degree().unwrap()
    }

    /// `G_1..G_n` with `D^W = ∂^n + Σ G_i ∂^{n-i}`, from the bordered
    /// determinant expanded along its last row.
    pub fn kernel_operator(&self) -> Vec<RatFn> {
        let n = self.dim();
        let t = self.derivative_table();
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..=n).filter(|&c| c != skip).collect();
            det_exact(&Matrix::from_fn(n, n, |i, j| t[i][cols[j]].clone())).expect("square")
        };
        let lead = minor(n);
        (1..=n)
            .map(|i| {
                let k = n - i;
                let m = minor(k);
                let m = if (n + k).is_multiple_of(2) { m } else { m.neg() };
                RatFn::new(m, lead.clone())
            })
            .collect()
    }

    /// `D^W (q_i e^{l_i u}) e^{-l_i u}` for each basis element.
    pub fn kernel_residuals(&self) -> Vec<RatFn> {
        let g = self.kernel_operator();
        let n = self.dim();
        (0..n)
            .map(|i| {
                let p = self.derivatives(i, n);
                let mut acc = RatFn::poly(p[n].clone());
                for (k, gk) in g.iter().enumerate() {
                    acc = acc.add(&gk.mul(&RatFn::poly(p[n - 1 - k].clone())));
                }
                acc
            })
            .collect()
    }

    /// `Wr_W (v^n + Σ G_i v^{n-i})`, polynomial in `u` and `v`.
    pub fn kernel_numerator(&self) -> BiPoly<Q> {
        let n = self.dim();
        let wr = self.wronskian();
        let mut out = BiPoly::zero(&rational::zero());
        let mut put = |p: &UPoly, k: usize| {
            for (a, c) in p.coeffs().iter().enumerate() {
                out.add_term(a as u32, k as u32, c.clone());
            }
        };
        put(&wr, n);
        for (i, g) in self.kernel_operator().iter().enumerate() {
            let p = g.mul(&RatFn::poly(wr.clone()));
            put(p.as_polynomial().expect("denominator divides the Wronskian"), n - 1 - i);
        }
        out
    }

    /// `Ψ^W` to order `order`.
    pub fn psi(&self, order: usize) -> Result<TruncSeries<Q>> {
        let pv = UPoly::from_roots(&self.exponents());
        expand_rational(&self.kernel_numerator(), &self.wronskian(), &pv, order, &rational::zero())
    }

    /// `W ⊕ ⟨e^{μu}⟩`.
    pub fn adjoin_exponential(&self, mu: &Q) -> Result<QExpSpace> {
        let mut b = self.basis.clone();
        b.push((UPoly::one(), mu.clone()));
        QExpSpace::new(b)
    }

    /// `(∂ - μ) W`, which has the same `Ψ` as `W ⊕ ⟨e^{μu}⟩`.
    pub fn shift_down(&self, mu: &Q) -> Result<QExpSpace> {
        let b = (0..self.dim())
            .map(|i| {
                let p = self.derivatives(i, 1);
                (p[1].sub(&p[0].scale(mu)), self.basis[i].1.clone())
            })
            .collect();
        QExpSpace::new(b)
    }

    /// Basis elements grouped by exponent.
    fn by_exponent(&self) -> BTreeMap<Q, Vec<UPoly>> {
        let mut m: BTreeMap<Q, Vec<UPoly>> = BTreeMap::new();
        for (q, l) in &self.basis {
            m.entry(l.clone()).or_default().push(q.clone());
        }
        m
    }

    pub fn classify(&self) -> Classification {
        let mut subspaces = Vec::new();
        let mut minimal = true;
        for (l, qs) in self.by_exponent() {
            // the family is independent, so each group spans W(l) freely
            let sub = QExpSpace { basis: qs.iter().map(|q| (q.clone(), l.clone())).collect() };
            let deg = sub.degree();
            if contains_constant(&qs) {
                minimal = false;
            }
            subspaces.push(Subspace { exponent: l, dim: qs.len(), degree: deg, wronskian: sub.wronskian() });
        }
        let canonical = subspaces.iter().all(|s| s.dim == s.degree);
        let distinct = subspaces.len() == self.dim();
        let generic = distinct && self.basis.iter().all(|(q, _)| q.degree() == Some(1));
        Classification { dim: self.dim(), degree: self.degree(), generic, minimal, canonical, subspaces }
    }

    pub fn to_json(&self) -> QExpJson {
        QExpJson {
            basis: self
                .basis
                .iter()
                .map(|(q, l)| QExpTermJson { q: q.coeffs().iter().map(rational::to_string).collect(), exp: rational::to_string(l) })
                .collect(),
        }
    }

    pub fn from_json(j: &QExpJson) -> Result<QExpSpace> {
        let basis = j
            .basis
            .iter()
            .map(|t| Ok((UPoly::new(t.q.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?), rational::parse(&t.exp)?)))
            .collect::<Result<_>>()?;
        QExpSpace::new(basis)
    }
}

/// Whether the constant 1 lies in the span of `qs`.
fn contains_constant(qs: &[UPoly]) -> bool {
    let deg = qs.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let m = RatMatrix::from_fn(deg + 1, qs.len(), |r, c| qs[c].coeff(r));
    let mut target = vec![rational::zero(); deg + 1];
    target[0] = rational::one();
    m.solve(&target).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(serialize_with = "ser_q")]
    pub exponent: Q,
    pub dim: usize,
    pub degree: usize,
    #[serde(serialize_with = "ser_upoly")]
    pub wronskian: UPoly,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_string(x))
}

fn ser_upoly<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.coeffs().len()))?;
    for c in p.coeffs() {
        seq.serialize_element(&rational::to_string(c))?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub dim: usize,
    pub degree: usize,
    pub generic: bool,
    pub minimal: bool,
    pub canonical: bool,
    pub subspaces: Vec<Subspace>,
}

impl Classification {
    /// Whether "generic" agrees with "canonical and minimal" here.
    pub fn generic_matches(&self) -> bool {
        self.generic == (self.canonical && self.minimal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpJson {
    pub basis: Vec<QExpTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpTermJson {
    pub q: Vec<String>,
    pub exp: String,
}

/// Singular points of the space matched to the CM point
/// `generic_cm_point(l0, d)`: `h_i = d_i + Σ_{j≠i} 1/(l0_i - l0_j)`.
pub fn wilson_h(l0: &[Q], d: &[Q]) -> Vec<Q> {
    (0..l0.len())
        .map(|i| {
            let mut h = d[i].clone();
            for j in 0..l0.len() {
                if j != i {
                    h += rational::one() / (&l0[i] - &l0[j]);
                }
            }
            h
        })
        .collect()
}

/// Outcome of one Wilson comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilsonCheck {
    pub psi_agree: bool,
    pub exponents_match_spectrum: bool,
    pub wronskian_is_charpoly: bool,
}

impl WilsonCheck {
    pub fn ok(&self) -> bool {
        self.psi_agree && self.exponents_match_spectrum && self.wronskian_is_charpoly
    }
}

/// Compares `Ψ^C` at `generic_cm_point(l0, d)` with `Ψ^W` of
/// `W_{wilson_h(l0, d), l0}` to order `order`.
pub fn verify_wilson(l0: &[Q], d: &[Q], order: usize) -> Result<WilsonCheck> {
    let p = generic_cm_point(l0, d)?;
    let w = QExpSpace::generic(&wilson_h(l0, d), l0)?;
    wilson_check(&p, &w, order)
}

pub fn wilson_check(p: &CmPoint, w: &QExpSpace, order: usize) -> Result<WilsonCheck> {
    let psi_agree = cm_psi(p, order)? == w.psi(order)?;
    let exponents_match_spectrum = UPoly::from_roots(&w.exponents()) == charpoly(p.l())?;
    let wronskian_is_charpoly = w.wronskian() == charpoly(p.z())?;
    Ok(WilsonCheck { psi_agree, exponents_match_spectrum, wronskian_is_charpoly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn one_dimensional() {
        let (h, l) = (frac(3, 2), q(-2));
        let w = QExpSpace::generic(std::slice::from_ref(&h), std::slice::from_ref(&l)).unwrap();
        assert_eq!(w.wronskian(), UPoly::linear(&h));
        // v - l - 1/(u - h)
        let g = w.kernel_operator();
        assert_eq!(g[0], RatFn::constant(-l.clone()).sub(&RatFn::simple_pole(&h)));
        let psi = w.psi(4).unwrap();
        assert_eq!(*psi.get(0, 0), q(1));
        assert_eq!(*psi.get(3, 2), -(h.pow(2) * l.clone()));
        assert_eq!(*psi.get(2, 0), q(0));
    }

    #[test]
    fn constant_wronskian() {
        let w = QExpSpace::new(vec![(UPoly::one(), q(0)), (UPoly::one(), q(1))]).unwrap();
        assert_eq!(w.wronskian(), UPoly::one());
        assert_eq!(w.degree(), 0);
    }

    #[test]
    fn kernel_of_u_and_one() {
        let w = QExpSpace::new(vec![(UPoly::x(), q(0)), (UPoly::one(), q(0))]).unwrap();
        // the kernel of ∂² is ⟨u, 1⟩; ∂² - ∂/u sends u to -1/u
        let g = w.kernel_operator();
        assert!(g[0].is_zero() && g[1].is_zero());
        assert!(w.kernel_residuals().iter().all(RatFn::is_zero));
    }

    #[test]
    fn dependent_rejected() {
        let r = QExpSpace::new(vec![(UPoly::x(), q(1)), (UPoly::x().scale(&q(2)), q(1))]);
        assert_eq!(r, Err(Error::Dependent));
    }

    #[test]
    fn classification_examples() {
        let w = QExpSpace::generic(&[q(1), q(2)], &[q(0), q(3)]).unwrap();
        let c = w.classify();
        assert!(c.generic && c.minimal && c.canonical);
        assert_eq!(c.degree, 2);

        let c = QExpSpace::new(vec![(UPoly::one(), q(0))]).unwrap().classify();
        assert!(!c.minimal && !c.canonical && !c.generic);
        assert_eq!((c.dim, c.degree), (1, 0));

        let c = QExpSpace::new(vec![(UPoly::x(), q(0)), (UPoly::one(), q(0))]).unwrap().classify();
        assert_eq!((c.dim, c.degree), (2, 0));
        assert!(!c.canonical);

        // canonical and minimal without being generic
        let sq = UPoly::x().mul(&UPoly::x());
        let c = QExpSpace::new(vec![(sq, q(1)), (UPoly::x(), q(1))]).unwrap().classify();
        assert!(c.canonical && c.minimal && !c.generic);
        assert!(!c.generic_matches());
    }

    #[test]
    fn adjoining_an_exponential() {
        let w = QExpSpace::generic(&[q(1), frac(-1, 2)], &[q(0), q(2)]).unwrap();
        let mu = q(5);
        let big = w.adjoin_exponential(&mu).unwrap();
        let small = w.shift_down(&mu).unwrap();
        assert_eq!(big.psi(6).unwrap(), small.psi(6).unwrap());
        assert_eq!(big.wronskian(), small.wronskian());
        assert!(small.classify().minimal && !big.classify().minimal);
        assert!(small.dim() < big.dim());
        assert_ne!(big.psi(6).unwrap(), w.psi(6).unwrap());
    }

    #[test]
    fn wilson_small() {
        assert!(verify_wilson(&[q(2)], &[frac(1, 3)], 6).unwrap().ok());
        assert!(verify_wilson(&[q(0), q(1)], &[frac(1, 2), q(-1)], 6).unwrap().ok());
        let c = verify_wilson(&[q(0), frac(3, 2), q(-2)], &[q(1), q(0), frac(2, 7)], 6).unwrap();
        assert!(c.ok(), "{c:?}");
    }
}
