//! Dense matrices over a [`Ring`], exact determinants and rational linear
//! algebra.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rational::{self, Q};
use crate::ring::{CommRing, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type RatMatrix = Matrix<Q>;

impl<R: Ring> Matrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize, template: &R) -> Self {
        Self::from_fn(n, n, |_, _| template.zero_like())
    }

    pub fn identity(n: usize, template: &R) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { template.one_like() } else { template.zero_like() })
    }

    pub fn diagonal(d: &[R]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { d[0].zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    /// Matrix product; entry products keep the left factor on the left.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let zero = self.data[0].zero_like();
        let mut out = Self::from_fn(self.rows, o.cols, |_, _| zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> R {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows, &self.data[0]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Square matrices form a ring (noncommutative for `n > 1`).
impl<R: Ring> Ring for Matrix<R> {
    fn zero_like(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |_, _| self.data[0].zero_like())
    }
    fn one_like(&self) -> Self {
        Self::identity(self.rows, &self.data[0])
    }
    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Matrix::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Matrix::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Matrix::neg(self)
    }
    fn scale(&self, c: &Q) -> Self {
        Matrix::scale(self, c)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Matrix::sub(self, rhs)
    }
}

fn square<R: Ring>(m: &Matrix<R>) -> Result<usize> {
    if !m.is_square() || m.rows == 0 {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(m.rows)
}

/// Determinant over a commutative ring: cofactor expansion up to 4x4,
/// fraction-free Bareiss elimination above.
pub fn det_exact<R: CommRing>(m: &Matrix<R>) -> Result<R> {
    let n = square(m)?;
    if n <= 4 {
        Ok(cofactor_det(m))
    } else {
        bareiss_det(m)
    }
}

fn cofactor_det<R: Ring>(m: &Matrix<R>) -> R {
    match m.rows {
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).mul(m.get(1, 1)).sub(&m.get(0, 1).mul(m.get(1, 0))),
        n => {
            let mut acc = m.get(0, 0).zero_like();
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let t = a.mul(&cofactor_det(&m.minor(0, j)));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// Bareiss elimination with row pivoting; every division is exact.
pub fn bareiss_det<R: CommRing>(m: &Matrix<R>) -> Result<R> {
    let n = square(m)?;
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = m.get(0, 0).one_like();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(m.get(0, 0).zero_like());
            };
            for j in 0..n {
                let t = a.get(k, j).clone();
                a.set(k, j, a.get(p, j).clone());
                a.set(p, j, t);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j).mul(a.get(k, k)).sub(&a.get(i, k).mul(a.get(k, j)));
                let q = num.div_exact(&prev).ok_or_else(|| Error::InexactDivision("Bareiss step".into()))?;
                a.set(i, j, q);
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { d.neg() } else { d })
}

/// Row determinant `Σ_σ sgn(σ) a_{1σ(1)} a_{2σ(2)} … a_{Nσ(N)}` with the
/// factors multiplied left to right in row order.
pub fn rdet<R: Ring>(m: &Matrix<R>) -> Result<R> {
    let n = square(m)?;
    let mut acc = m.get(0, 0).zero_like();
    for s in Perm::all(n) {
        let mut t = m.get(0, s.apply(0)).clone();
        for i in 1..n {
            if t.is_zero() {
                break;
            }
            t = t.mul(m.get(i, s.apply(i)));
        }
        if t.is_zero() {
            continue;
        }
        acc = if s.sign() > 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    Ok(acc)
}

impl RatMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational::q(x)).collect()).collect())
            .expect("ragged rows")
    }

    pub fn identity_q(n: usize) -> RatMatrix {
        Matrix::identity(n, &Q::zero())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !Zero::is_zero(a.get(i, c))) else { continue };
            for j in 0..a.cols {
                a.data.swap(r * a.cols + j, p * a.cols + j);
            }
            let inv = Q::one() / a.get(r, c);
            for j in 0..a.cols {
                let x = a.get(r, j) * &inv;
                a.set(r, j, x);
            }
            for i in 0..a.rows {
                if i == r || Zero::is_zero(a.get(i, c)) {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let x = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = square(self)?;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Dependent);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// A basis of `{x : self x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.cols];
                x[f] = Q::one();
                for (row, &p) in piv.iter().enumerate() {
                    x[p] = -r.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `self x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in piv.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(rational::to_string).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<RatMatrix> {
        let parsed = rows.iter().map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>());
        Matrix::from_rows(parsed.collect::<Result<Vec<_>>>()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarSet};
    use crate::rational::q;

    #[test]
    fn small_determinants() {
        assert_eq!(det_exact(&RatMatrix::identity_q(3)).unwrap(), q(1));
        assert_eq!(det_exact(&RatMatrix::diagonal(&[q(2), q(5)])).unwrap(), q(10));
        assert_eq!(det_exact(&RatMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        let r = RatMatrix::from_rows(vec![vec![q(1), q(2)]]).unwrap();
        assert!(matches!(det_exact(&r), Err(Error::NotSquare { .. })));
        assert!(rdet(&r).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = RatMatrix::from_ints(&[&[0, 2, 1, 3], &[4, 0, 1, 1], &[2, 2, 0, 5], &[1, 7, 3, 0]]);
        assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m));
        let s = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&s).unwrap(), q(0));
    }

    #[test]
    fn bareiss_over_polynomials() {
        // det(u - A) for a 5x5 integer matrix: Bareiss path with exact polynomial division
        let v = VarSet::new(["u"]);
        let a = RatMatrix::from_ints(&[
            &[1, 2, 0, 0, 1],
            &[0, 1, 3, 0, 0],
            &[1, 0, 2, 1, 0],
            &[0, 0, 1, 0, 4],
            &[2, 1, 0, 1, 1],
        ]);
        let u = Poly::var(&v, 0);
        let m = Matrix::from_fn(5, 5, |i, j| {
            let c = Poly::constant(&v, a.get(i, j).clone());
            if i == j {
                u.sub(&c)
            } else {
                c.neg()
            }
        });
        let d = det_exact(&m).unwrap();
        assert_eq!(d.degree_in(0), Some(5));
        // characteristic polynomial at u = 0 is det(-A) = -det(A)
        assert_eq!(d.eval(&[q(0)]), -det_exact(&a).unwrap());
    }

    #[test]
    fn rdet_noncommutative_order() {
        // 2x2 integer matrices as noncommuting entries
        let e = |r: &[&[i64]]| RatMatrix::from_ints(r);
        let (a, b, c, d) = (e(&[&[1, 1], &[0, 1]]), e(&[&[0, 1], &[1, 0]]), e(&[&[2, 0], &[0, 1]]), e(&[&[1, 0], &[1, 1]]));
        let m = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        assert_eq!(rdet(&m).unwrap(), a.mul(&d).sub(&b.mul(&c)));
        assert_ne!(rdet(&m).unwrap(), d.mul(&a).sub(&c.mul(&b)));
    }

    #[test]
    fn rank_inverse_nullspace() {
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_err());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let col = Matrix::from_rows(ns[0].iter().map(|x| vec![x.clone()]).collect()).unwrap();
        assert!(m.mul(&col).is_zero());
        let g = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(g.mul(&g.inverse().unwrap()), RatMatrix::identity_q(2));
        assert_eq!(g.solve(&[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        assert!(m.solve(&[q(1), q(0), q(0)]).is_none());
    }
}
