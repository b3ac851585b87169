//! Permutations of `{1..N}` and their actions on `Q[z, l]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};

/// A permutation stored by its (0-based) image array, with cached sign.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
    sign: i8,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u8).collect(), sign: 1 }
    }

    /// The transposition of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        assert!(i != j && i < n && j < n);
        let mut img: Vec<u8> = (0..n as u8).collect();
        img.swap(i, j);
        Perm { img, sign: -1 }
    }

    pub fn from_images(img: Vec<u8>) -> Result<Perm> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &k in &img {
            if k as usize >= n || seen[k as usize] {
                return Err(Error::Invalid(format!("not a permutation: {img:?}")));
            }
            seen[k as usize] = true;
        }
        let sign = parity(&img);
        Ok(Perm { img, sign })
    }

    /// From the one-line form with 1-based images.
    pub fn from_one_line(img: &[usize]) -> Result<Perm> {
        if img.iter().any(|&k| k == 0 || k > 255) {
            return Err(Error::Invalid(format!("not a permutation: {img:?}")));
        }
        Perm::from_images(img.iter().map(|&k| (k - 1) as u8).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.img.iter().map(|&k| k as usize + 1).collect()
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// `σ(i)`, 0-based.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &k)| i == k as usize)
    }

    /// `self ∘ o`: first `o`, then `self`.
    pub fn compose(&self, o: &Perm) -> Perm {
        assert_eq!(self.n(), o.n());
        Perm { img: o.img.iter().map(|&k| self.img[k as usize]).collect(), sign: self.sign * o.sign }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u8; self.n()];
        for (i, &k) in self.img.iter().enumerate() {
            img[k as usize] = i as u8;
        }
        Perm { img, sign: self.sign }
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().enumerate().filter(|(i, &k)| *i == k as usize).map(|(i, _)| i)
    }

    /// All of `S_N` in lexicographic order of image arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm { sign: parity(&cur), img: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Adjacent transpositions `s_{i,i+1}`, which generate `S_N`.
    pub fn adjacent(n: usize) -> Vec<Perm> {
        (0..n.saturating_sub(1)).map(|i| Perm::transposition(n, i, i + 1)).collect()
    }

    /// Image of an exponent vector on a block of `n` variables starting at
    /// `offset`: the variable `k` is sent to `σ(k)`.
    pub fn permute_block(&self, m: &Mono, offset: usize) -> Mono {
        let mut out = m.clone();
        for k in 0..self.n() {
            out.0[offset + self.apply(k)] = m.0[offset + k];
        }
        out
    }
}

fn parity(img: &[u8]) -> i8 {
    let n = img.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = img[k] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// Which block of variables a permutation moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Z,
    Lambda,
    Both,
}

/// `σ` acting on `p(z, l)` by `p(z_σ(1), …, z_σ(N), …)`, restricted to the
/// block(s) selected by `mode`. This is a left action.
pub fn act(sigma: &Perm, p: &Poly, mode: Mode) -> Result<Poly> {
    let n = sigma.n();
    if p.arity() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: p.arity() });
    }
    Ok(p.map_monomials(|m| match mode {
        Mode::Z => sigma.permute_block(m, 0),
        Mode::Lambda => sigma.permute_block(m, n),
        Mode::Both => sigma.permute_block(&sigma.permute_block(m, 0), n),
    }))
}

/// Invariance under simultaneous permutation of `z` and `l`.
pub fn is_multisymmetric(p: &Poly) -> bool {
    let n = p.arity() / 2;
    Perm::adjacent(n).iter().all(|s| act(s, p, Mode::Both).map(|q| &q == p).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSet;
    use crate::ring::Ring;

    #[test]
    fn swap_z_only() {
        let v = VarSet::zl(2);
        let p = Poly::var(&v, 0).mul(&Poly::var(&v, 2)); // z1*l1
        let s = Perm::transposition(2, 0, 1);
        assert_eq!(act(&s, &p, Mode::Z).unwrap(), Poly::var(&v, 1).mul(&Poly::var(&v, 2)));
    }

    #[test]
    fn group_basics() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
        for p in &all {
            assert!(p.compose(&p.inverse()).is_identity());
        }
        assert!(Perm::from_one_line(&[1, 1]).is_err());
        let p = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(p.sign(), 1);
        assert_eq!(p.apply(0), 1);
    }

    #[test]
    fn identity_and_inverse_actions() {
        let v = VarSet::zl(3);
        let p = Poly::var(&v, 0).mul(&Poly::var(&v, 4)).add(&Poly::var(&v, 2));
        let s = Perm::from_one_line(&[3, 1, 2]).unwrap();
        assert_eq!(act(&Perm::identity(3), &p, Mode::Both).unwrap(), p);
        let back = act(&s.inverse(), &act(&s, &p, Mode::Both).unwrap(), Mode::Both).unwrap();
        assert_eq!(back, p);
        assert!(act(&s, &Poly::var(&VarSet::zl(2), 0), Mode::Z).is_err());
    }

    #[test]
    fn multisymmetry() {
        let n = 3;
        let v = VarSet::zl(n);
        let sum_zl = (0..n).fold(Poly::zero(&v), |acc, i| acc.add(&Poly::var(&v, i).mul(&Poly::var(&v, n + i))));
        assert!(is_multisymmetric(&sum_zl));
        assert!(!is_multisymmetric(&Poly::var(&v, 0)));
        let ez = (0..n).fold(Poly::zero(&v), |acc, i| acc.add(&Poly::var(&v, i)));
        let el = (0..n).fold(Poly::zero(&v), |acc, i| acc.add(&Poly::var(&v, n + i)));
        assert!(is_multisymmetric(&ez.mul(&el)));
    }
}
