//! The map `α: Σ q σ p ↦ Σ q ⊗ (σ p)` into `Q[x] ⊗ (Q[y] ⋊ S_N)`, where the
//! second factor multiplies by `σ p · σ' p' = σσ' (σ'^{-1} p) p'`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::helement::{HElement, HKey};
use crate::error::{Error, Result};
use crate::rational::Q;

/// An element of the tensor algebra, stored on the same basis words as
/// [`HElement`] but with the tensor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    n: usize,
    terms: BTreeMap<HKey, Q>,
}

impl TensorElement {
    pub fn alpha(h: &HElement) -> TensorElement {
        TensorElement { n: h.n(), terms: h.terms().map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &TensorElement) -> TensorElement {
        let mut terms: BTreeMap<HKey, Q> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let moved = b.perm.inverse().permute_block(&a.y, 0);
                let key = HKey { x: a.x.mul(&b.x), perm: a.perm.compose(&b.perm), y: moved.mul(&b.y) };
                *terms.entry(key).or_insert_with(Q::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TensorElement { n: self.n, terms }
    }
}

/// Whether `α(a) α(b) = α(b) α(a)`. Both inputs must be central.
pub fn alpha_commutes(a: &HElement, b: &HElement) -> Result<bool> {
    if !a.is_central() || !b.is_central() {
        return Err(Error::NotCentral);
    }
    let (ta, tb) = (TensorElement::alpha(a), TensorElement::alpha(b));
    Ok(ta.mul(&tb) == tb.mul(&ta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::central::CentralCoeffs;

    #[test]
    fn examples() {
        let cc = CentralCoeffs::compute(2).unwrap();
        assert!(alpha_commutes(&cc.c(1, 1), &cc.c(1, 1)).unwrap());
        assert!(alpha_commutes(&cc.c(1, 1), &cc.c(2, 2)).unwrap());
        assert_eq!(alpha_commutes(&cc.c(1, 1), &HElement::x(2, 0)), Err(Error::NotCentral));
    }

    #[test]
    fn tensor_product_is_not_the_h_product() {
        // α(y1) α(x1) = x1 ⊗ y1 while y1 x1 = x1 y1 + s12 in H_2
        let (x, y) = (HElement::x(2, 0), HElement::y(2, 0));
        let t = TensorElement::alpha(&y).mul(&TensorElement::alpha(&x));
        assert_eq!(t, TensorElement::alpha(&x.h_mul(&y).unwrap()));
    }
}
