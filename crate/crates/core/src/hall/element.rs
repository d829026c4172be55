use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

/// A finite formal sum of basis keys with coefficients in an exact ring. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct HallElement<K: Ord + Clone, R: CoeffRing> {
    ring: R,
    terms: BTreeMap<K, R::Elem>,
}

impl<K: Ord + Clone + fmt::Debug, R: CoeffRing> fmt::Debug for HallElement<K, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone, R: CoeffRing> PartialEq for HallElement<K, R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<K: Ord + Clone, R: CoeffRing> HallElement<K, R> {
    pub fn zero(ring: &R) -> Self {
        HallElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(ring: &R, k: K) -> Self {
        Self::monomial(ring, k, ring.one())
    }

    pub fn monomial(ring: &R, k: K, c: R::Elem) -> Self {
        let mut x = Self::zero(ring);
        x.add_term(k, c);
        x
    }

    pub fn from_terms(ring: &R, terms: impl IntoIterator<Item = (K, R::Elem)>) -> Self {
        let mut x = Self::zero(ring);
        for (k, c) in terms {
            x.add_term(k, c);
        }
        x
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> R::Elem {
        self.terms.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, k: K, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.ring.from_int(-1)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(k, x)| (k.clone(), self.ring.mul(x, c))))
    }

    /// Applies a coefficient-wise map into another ring.
    pub fn map_ring<S: CoeffRing>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> HallElement<K, S> {
        HallElement::from_terms(ring, self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }
}

/// A bilinear product on a free module with basis `K`, determined by products of basis keys.
pub trait HallStructure<K: Ord + Clone> {
    type Ring: CoeffRing;

    fn ring(&self) -> &Self::Ring;

    fn basis_product(&self, a: &K, b: &K) -> Result<Vec<(K, <Self::Ring as CoeffRing>::Elem)>>;

    fn multiply(&self, x: &HallElement<K, Self::Ring>, y: &HallElement<K, Self::Ring>) -> Result<HallElement<K, Self::Ring>> {
        let ring = self.ring();
        if x.ring() != ring || y.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let mut out = HallElement::zero(ring);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ring.mul(ca, cb);
                for (l, g) in self.basis_product(a, b)? {
                    out.add_term(l, ring.mul(&c, &g));
                }
            }
        }
        Ok(out)
    }

    /// Product of a sequence, associated from the left; the empty product needs the unit key.
    fn multiply_all(
        &self,
        unit: K,
        xs: &[HallElement<K, Self::Ring>],
    ) -> Result<HallElement<K, Self::Ring>> {
        let mut acc = HallElement::basis(self.ring(), unit);
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    fn power(&self, unit: K, x: &HallElement<K, Self::Ring>, n: usize) -> Result<HallElement<K, Self::Ring>> {
        self.multiply_all(unit, &vec![x.clone(); n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::SqrtQ;

    #[test]
    fn zero_coefficients_are_dropped() {
        let r = SqrtQ::new(2);
        let mut x: HallElement<u8, SqrtQ> = HallElement::basis(&r, 1);
        x.add_term(1, r.from_int(-1));
        assert!(x.is_zero());
        let y = HallElement::basis(&r, 2u8);
        assert!(y.sub(&y).unwrap().is_zero());
        let other = HallElement::basis(&SqrtQ::new(3), 2u8);
        assert_eq!(y.add(&other), Err(Error::RingMismatch));
    }
}
