//! Normalized finite linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num::Zero;

use crate::coeff::{LambdaPoly, Rational};

/// Coefficient ring operations needed by [`LinComb`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coefficient for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly::zero()
    }
    fn one() -> Self {
        LambdaPoly::one()
    }
    fn is_zero(&self) -> bool {
        LambdaPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        LambdaPoly::add_assign_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num::One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// A finite sum `Σ cᵢ·bᵢ` with distinct basis keys and no zero coefficients.
/// Iteration follows the basis order. The empty combination is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, C: Coefficient> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1·key`.
    pub fn basis(key: K) -> Self {
        Self::term(key, C::one())
    }

    pub fn term(key: K, coeff: C) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.mul_ref(scale));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg_ref());
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a basis-to-basis map linearly.
    pub fn map_basis<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Maps every coefficient, dropping the ones that become zero.
    pub fn map_coeffs<C2: Coefficient>(&self, mut f: impl FnMut(&C) -> C2) -> LinComb<K, C2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Bilinear extension of a basis product `basis_mul`.
    pub fn bilinear(
        &self,
        other: &Self,
        mut basis_mul: impl FnMut(&K, &K) -> LinComb<K, C>,
    ) -> LinComb<K, C> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = basis_mul(a, b);
                out.add_scaled(&prod, &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<K: Ord + Clone, C: Coefficient> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord, C> IntoIterator for &'a LinComb<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Sum = LinComb<u32, LambdaPoly>;

    #[test]
    fn cancellation_drops_terms() {
        let mut s = Sum::term(1, LambdaPoly::lambda());
        s.add_term(1, -LambdaPoly::lambda());
        assert!(s.is_zero());
        assert_eq!(s, Sum::zero());
    }

    #[test]
    fn bilinear_matches_manual_expansion() {
        let a: Sum = [(1, LambdaPoly::from(2)), (2, LambdaPoly::lambda())]
            .into_iter()
            .collect();
        let b = Sum::term(3, LambdaPoly::from(5));
        let prod = a.bilinear(&b, |x, y| Sum::basis(x + y));
        assert_eq!(prod.coeff(&4), LambdaPoly::from(10));
        assert_eq!(prod.coeff(&5), &LambdaPoly::from(5) * &LambdaPoly::lambda());
        assert_eq!(prod.len(), 2);
    }
}
