//! Unitarization: the free case, and the case of an operator with
//! `P² = -λP`.

use num::{One, Zero};
use thiserror::Error;

use crate::coeff::{LambdaPoly, Rational};
use crate::decorated::{self, DecoratedSum};
use crate::morphism::{extend, Assignment, MorphismError, RationalTarget, TargetAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitarizeError {
    #[error("term {0} lies outside the nonunitary free algebra")]
    NotNonunitary(String),
    #[error("target already has a unit")]
    AlreadyUnitary,
    #[error("operator is not pseudo-idempotent on sample {0}: P(P(a)) != -λP(a)")]
    NotIdempotent(String),
}

/// The inclusion `u_X` of the nonunitary free algebra into the unitary one.
pub fn unitarize_free(a: &DecoratedSum) -> Result<DecoratedSum, UnitarizeError> {
    if let Some((d, _)) = a.iter().find(|(d, _)| !decorated::is_nonunitary_basis(d)) {
        return Err(UnitarizeError::NotNonunitary(format!("{d:?}")));
    }
    Ok(a.clone())
}

/// The unitary extension `f̄'` through which a map out of the nonunitary
/// free algebra factors: `f̄' ∘ u_X = f̄`.
pub fn factor_through_unit<T: TargetAlgebra>(
    f: &Assignment<T::Elem>,
    target: &T,
    a: &DecoratedSum,
) -> Result<T::Elem, MorphismError> {
    if !target.is_unitary() {
        return Err(MorphismError::TargetCheck(
            "factor_through_unit needs a unitary target".into(),
        ));
    }
    extend(f, target, a)
}

/// An element `(m, a)` of `k ⊕ R`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarizedElement<E> {
    pub scalar: Rational,
    pub body: E,
}

/// `k ⊕ R` with `(m,a)(n,b) = (mn, mb + na + ab)` and
/// `P̃(m, a) = (-λm, P(a))`.
#[derive(Debug, Clone)]
pub struct Unitarized<T> {
    inner: T,
}

impl<T: TargetAlgebra> Unitarized<T> {
    pub fn inner(&self) -> &T {
        &self.inner
    }

    /// `u_R(a) = (0, a)`.
    pub fn embed(&self, a: T::Elem) -> UnitarizedElement<T::Elem> {
        UnitarizedElement {
            scalar: Rational::zero(),
            body: a,
        }
    }

    pub fn element(&self, scalar: Rational, body: T::Elem) -> UnitarizedElement<T::Elem> {
        UnitarizedElement { scalar, body }
    }
}

/// Adjoins a unit to a nonunitary target whose operator satisfies
/// `P² = -λP`, checked on `samples`.
pub fn idempotent_unitarize<T: RationalTarget>(
    target: T,
    samples: &[T::Elem],
) -> Result<Unitarized<T>, UnitarizeError> {
    if target.is_unitary() {
        return Err(UnitarizeError::AlreadyUnitary);
    }
    let minus_lambda = -target.weight().clone();
    for a in samples {
        let pa = target.operator(a);
        if target.operator(&pa) != target.scale_rational(&minus_lambda, &pa) {
            return Err(UnitarizeError::NotIdempotent(format!("{a:?}")));
        }
    }
    Ok(Unitarized { inner: target })
}

impl<T: RationalTarget> TargetAlgebra for Unitarized<T> {
    type Elem = UnitarizedElement<T::Elem>;

    fn zero(&self) -> Self::Elem {
        self.embed(self.inner.zero())
    }

    fn unit(&self) -> Option<Self::Elem> {
        Some(self.element(Rational::one(), self.inner.zero()))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.element(&a.scalar + &b.scalar, self.inner.add(&a.body, &b.body))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.inner;
        let mb = r.scale_rational(&a.scalar, &b.body);
        let na = r.scale_rational(&b.scalar, &a.body);
        let ab = r.mul(&a.body, &b.body);
        self.element(&a.scalar * &b.scalar, r.add(&r.add(&mb, &na), &ab))
    }

    fn scale(&self, c: &LambdaPoly, a: &Self::Elem) -> Self::Elem {
        self.scale_rational(&c.specialize(self.inner.weight()), a)
    }

    fn operator(&self, a: &Self::Elem) -> Self::Elem {
        let lambda = self.inner.weight();
        self.element(-(lambda * &a.scalar), self.inner.operator(&a.body))
    }
}

impl<T: RationalTarget> RationalTarget for Unitarized<T> {
    fn weight(&self) -> &Rational {
        self.inner.weight()
    }

    fn scale_rational(&self, q: &Rational, a: &Self::Elem) -> Self::Elem {
        self.element(q * &a.scalar, self.inner.scale_rational(q, &a.body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{rb_sides, scalar_target, Nonunitary};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn operator_on_scalar_example() {
        let u =
            idempotent_unitarize(Nonunitary(scalar_target(q(2, 1))), &[q(1, 1), q(-3, 2)]).unwrap();
        let x = u.element(q(5, 1), q(7, 1));
        let px = u.operator(&x);
        assert_eq!(px, u.element(q(-10, 1), q(-14, 1)));
        let ppx = u.operator(&px);
        assert_eq!(ppx, u.scale(&-LambdaPoly::lambda(), &px));
        let y = u.element(q(-1, 3), q(2, 1));
        let (lhs, rhs) = rb_sides(&u, &x, &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_unitary_and_non_idempotent() {
        assert!(matches!(
            idempotent_unitarize(scalar_target(q(1, 1)), &[]),
            Err(UnitarizeError::AlreadyUnitary)
        ));
        let pst = crate::morphism::partial_sum_target(3, q(1, 1));
        let sample = pst.element(vec![q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        assert!(matches!(
            idempotent_unitarize(Nonunitary(pst), &[sample]),
            Err(UnitarizeError::NotIdempotent(_))
        ));
    }
}
