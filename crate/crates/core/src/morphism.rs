//! Rota–Baxter algebras as targets, and the unique morphism out of the free
//! algebra extending an assignment of generators.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::coeff::{format_rational, LambdaPoly, Rational};
use crate::decorated::{
    self, diamond_decorated_sum, rb_operator_decorated, DecoratedForest, DecoratedSum, Symbol,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("no value assigned to symbol {0:?}")]
    MissingAssignment(String),
    #[error("term {0} is not a nonunitary basis element; a nonunitary target cannot receive it")]
    UnsupportedTerm(String),
    #[error("target check failed: {0}")]
    TargetCheck(String),
}

/// A Rota–Baxter algebra of weight λ into which the free algebra maps.
///
/// Coefficients arrive as elements of ℤ[λ]; a concrete target with a fixed
/// rational weight specializes them, a symbolic target keeps them.
pub trait TargetAlgebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    /// `None` for a nonunitary algebra.
    fn unit(&self) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &LambdaPoly, a: &Self::Elem) -> Self::Elem;
    /// The Rota–Baxter operator `P`.
    fn operator(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unitary(&self) -> bool {
        self.unit().is_some()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(&LambdaPoly::constant(-1), a)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// A target over ℚ with a fixed rational weight.
pub trait RationalTarget: TargetAlgebra {
    fn weight(&self) -> &Rational;
    fn scale_rational(&self, q: &Rational, a: &Self::Elem) -> Self::Elem;
}

/// Both sides of `P(a)P(b) = P(aP(b)) + P(P(a)b) + λP(ab)`.
pub fn rb_sides<T: TargetAlgebra>(t: &T, a: &T::Elem, b: &T::Elem) -> (T::Elem, T::Elem) {
    let pa = t.operator(a);
    let pb = t.operator(b);
    let lhs = t.mul(&pa, &pb);
    let r1 = t.operator(&t.mul(a, &pb));
    let r2 = t.operator(&t.mul(&pa, b));
    let r3 = t.scale(&LambdaPoly::lambda(), &t.operator(&t.mul(a, b)));
    (lhs, t.add(&t.add(&r1, &r2), &r3))
}

/// Checks the Rota–Baxter identity on every ordered pair of `samples`.
pub fn check_rb_identity<T: TargetAlgebra>(
    t: &T,
    samples: &[T::Elem],
) -> Result<(), MorphismError> {
    for a in samples {
        for b in samples {
            let (lhs, rhs) = rb_sides(t, a, b);
            if lhs != rhs {
                return Err(MorphismError::TargetCheck(format!(
                    "Rota-Baxter identity fails on {a:?}, {b:?}: {lhs:?} != {rhs:?}"
                )));
            }
        }
    }
    Ok(())
}

/// An assignment of target elements to alphabet symbols.
#[derive(Debug, Clone)]
pub struct Assignment<E> {
    values: BTreeMap<Symbol, E>,
}

impl<E> Default for Assignment<E> {
    fn default() -> Self {
        Assignment {
            values: BTreeMap::new(),
        }
    }
}

impl<E: Clone> Assignment<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Symbol, value: E) -> Self {
        self.values.insert(sym, value);
        self
    }

    pub fn insert(&mut self, sym: Symbol, value: E) {
        self.values.insert(sym, value);
    }

    pub fn get(&self, sym: &Symbol) -> Result<&E, MorphismError> {
        self.values
            .get(sym)
            .ok_or_else(|| MorphismError::MissingAssignment(sym.name().to_string()))
    }
}

impl<E: Clone> FromIterator<(Symbol, E)> for Assignment<E> {
    fn from_iter<I: IntoIterator<Item = (Symbol, E)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}

/// The morphism `f̄` extending `f` to the free algebra, evaluated on `a`.
///
/// For a unitary target this is the unitary extension. For a nonunitary
/// target `a` must be supported on ladder-free forests and factors
/// `(•; 1)` in the standard decomposition are omitted.
pub fn extend<T: TargetAlgebra>(
    f: &Assignment<T::Elem>,
    target: &T,
    a: &DecoratedSum,
) -> Result<T::Elem, MorphismError> {
    let unitary = target.is_unitary();
    let mut acc = target.zero();
    for (d, c) in a.iter() {
        if !unitary && !decorated::is_nonunitary_basis(d) {
            return Err(MorphismError::UnsupportedTerm(format!("{d:?}")));
        }
        let v = extend_basis(f, target, d)?;
        acc = target.add(&acc, &target.scale(c, &v));
    }
    Ok(acc)
}

fn extend_basis<T: TargetAlgebra>(
    f: &Assignment<T::Elem>,
    target: &T,
    d: &DecoratedForest,
) -> Result<T::Elem, MorphismError> {
    if d.is_unit() {
        return target
            .unit()
            .ok_or_else(|| MorphismError::UnsupportedTerm(format!("{d:?}")));
    }
    let sd = d.standard_decomposition();
    // product of factors, with absent (unit) factors skipped
    let mut acc: Option<T::Elem> = None;
    let push = |acc: &mut Option<T::Elem>, v: T::Elem| {
        *acc = Some(match acc.take() {
            None => v,
            Some(p) => target.mul(&p, &v),
        });
    };
    for (i, comp) in sd.components.iter().enumerate() {
        match comp.root_branches() {
            Some(inner) => {
                let v = extend_basis(f, target, &inner)?;
                push(&mut acc, target.operator(&v));
            }
            None => {
                if let Some(u) = target.unit() {
                    push(&mut acc, u);
                }
            }
        }
        if let Some(sep) = sd.separators.get(i) {
            push(&mut acc, f.get(sep)?.clone());
        }
    }
    acc.ok_or_else(|| MorphismError::UnsupportedTerm(format!("{d:?}")))
}

/// ℚ with `P(a) = -λa`, the smallest unitary Rota–Baxter algebra of weight λ.
#[derive(Debug, Clone)]
pub struct ScalarTarget {
    lambda: Rational,
}

pub fn scalar_target(lambda: Rational) -> ScalarTarget {
    ScalarTarget { lambda }
}

impl TargetAlgebra for ScalarTarget {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn unit(&self) -> Option<Rational> {
        Some(Rational::one())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn scale(&self, c: &LambdaPoly, a: &Rational) -> Rational {
        self.scale_rational(&c.specialize(&self.lambda), a)
    }
    fn operator(&self, a: &Rational) -> Rational {
        -(&self.lambda * a)
    }
}

impl RationalTarget for ScalarTarget {
    fn weight(&self) -> &Rational {
        &self.lambda
    }
    fn scale_rational(&self, q: &Rational, a: &Rational) -> Rational {
        q * a
    }
}

/// Rational sequences of a fixed length with the pointwise product and
/// `P(a)ₙ = λ·Σ_{k<n} a_k`.
#[derive(Debug, Clone)]
pub struct PartialSumTarget {
    len: usize,
    lambda: Rational,
}

pub fn partial_sum_target(len: usize, lambda: Rational) -> PartialSumTarget {
    assert!(len >= 1, "sequence length must be positive");
    PartialSumTarget { len, lambda }
}

/// A fixed-length rational sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequence(pub Vec<Rational>);

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(q))?;
        }
        f.write_str(")")
    }
}

impl PartialSumTarget {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, values: Vec<Rational>) -> Option<Sequence> {
        (values.len() == self.len).then_some(Sequence(values))
    }
}

impl TargetAlgebra for PartialSumTarget {
    type Elem = Sequence;

    fn zero(&self) -> Sequence {
        Sequence(vec![Rational::zero(); self.len])
    }
    fn unit(&self) -> Option<Sequence> {
        Some(Sequence(vec![Rational::one(); self.len]))
    }
    fn add(&self, a: &Sequence, b: &Sequence) -> Sequence {
        Sequence(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn mul(&self, a: &Sequence, b: &Sequence) -> Sequence {
        Sequence(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect())
    }
    fn scale(&self, c: &LambdaPoly, a: &Sequence) -> Sequence {
        self.scale_rational(&c.specialize(&self.lambda), a)
    }
    fn operator(&self, a: &Sequence) -> Sequence {
        let mut out = Vec::with_capacity(self.len);
        let mut running = Rational::zero();
        for x in &a.0 {
            out.push(&self.lambda * &running);
            running += x;
        }
        Sequence(out)
    }
}

impl RationalTarget for PartialSumTarget {
    fn weight(&self) -> &Rational {
        &self.lambda
    }
    fn scale_rational(&self, q: &Rational, a: &Sequence) -> Sequence {
        Sequence(a.0.iter().map(|x| q * x).collect())
    }
}

/// The free algebra itself as a target, with symbolic weight.
#[derive(Debug, Clone, Default)]
pub struct FreeTarget;

pub fn free_target() -> FreeTarget {
    FreeTarget
}

impl FreeTarget {
    /// The canonical assignment `x ↦ j_X(x)`.
    pub fn generator_assignment(&self, symbols: &[Symbol]) -> Assignment<DecoratedSum> {
        symbols
            .iter()
            .map(|s| (s.clone(), decorated::embed_symbol(s.clone())))
            .collect()
    }
}

impl TargetAlgebra for FreeTarget {
    type Elem = DecoratedSum;

    fn zero(&self) -> DecoratedSum {
        DecoratedSum::zero()
    }
    fn unit(&self) -> Option<DecoratedSum> {
        Some(decorated::unit())
    }
    fn add(&self, a: &DecoratedSum, b: &DecoratedSum) -> DecoratedSum {
        a.add(b)
    }
    fn mul(&self, a: &DecoratedSum, b: &DecoratedSum) -> DecoratedSum {
        diamond_decorated_sum(a, b)
    }
    fn scale(&self, c: &LambdaPoly, a: &DecoratedSum) -> DecoratedSum {
        a.scale(c)
    }
    fn operator(&self, a: &DecoratedSum) -> DecoratedSum {
        rb_operator_decorated(a)
    }
}

/// The same algebra with its unit forgotten.
#[derive(Debug, Clone)]
pub struct Nonunitary<T>(pub T);

impl<T: TargetAlgebra> TargetAlgebra for Nonunitary<T> {
    type Elem = T::Elem;

    fn zero(&self) -> T::Elem {
        self.0.zero()
    }
    fn unit(&self) -> Option<T::Elem> {
        None
    }
    fn add(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.0.add(a, b)
    }
    fn mul(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.0.mul(a, b)
    }
    fn scale(&self, c: &LambdaPoly, a: &T::Elem) -> T::Elem {
        self.0.scale(c, a)
    }
    fn operator(&self, a: &T::Elem) -> T::Elem {
        self.0.operator(a)
    }
}

impl<T: RationalTarget> RationalTarget for Nonunitary<T> {
    fn weight(&self) -> &Rational {
        self.0.weight()
    }
    fn scale_rational(&self, q: &Rational, a: &T::Elem) -> T::Elem {
        self.0.scale_rational(q, a)
    }
}
