//! Exhaustive law checking at bounded size.
//!
//! Every law is checked with symbolic λ over all tuples of enumerated basis
//! elements. Tuples are ordered lexicographically by the canonical order of
//! their entries, and the reported counterexample is the first failing tuple
//! in that order regardless of how the work was scheduled.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{self, ForestSum};
use crate::coeff::{LambdaPoly, Rational};
use crate::decorated::{
    self, diamond_decorated, rb_operator_decorated, Alphabet, DecoratedForest, DecoratedSum,
    DecorationError,
};
use crate::forest::{enumerate_up_to, EnumerateOptions, Forest};
use crate::linear::{Coefficient, LinComb};
use crate::morphism::{
    extend, free_target, partial_sum_target, scalar_target, Assignment, Nonunitary,
    PartialSumTarget, ScalarTarget, Sequence, TargetAlgebra,
};
use crate::text::{print_sum, Format, RenderBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Assoc,
    Rb,
    Unit,
    TwoAssoc,
    Leaf,
    LadderClosure,
    DecoratedAssoc,
    DecoratedRb,
    Morphism,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::Assoc,
        Law::Rb,
        Law::Unit,
        Law::TwoAssoc,
        Law::Leaf,
        Law::LadderClosure,
        Law::DecoratedAssoc,
        Law::DecoratedRb,
        Law::Morphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Assoc => "assoc",
            Law::Rb => "rb",
            Law::Unit => "unit",
            Law::TwoAssoc => "two_assoc",
            Law::Leaf => "leaf",
            Law::LadderClosure => "ladder_closure",
            Law::DecoratedAssoc => "decorated_assoc",
            Law::DecoratedRb => "decorated_rb",
            Law::Morphism => "morphism",
        }
    }

    pub fn needs_alphabet(self) -> bool {
        matches!(self, Law::DecoratedAssoc | Law::DecoratedRb | Law::Morphism)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Law, OracleError> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| OracleError::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown law {0:?}")]
    UnknownLaw(String),
    #[error("law {0} needs an alphabet")]
    MissingAlphabet(Law),
    #[error("max_vertices must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Alphabet(#[from] DecorationError),
}

/// Outcome of one law check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub max_vertices: usize,
    pub alphabet: Vec<String>,
    /// Size of the enumerated basis the tuples are drawn from.
    pub basis_size: usize,
    /// Entries per tuple.
    pub arity: usize,
    pub tuples: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn to_text(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut out = format!(
            "law {}: {} ({} tuples of arity {} over {} basis elements, max_vertices={}",
            self.law, status, self.tuples, self.arity, self.basis_size, self.max_vertices
        );
        if !self.alphabet.is_empty() {
            out.push_str(&format!(", alphabet={}", self.alphabet.join(",")));
        }
        out.push(')');
        if let Some(c) = &self.counterexample {
            out.push_str("\ncounterexample: ");
            out.push_str(c);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Number of basis terms with nonzero coefficient.
pub fn count_terms<K: Ord + Clone, C: Coefficient>(a: &LinComb<K, C>) -> usize {
    a.len()
}

/// Checks `law` over every tuple of basis elements with at most
/// `max_vertices` vertices per entry.
pub fn check_law(
    law: Law,
    max_vertices: usize,
    alphabet: Option<&[String]>,
) -> Result<LawReport, OracleError> {
    if max_vertices == 0 {
        return Err(OracleError::ZeroBound);
    }
    let alphabet = match (law.needs_alphabet(), alphabet) {
        (true, None) => return Err(OracleError::MissingAlphabet(law)),
        (true, Some([])) => return Err(OracleError::MissingAlphabet(law)),
        (_, names) => names.map(Alphabet::new).transpose()?,
    };
    let forests = enumerate_up_to(max_vertices, EnumerateOptions::default());
    let outcome = match law {
        Law::Assoc => search(&forests, 3, |t| assoc(t[0], t[1], t[2])),
        Law::Rb => search(&forests, 2, |t| rb(t[0], t[1])),
        Law::Unit => search(&forests, 1, |t| unit_law(t[0])),
        Law::TwoAssoc => search(&forests, 3, |t| two_assoc(t[0], t[1], t[2])),
        Law::Leaf => search(&forests, 2, |t| leaf_formula(t[0], t[1])),
        Law::LadderClosure => ladder_closure(max_vertices, alphabet.as_ref()),
        Law::DecoratedAssoc => {
            let basis = decorated_basis(&forests, alphabet.as_ref().unwrap());
            search(&basis, 3, |t| decorated_assoc(t[0], t[1], t[2]))
        }
        Law::DecoratedRb => {
            let basis = decorated_basis(&forests, alphabet.as_ref().unwrap());
            search(&basis, 2, |t| decorated_rb(t[0], t[1]))
        }
        Law::Morphism => morphism(&forests, alphabet.as_ref().unwrap()),
    };
    Ok(LawReport {
        law,
        max_vertices,
        alphabet: alphabet
            .map(|a| a.symbols().iter().map(|s| s.name().to_string()).collect())
            .unwrap_or_default(),
        basis_size: outcome.basis_size,
        arity: outcome.arity,
        tuples: outcome.tuples,
        passed: outcome.counterexample.is_none(),
        counterexample: outcome.counterexample,
    })
}

struct Outcome {
    basis_size: usize,
    arity: usize,
    tuples: usize,
    counterexample: Option<String>,
}

/// Runs `check` on every `arity`-tuple of `items`; `check` returns a
/// description of the failure, if any.
fn search<T, F>(items: &[T], arity: usize, check: F) -> Outcome
where
    T: Sync + RenderBasis,
    F: Fn(&[&T]) -> Option<String> + Sync,
{
    let n = items.len();
    let tuples = n.pow(arity as u32);
    let decode = |mut i: usize| {
        let mut t = vec![&items[0]; arity];
        for slot in t.iter_mut().rev() {
            *slot = &items[i % n];
            i /= n;
        }
        t
    };
    let counterexample = (0..tuples).into_par_iter().find_map_first(|i| {
        let t = decode(i);
        check(&t).map(|why| {
            let names: Vec<String> = t.iter().map(|x| x.render(Format::Ascii)).collect();
            format!("({}): {why}", names.join(", "))
        })
    });
    Outcome {
        basis_size: n,
        arity,
        tuples,
        counterexample,
    }
}

fn differ<K, C>(lhs: &LinComb<K, C>, rhs: &LinComb<K, C>) -> Option<String>
where
    K: Ord + Clone + RenderBasis,
    C: crate::text::RenderCoeff,
{
    (lhs != rhs).then(|| {
        format!(
            "lhs = {} but rhs = {}",
            print_sum(lhs, Format::Ascii),
            print_sum(rhs, Format::Ascii)
        )
    })
}

fn b(f: &Forest) -> ForestSum {
    ForestSum::basis(f.clone())
}

fn assoc(f: &Forest, g: &Forest, h: &Forest) -> Option<String> {
    let lhs = algebra::diamond(&algebra::diamond_forests(f, g), &b(h));
    let rhs = algebra::diamond(&b(f), &algebra::diamond_forests(g, h));
    differ(&lhs, &rhs)
}

fn rb(f: &Forest, g: &Forest) -> Option<String> {
    let pf = Forest::from(f.graft());
    let pg = Forest::from(g.graft());
    let lhs = algebra::diamond_forests(&pf, &pg);
    let mut rhs = algebra::rb_operator(&algebra::diamond_forests(f, &pg));
    rhs = rhs.add(&algebra::rb_operator(&algebra::diamond_forests(&pf, g)));
    rhs = rhs
        .add(&algebra::rb_operator(&algebra::diamond_forests(f, g)).scale(&LambdaPoly::lambda()));
    differ(&lhs, &rhs)
}

fn unit_law(f: &Forest) -> Option<String> {
    let one = Forest::unit();
    let left = algebra::diamond_forests(&one, f);
    let right = algebra::diamond_forests(f, &one);
    differ(&left, &b(f)).or_else(|| differ(&right, &b(f)))
}

fn two_assoc(f: &Forest, g: &Forest, h: &Forest) -> Option<String> {
    let lhs = algebra::diamond_forests(&f.concat(g), h);
    let rhs = algebra::concat_sum(&b(f), &algebra::diamond_forests(g, h));
    if let Some(why) = differ(&lhs, &rhs) {
        return Some(format!("(f g) * h: {why}"));
    }
    let lhs = algebra::diamond_forests(h, &f.concat(g));
    let rhs = algebra::concat_sum(&algebra::diamond_forests(h, f), &b(g));
    differ(&lhs, &rhs).map(|why| format!("h * (f g): {why}"))
}

fn leaf_formula(f: &Forest, g: &Forest) -> Option<String> {
    let expected = f.leaf_count() + g.leaf_count() - 1;
    algebra::diamond_forests(f, g)
        .keys()
        .find(|t| t.leaf_count() != expected)
        .map(|t| {
            format!(
                "term {t} has {} leaves, expected {expected}",
                t.leaf_count()
            )
        })
}

fn ladder_closure(max_vertices: usize, alphabet: Option<&Alphabet>) -> Outcome {
    let opts = EnumerateOptions {
        ladder_free_only: true,
        ..Default::default()
    };
    let forests = enumerate_up_to(max_vertices, opts);
    let Some(alphabet) = alphabet else {
        return search(&forests, 2, |t| {
            let (f, g) = (t[0], t[1]);
            if !Forest::from(f.graft()).is_ladder_free() {
                return Some(format!("graft {} is not ladder-free", f.graft()));
            }
            let (_, closed) = algebra::restrict_ladder_free(&algebra::diamond_forests(f, g));
            (!closed).then(|| "product leaves the ladder-free span".to_string())
        });
    };
    let basis = alphabet.decorate_all(&forests);
    search(&basis, 2, |t| {
        let (d, e) = (t[0], t[1]);
        if !decorated::is_nonunitary_basis(&d.graft()) {
            return Some(format!("graft {:?} is not ladder-free", d.graft()));
        }
        let prod = diamond_decorated(d, e);
        (!decorated::is_nonunitary_supported(&prod))
            .then(|| "product leaves the ladder-free span".to_string())
    })
}

fn decorated_basis(forests: &[Forest], alphabet: &Alphabet) -> Vec<DecoratedForest> {
    alphabet.decorate_all(forests)
}

fn db(d: &DecoratedForest) -> DecoratedSum {
    DecoratedSum::basis(d.clone())
}

fn decorated_assoc(
    d: &DecoratedForest,
    e: &DecoratedForest,
    g: &DecoratedForest,
) -> Option<String> {
    let de = diamond_decorated(d, e);
    let forgotten = algebra::diamond_forests(d.forest(), e.forest());
    if decorated::forget_decorations(&de) != forgotten {
        return Some("forgetting decorations does not commute with the product".into());
    }
    let lhs = decorated::diamond_decorated_sum(&de, &db(g));
    let rhs = decorated::diamond_decorated_sum(&db(d), &diamond_decorated(e, g));
    differ(&lhs, &rhs)
}

fn decorated_rb(d: &DecoratedForest, e: &DecoratedForest) -> Option<String> {
    let pd = d.graft();
    let pe = e.graft();
    let lhs = diamond_decorated(&pd, &pe);
    let mut rhs = rb_operator_decorated(&diamond_decorated(d, &pe));
    rhs = rhs.add(&rb_operator_decorated(&diamond_decorated(&pd, e)));
    rhs = rhs.add(&rb_operator_decorated(&diamond_decorated(d, e)).scale(&LambdaPoly::lambda()));
    differ(&lhs, &rhs)
}

/// Weights at which the concrete targets are instantiated.
pub const MORPHISM_WEIGHTS: [i64; 3] = [-1, 1, 2];

/// Length of the partial-sum target sequences.
pub const PARTIAL_SUM_LEN: usize = 4;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The fixed assignment used by the morphism law: the `k`-th symbol goes to
/// `k + 2` in the scalar target.
pub fn scalar_assignment(alphabet: &Alphabet) -> Assignment<Rational> {
    alphabet
        .symbols()
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), q(2 * k as i64 + 3, 2)))
        .collect()
}

/// The fixed assignment used by the morphism law for sequences.
pub fn sequence_assignment(alphabet: &Alphabet, len: usize) -> Assignment<Sequence> {
    alphabet
        .symbols()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let k = k as i64;
            let values = (0..len as i64)
                .map(|i| q((i + 1) * (k + 2) - 3, k + 1))
                .collect();
            (s.clone(), Sequence(values))
        })
        .collect()
}

/// The morphism law on one pair, for one target.
fn morphism_pair<T: TargetAlgebra>(
    target: &T,
    f: &Assignment<T::Elem>,
    d: &DecoratedForest,
    e: &DecoratedForest,
) -> Option<String> {
    let tag =
        |what: &str, lhs: &T::Elem, rhs: &T::Elem| Some(format!("{what}: {lhs:?} != {rhs:?}"));
    let unitary = target.is_unitary();
    let eval = |a: &DecoratedSum| extend(f, target, a).map_err(|err| err.to_string());
    let run = || -> Result<Option<String>, String> {
        let fd = eval(&db(d))?;
        let fe = eval(&db(e))?;
        let prod = eval(&diamond_decorated(d, e))?;
        let expected = target.mul(&fd, &fe);
        if prod != expected {
            return Ok(tag("multiplicativity", &prod, &expected));
        }
        let op = eval(&rb_operator_decorated(&db(d)))?;
        let expected = target.operator(&fd);
        if op != expected {
            return Ok(tag("operator compatibility", &op, &expected));
        }
        if unitary && d.is_unit() {
            let one = target.unit().unwrap();
            if fd != one {
                return Ok(tag("unit", &fd, &one));
            }
        }
        Ok(None)
    };
    run().unwrap_or_else(Some)
}

fn generator_check<T: TargetAlgebra>(
    target: &T,
    f: &Assignment<T::Elem>,
    alphabet: &Alphabet,
) -> Option<String> {
    for s in alphabet.symbols() {
        let got = match extend(f, target, &decorated::embed_symbol(s.clone())) {
            Ok(v) => v,
            Err(err) => return Some(err.to_string()),
        };
        let want = f.get(s).expect("assignment covers the alphabet");
        if &got != want {
            return Some(format!("generator {s}: {got:?} != {want:?}"));
        }
    }
    None
}

fn rb_self_test<T: TargetAlgebra>(target: &T, samples: &[T::Elem]) -> Option<String> {
    crate::morphism::check_rb_identity(target, samples)
        .err()
        .map(|e| e.to_string())
}

struct MorphismTargets {
    scalars: Vec<ScalarTarget>,
    sequences: Vec<PartialSumTarget>,
}

fn morphism_targets() -> MorphismTargets {
    MorphismTargets {
        scalars: MORPHISM_WEIGHTS
            .iter()
            .map(|&l| scalar_target(q(l, 1)))
            .collect(),
        sequences: MORPHISM_WEIGHTS
            .iter()
            .map(|&l| partial_sum_target(PARTIAL_SUM_LEN, q(l, 1)))
            .collect(),
    }
}

/// Checks, for the scalar and partial-sum targets at each weight in
/// [`MORPHISM_WEIGHTS`] and for their nonunitary versions, that the
/// extension is multiplicative, commutes with the operators and restricts
/// to the assignment on generators; and that the extension of the
/// canonical assignment into the free algebra is the identity.
fn morphism(forests: &[Forest], alphabet: &Alphabet) -> Outcome {
    let basis = decorated_basis(forests, alphabet);
    let targets = morphism_targets();
    let scalar_f = scalar_assignment(alphabet);
    let seq_f = sequence_assignment(alphabet, PARTIAL_SUM_LEN);
    let free = free_target();
    let free_f = free.generator_assignment(alphabet.symbols());

    let mut preliminary = None;
    for t in &targets.scalars {
        let samples: Vec<Rational> = vec![q(0, 1), q(1, 1), q(-3, 2), q(5, 3)];
        preliminary = preliminary
            .or_else(|| rb_self_test(t, &samples))
            .or_else(|| generator_check(t, &scalar_f, alphabet))
            .or_else(|| generator_check(&Nonunitary(t.clone()), &scalar_f, alphabet));
    }
    for t in &targets.sequences {
        let samples: Vec<Sequence> = vec![
            Sequence(vec![q(1, 1), q(0, 1), q(-2, 1), q(1, 2)]),
            Sequence(vec![q(3, 1), q(1, 3), q(0, 1), q(-1, 1)]),
            Sequence(vec![q(0, 1); PARTIAL_SUM_LEN]),
        ];
        preliminary = preliminary
            .or_else(|| rb_self_test(t, &samples))
            .or_else(|| generator_check(t, &seq_f, alphabet))
            .or_else(|| generator_check(&Nonunitary(t.clone()), &seq_f, alphabet));
    }
    preliminary = preliminary.or_else(|| generator_check(&free, &free_f, alphabet));
    if let Some(why) = preliminary {
        return Outcome {
            basis_size: basis.len(),
            arity: 2,
            tuples: 0,
            counterexample: Some(why),
        };
    }

    search(&basis, 2, |t| {
        let (d, e) = (t[0], t[1]);
        let nonunitary = decorated::is_nonunitary_basis(d) && decorated::is_nonunitary_basis(e);
        for (target, lambda) in targets.scalars.iter().zip(MORPHISM_WEIGHTS) {
            let found = morphism_pair(target, &scalar_f, d, e).or_else(|| {
                nonunitary
                    .then(|| morphism_pair(&Nonunitary(target.clone()), &scalar_f, d, e))
                    .flatten()
            });
            if let Some(why) = found {
                return Some(format!("scalar target, weight {lambda}: {why}"));
            }
        }
        for (target, lambda) in targets.sequences.iter().zip(MORPHISM_WEIGHTS) {
            let found = morphism_pair(target, &seq_f, d, e).or_else(|| {
                nonunitary
                    .then(|| morphism_pair(&Nonunitary(target.clone()), &seq_f, d, e))
                    .flatten()
            });
            if let Some(why) = found {
                return Some(format!("partial-sum target, weight {lambda}: {why}"));
            }
        }
        match extend(&free_f, &free, &db(d)) {
            Ok(v) if v == db(d) => None,
            Ok(v) => Some(format!(
                "free target: image {} is not the identity",
                print_sum(&v, Format::Ascii)
            )),
            Err(err) => Some(err.to_string()),
        }
    })
}

/// Both sides of the Rota–Baxter identity on forests, for callers that want
/// to inspect them.
pub fn forest_rb_sides(f: &Forest, g: &Forest) -> (ForestSum, ForestSum) {
    let pf = ForestSum::basis(Forest::from(f.graft()));
    let pg = ForestSum::basis(Forest::from(g.graft()));
    let (a, bb) = (b(f), b(g));
    let lhs = algebra::diamond(&pf, &pg);
    let rhs = algebra::rb_operator(&algebra::diamond(&a, &pg))
        .add(&algebra::rb_operator(&algebra::diamond(&pf, &bb)))
        .add(&algebra::rb_operator(&algebra::diamond(&a, &bb)).scale(&LambdaPoly::lambda()));
    (lhs, rhs)
}
