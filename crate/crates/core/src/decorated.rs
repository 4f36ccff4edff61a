//! Forests with angular decorations by an alphabet, and the free
//! Rota–Baxter algebra they span.
//!
//! A decorated forest `(F; x₁,…,x_{ℓ-1})` places one symbol in each of the
//! `ℓ(F) - 1` angles between adjacent leaves, read left to right. Forests
//! with a single leaf carry no symbols; a scalar decoration on them is kept
//! in the coefficient instead.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::algebra::diamond_forests;
use crate::coeff::LambdaPoly;
use crate::forest::{Forest, Tree};
use crate::linear::LinComb;

/// An interned alphabet symbol.
///
/// Equal names share one allocation, so equality is usually a pointer check.
/// Ordering is by name, which keeps normal forms deterministic.
#[derive(Clone)]
pub struct Symbol(Arc<str>);

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static INTERNER: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut set = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(s) = set.get(name) {
            return Symbol(Arc::clone(s));
        }
        let s: Arc<str> = Arc::from(name);
        set.insert(Arc::clone(&s));
        Symbol(s)
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Symbol {}

impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecorationError {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("forest {forest} has {leaves} leaves and needs {} decorations, got {got}", leaves - 1)]
    LengthMismatch {
        forest: String,
        leaves: usize,
        got: usize,
    },
    #[error("invalid symbol name {0:?}")]
    InvalidName(String),
}

/// Whether `name` may be used as an alphabet symbol in the text syntax.
pub fn is_valid_symbol_name(name: &str) -> bool {
    !name.is_empty()
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && !matches!(name, "o" | "P" | "L")
        && !name.bytes().all(|b| b.is_ascii_digit())
}

/// A finite set of symbols, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Alphabet, DecorationError> {
        let mut symbols: Vec<Symbol> = Vec::new();
        for n in names {
            let n = n.as_ref();
            if !is_valid_symbol_name(n) {
                return Err(DecorationError::InvalidName(n.to_string()));
            }
            let s = Symbol::new(n);
            if !symbols.contains(&s) {
                symbols.push(s);
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.contains(s)
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol, DecorationError> {
        self.symbols
            .iter()
            .find(|s| s.name() == name)
            .cloned()
            .ok_or_else(|| DecorationError::UnknownSymbol(name.to_string()))
    }

    /// The generator `j_X(x) = (•⊔•; x)`.
    pub fn embed_generator(&self, name: &str) -> Result<DecoratedSum, DecorationError> {
        let x = self.lookup(name)?;
        Ok(embed_symbol(x))
    }

    /// Every decoration vector of the given length, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Vec<Symbol>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.symbols.iter().map(move |s| {
                        let mut w = w.clone();
                        w.push(s.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// All decorated forests on the given forests, every decoration assignment.
    pub fn decorate_all(&self, forests: &[Forest]) -> Vec<DecoratedForest> {
        forests
            .iter()
            .flat_map(|f| {
                self.words(f.leaf_count() - 1)
                    .into_iter()
                    .map(move |w| DecoratedForest {
                        forest: f.clone(),
                        decorations: w,
                    })
            })
            .collect()
    }
}

/// The generator `(•⊔•; x)` for a symbol.
pub fn embed_symbol(x: Symbol) -> DecoratedSum {
    DecoratedSum::basis(DecoratedForest {
        forest: Forest::bullets(2),
        decorations: vec![x],
    })
}

/// A forest with one symbol per angle between adjacent leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedForest {
    forest: Forest,
    decorations: Vec<Symbol>,
}

impl DecoratedForest {
    pub fn new(forest: Forest, decorations: Vec<Symbol>) -> Result<Self, DecorationError> {
        let leaves = forest.leaf_count();
        if decorations.len() + 1 != leaves {
            return Err(DecorationError::LengthMismatch {
                forest: forest.encoding(),
                leaves,
                got: decorations.len(),
            });
        }
        Ok(DecoratedForest {
            forest,
            decorations,
        })
    }

    /// A single-leaf forest with the empty decoration.
    pub fn undecorated(forest: Forest) -> Result<Self, DecorationError> {
        DecoratedForest::new(forest, Vec::new())
    }

    pub fn unit() -> Self {
        DecoratedForest {
            forest: Forest::unit(),
            decorations: Vec::new(),
        }
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn decorations(&self) -> &[Symbol] {
        &self.decorations
    }

    pub fn is_unit(&self) -> bool {
        self.forest.is_unit()
    }

    /// `(⌊F⌋; x⃗)`; grafting keeps the leaf count.
    pub fn graft(&self) -> DecoratedForest {
        DecoratedForest {
            forest: Forest::from(self.forest.graft()),
            decorations: self.decorations.clone(),
        }
    }

    /// Splits along `⊔` into decorated trees and separator symbols.
    pub fn standard_decomposition(&self) -> StandardDecomposition {
        let mut components = Vec::with_capacity(self.forest.breadth());
        let mut separators = Vec::with_capacity(self.forest.breadth() - 1);
        let mut pos = 0;
        let b = self.forest.breadth();
        for (i, t) in self.forest.trees().iter().enumerate() {
            let inner = t.leaf_count() - 1;
            components.push(DecoratedTree {
                tree: t.clone(),
                decorations: self.decorations[pos..pos + inner].to_vec(),
            });
            pos += inner;
            if i + 1 < b {
                separators.push(self.decorations[pos].clone());
                pos += 1;
            }
        }
        debug_assert_eq!(pos, self.decorations.len());
        StandardDecomposition {
            components,
            separators,
        }
    }
}

impl Ord for DecoratedForest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.forest
            .cmp(&other.forest)
            .then_with(|| self.decorations.cmp(&other.decorations))
    }
}

impl PartialOrd for DecoratedForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for DecoratedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{};", self.forest)?;
        if self.decorations.is_empty() {
            f.write_str("1")?;
        }
        for (i, d) in self.decorations.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// A tree component `(Tᵢ; x⃗ᵢ)` of a standard decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTree {
    pub tree: Tree,
    pub decorations: Vec<Symbol>,
}

impl DecoratedTree {
    /// For `Tᵢ = ⌊F̄ᵢ⌋`, the decorated forest `(F̄ᵢ; x⃗ᵢ)`; `None` for `•`.
    pub fn root_branches(&self) -> Option<DecoratedForest> {
        self.tree.root_branches().map(|forest| DecoratedForest {
            forest,
            decorations: self.decorations.clone(),
        })
    }
}

/// `(T₁; x⃗₁) ⊔_{u₁} (T₂; x⃗₂) ⊔_{u₂} ⋯ ⊔_{u_{b-1}} (T_b; x⃗_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardDecomposition {
    pub components: Vec<DecoratedTree>,
    pub separators: Vec<Symbol>,
}

impl StandardDecomposition {
    /// Reassembles the decorated forest.
    pub fn concat(&self) -> DecoratedForest {
        let trees = self.components.iter().map(|c| c.tree.clone()).collect();
        let mut decorations = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            decorations.extend_from_slice(&c.decorations);
            if let Some(u) = self.separators.get(i) {
                decorations.push(u.clone());
            }
        }
        DecoratedForest {
            forest: Forest::new(trees).expect("decomposition has a component"),
            decorations,
        }
    }
}

/// An element of the free Rota–Baxter algebra on an alphabet.
pub type DecoratedSum = LinComb<DecoratedForest, LambdaPoly>;

pub fn unit() -> DecoratedSum {
    DecoratedSum::basis(DecoratedForest::unit())
}

/// Product of decorated basis elements: the forest product with the two
/// decoration vectors concatenated on every resulting forest.
pub fn diamond_decorated(d: &DecoratedForest, e: &DecoratedForest) -> DecoratedSum {
    match (d.is_unit(), e.is_unit()) {
        (true, true) => unit(),
        (false, true) => DecoratedSum::basis(d.clone()),
        (true, false) => DecoratedSum::basis(e.clone()),
        (false, false) => {
            let mut decorations = Vec::with_capacity(d.decorations.len() + e.decorations.len());
            decorations.extend_from_slice(&d.decorations);
            decorations.extend_from_slice(&e.decorations);
            diamond_forests(&d.forest, &e.forest).map_basis(|forest| DecoratedForest {
                forest: forest.clone(),
                decorations: decorations.clone(),
            })
        }
    }
}

pub fn diamond_decorated_sum(a: &DecoratedSum, b: &DecoratedSum) -> DecoratedSum {
    a.bilinear(b, diamond_decorated)
}

/// `P_X`: grafts every basis forest, keeping decorations.
pub fn rb_operator_decorated(a: &DecoratedSum) -> DecoratedSum {
    a.map_basis(DecoratedForest::graft)
}

/// Basis element of the nonunitary free algebra: the forest is ladder-free.
pub fn is_nonunitary_basis(d: &DecoratedForest) -> bool {
    d.forest.is_ladder_free()
}

/// Whether every term of `a` is a nonunitary basis element.
pub fn is_nonunitary_supported(a: &DecoratedSum) -> bool {
    a.keys().all(is_nonunitary_basis)
}

/// Forgets decorations, summing coefficients onto the underlying forests.
pub fn forget_decorations(a: &DecoratedSum) -> crate::algebra::ForestSum {
    a.map_basis(|d| d.forest.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ForestSum;

    fn f(s: &str) -> Forest {
        Forest::from_encoding(s).unwrap()
    }

    fn d(forest: &str, deco: &[&str]) -> DecoratedForest {
        DecoratedForest::new(f(forest), deco.iter().map(|s| Symbol::new(s)).collect()).unwrap()
    }

    #[test]
    fn length_invariant_enforced() {
        assert!(DecoratedForest::new(f("oo"), vec![]).is_err());
        assert!(DecoratedForest::new(f("[o]"), vec![Symbol::new("x")]).is_err());
        assert!(DecoratedForest::new(f("[o]"), vec![]).is_ok());
    }

    #[test]
    fn decomposition_example() {
        let df = d("o[o[o]][oo]", &["v", "x", "w", "y"]);
        let sd = df.standard_decomposition();
        assert_eq!(sd.components.len(), 3);
        assert_eq!(sd.components[0].tree, Tree::leaf());
        assert!(sd.components[0].decorations.is_empty());
        assert_eq!(sd.components[1].decorations, vec![Symbol::new("x")]);
        assert_eq!(sd.components[2].decorations, vec![Symbol::new("y")]);
        assert_eq!(sd.separators, vec![Symbol::new("v"), Symbol::new("w")]);
        assert_eq!(sd.concat(), df);

        let sd = d("oo", &["x"]).standard_decomposition();
        assert_eq!(sd.components.len(), 2);
        assert_eq!(sd.separators, vec![Symbol::new("x")]);

        let sd = d("[o[oo]]", &["a", "b"]).standard_decomposition();
        assert_eq!(sd.components.len(), 1);
        assert!(sd.separators.is_empty());
    }

    #[test]
    fn decorated_worked_example() {
        let got = diamond_decorated(&d("[oo]", &["x"]), &d("[o]", &[]));
        let want: DecoratedSum = [
            (d("[o[o]]", &["x"]), LambdaPoly::one()),
            (d("[[oo]]", &["x"]), LambdaPoly::one()),
            (d("[oo]", &["x"]), LambdaPoly::lambda()),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn unit_and_depth_zero() {
        let e = d("[o]o", &["z"]);
        assert_eq!(
            diamond_decorated(&DecoratedForest::unit(), &e),
            DecoratedSum::basis(e.clone())
        );
        assert_eq!(
            diamond_decorated(&d("oo", &["x"]), &d("oo", &["y"])),
            DecoratedSum::basis(d("ooo", &["x", "y"]))
        );
    }

    #[test]
    fn generators() {
        let alpha = Alphabet::new(["x", "y"]).unwrap();
        let jx = alpha.embed_generator("x").unwrap();
        let jy = alpha.embed_generator("y").unwrap();
        assert_eq!(jx, DecoratedSum::basis(d("oo", &["x"])));
        assert_ne!(jx, jy);
        assert_eq!(
            diamond_decorated_sum(&jx, &jy),
            DecoratedSum::basis(d("ooo", &["x", "y"]))
        );
        assert!(matches!(
            alpha.embed_generator("q"),
            Err(DecorationError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn operator_keeps_decorations() {
        let a = DecoratedSum::basis(d("oo", &["x"]));
        assert_eq!(
            rb_operator_decorated(&a),
            DecoratedSum::basis(d("[oo]", &["x"]))
        );
    }

    #[test]
    fn nonunitary_basis() {
        assert!(is_nonunitary_basis(&d("[oo]", &["x"])));
        assert!(!is_nonunitary_basis(&DecoratedForest::unit()));
        assert!(!is_nonunitary_basis(&d("[o]", &[])));
    }

    #[test]
    fn forgetting_is_multiplicative() {
        let a = d("[o]o", &["x"]);
        let b = d("[oo]", &["y"]);
        let lhs = forget_decorations(&diamond_decorated(&a, &b));
        let rhs: ForestSum = diamond_forests(a.forest(), b.forest());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn alphabet_rejects_reserved_names() {
        assert!(Alphabet::new(["o"]).is_err());
        assert!(Alphabet::new(["P"]).is_err());
        assert!(Alphabet::new(["L"]).is_err());
        assert!(Alphabet::new(["1"]).is_err());
        assert!(Alphabet::new(["x_1", "Lx"]).is_ok());
    }
}
