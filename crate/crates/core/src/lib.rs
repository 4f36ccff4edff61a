//! Free Rota–Baxter algebras of weight λ on planar rooted forests.
//!
//! Forests with the product `⋄` and the grafting operator form the free
//! unitary Rota–Baxter algebra on the empty set; decorating the angles of a
//! forest with letters of an alphabet gives the free algebra on that
//! alphabet. The weight λ stays symbolic (coefficients in ℤ[λ]) until a
//! concrete target fixes it.
//!
//! ```
//! use rbforest::text::{eval_str, Format};
//!
//! let v = eval_str("[oo]*[o]").unwrap();
//! assert_eq!(v.print(Format::Ascii), "[o[o]] + [[oo]] + L*[oo]");
//! ```

pub mod algebra;
pub mod coeff;
pub mod decorated;
pub mod forest;
pub mod linear;
pub mod morphism;
pub mod oracle;
pub mod text;
pub mod unitarization;

pub use algebra::{diamond, diamond_forests, rb_operator, ForestSum};
pub use coeff::{LambdaPoly, Rational};
pub use decorated::{
    diamond_decorated, diamond_decorated_sum, rb_operator_decorated, Alphabet, DecoratedForest,
    DecoratedSum, Symbol,
};
pub use forest::{enumerate_forests, EnumerateOptions, Forest, Tree};
pub use linear::LinComb;
pub use morphism::{extend, Assignment, TargetAlgebra};
pub use oracle::{check_law, Law, LawReport};
