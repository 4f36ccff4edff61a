//! The Rota–Baxter algebra of planar rooted forests.
//!
//! Elements are finite ℤ[λ]-combinations of forests. The product `⋄` is
//! defined by recursion on depth:
//!
//! * `•^{⊔m} ⋄ •^{⊔n} = •^{⊔(m+n-1)}`;
//! * on trees, `•` is a two-sided unit and
//!   `⌊F⌋ ⋄ ⌊F'⌋ = ⌊⌊F⌋ ⋄ F'⌋ + ⌊F ⋄ ⌊F'⌋⌋ + λ⌊F ⋄ F'⌋`;
//! * on forests, the last tree of the left factor is multiplied with the
//!   first tree of the right factor and the remaining trees are concatenated
//!   around the result.
//!
//! Grafting `F ↦ ⌊F⌋` is the Rota–Baxter operator of weight λ.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use crate::coeff::LambdaPoly;
use crate::forest::{Forest, Tree};
use crate::linear::LinComb;

/// An element of the forest algebra.
pub type ForestSum = LinComb<Forest, LambdaPoly>;

type TreeSum = LinComb<Tree, LambdaPoly>;

const MEMO_LIMIT: usize = 1 << 18;

thread_local! {
    // Per-thread so that no lock is needed; results are pure functions of the key.
    static TREE_MEMO: RefCell<HashMap<(Tree, Tree), Arc<TreeSum>>> = RefCell::new(HashMap::new());
}

/// The unit `1 = •`.
pub fn unit() -> ForestSum {
    ForestSum::basis(Forest::unit())
}

/// `1·f`.
pub fn basis(f: Forest) -> ForestSum {
    ForestSum::basis(f)
}

/// Product of two basis forests.
pub fn diamond_forests(f: &Forest, g: &Forest) -> ForestSum {
    if f.depth() == 0 && g.depth() == 0 {
        return ForestSum::basis(Forest::bullets(f.breadth() + g.breadth() - 1));
    }
    let (last, init) = f.trees().split_last().expect("forests are nonempty");
    let (first, tail) = g.trees().split_first().expect("forests are nonempty");
    let middle = diamond_trees(last, first);
    let mut out = ForestSum::zero();
    for (t, c) in middle.iter() {
        let mut trees = Vec::with_capacity(init.len() + 1 + tail.len());
        trees.extend_from_slice(init);
        trees.push(t.clone());
        trees.extend_from_slice(tail);
        out.add_term(Forest::new(trees).unwrap(), c.clone());
    }
    out
}

/// Product of two trees; always a combination of trees.
fn diamond_trees(t: &Tree, u: &Tree) -> Arc<TreeSum> {
    if t.is_leaf() {
        return Arc::new(TreeSum::basis(u.clone()));
    }
    if u.is_leaf() {
        return Arc::new(TreeSum::basis(t.clone()));
    }
    let key = (t.clone(), u.clone());
    if let Some(hit) = TREE_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }

    let inner_t = t.root_branches().unwrap();
    let inner_u = u.root_branches().unwrap();
    let mut out = TreeSum::zero();
    add_grafted(
        &mut out,
        &diamond_forests(&Forest::from(t.clone()), &inner_u),
        None,
    );
    add_grafted(
        &mut out,
        &diamond_forests(&inner_t, &Forest::from(u.clone())),
        None,
    );
    add_grafted(
        &mut out,
        &diamond_forests(&inner_t, &inner_u),
        Some(&LambdaPoly::lambda()),
    );

    let out = Arc::new(out);
    TREE_MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_LIMIT {
            m.clear();
        }
        m.insert(key, Arc::clone(&out));
    });
    out
}

fn add_grafted(acc: &mut TreeSum, sum: &ForestSum, scale: Option<&LambdaPoly>) {
    for (f, c) in sum.iter() {
        let c = match scale {
            Some(s) => s * c,
            None => c.clone(),
        };
        acc.add_term(f.graft(), c);
    }
}

/// Drops the calling thread's product cache.
pub fn clear_memo() {
    TREE_MEMO.with(|m| m.borrow_mut().clear());
}

/// Bilinear product `a ⋄ b`.
pub fn diamond(a: &ForestSum, b: &ForestSum) -> ForestSum {
    a.bilinear(b, diamond_forests)
}

/// The Rota–Baxter operator: grafts every basis forest.
pub fn rb_operator(a: &ForestSum) -> ForestSum {
    a.map_basis(|f| Forest::from(f.graft()))
}

/// Bilinear concatenation `a ⊔ b`.
pub fn concat_sum(a: &ForestSum, b: &ForestSum) -> ForestSum {
    a.bilinear(b, |f, g| ForestSum::basis(f.concat(g)))
}

/// The part of `a` supported on ladder-free forests, and whether that part
/// is all of `a`.
pub fn restrict_ladder_free(a: &ForestSum) -> (ForestSum, bool) {
    let kept: ForestSum = a
        .iter()
        .filter(|(f, _)| f.is_ladder_free())
        .map(|(f, c)| (f.clone(), c.clone()))
        .collect();
    let complete = kept.len() == a.len();
    (kept, complete)
}
