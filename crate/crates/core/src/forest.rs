//! Planar rooted trees and forests.
//!
//! A [`Tree`] is an ordered list of child trees; the tree with no children
//! is the one-vertex tree `•`. A [`Forest`] is a nonempty ordered list of
//! trees joined by concatenation `⊔`. Both are immutable and share subtrees
//! through reference counting, which never affects equality.
//!
//! The canonical text encoding writes `•` as `o` and a grafted tree `⌊F⌋`
//! as `[` followed by the encoding of `F` and `]`. Forests are ordered by
//! vertex count first and then lexicographically on that encoding with the
//! token order `[` < `]` < `o` (which is also ASCII order).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Encoding token for an opening bracket.
pub const TOKEN_OPEN: u8 = b'[';
/// Encoding token for a closing bracket.
pub const TOKEN_CLOSE: u8 = b']';
/// Encoding token for the one-vertex tree.
pub const TOKEN_LEAF: u8 = b'o';

#[derive(Debug)]
struct Node {
    children: Vec<Tree>,
    vertices: usize,
    leaves: usize,
    depth: usize,
    /// true iff some vertex in this tree has exactly one child and that child is `•`
    has_ladder_rung: bool,
}

/// A planar rooted tree.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

impl Tree {
    /// The one-vertex tree `•`.
    pub fn leaf() -> Tree {
        thread_local! {
            static LEAF: Tree = Tree::from_children(Vec::new());
        }
        LEAF.with(Tree::clone)
    }

    fn from_children(children: Vec<Tree>) -> Tree {
        let vertices = 1 + children.iter().map(Tree::vertex_count).sum::<usize>();
        let leaves = if children.is_empty() {
            1
        } else {
            children.iter().map(Tree::leaf_count).sum()
        };
        let depth = children.iter().map(|c| c.depth() + 1).max().unwrap_or(0);
        let has_ladder_rung = (children.len() == 1 && children[0].is_leaf())
            || children.iter().any(|c| c.0.has_ladder_rung);
        Tree(Arc::new(Node {
            children,
            vertices,
            leaves,
            depth,
            has_ladder_rung,
        }))
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertices
    }

    pub fn leaf_count(&self) -> usize {
        self.0.leaves
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// The root branches of `⌊F⌋`, i.e. `F`. Returns `None` for `•`.
    pub fn root_branches(&self) -> Option<Forest> {
        if self.is_leaf() {
            None
        } else {
            Some(Forest {
                trees: self.0.children.clone(),
            })
        }
    }

    /// Canonical encoding of this tree.
    pub fn encoding(&self) -> String {
        let mut out = String::with_capacity(2 * self.vertex_count());
        self.write_encoding(&mut out);
        out
    }

    fn write_encoding(&self, out: &mut String) {
        if self.is_leaf() {
            out.push(TOKEN_LEAF as char);
        } else {
            out.push(TOKEN_OPEN as char);
            for c in self.children() {
                c.write_encoding(out);
            }
            out.push(TOKEN_CLOSE as char);
        }
    }

    fn tokens(&self) -> Tokens<'_> {
        Tokens::new(std::slice::from_ref(self))
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vertices == other.0.vertices && self.0.children == other.0.children)
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.vertices.hash(state);
        self.0.children.hash(state);
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| self.tokens().cmp(other.tokens()))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

/// Lazy token stream over the canonical encoding of a sequence of trees.
struct Tokens<'a> {
    // each frame: remaining siblings, and whether a closing bracket is owed after them
    stack: Vec<(std::slice::Iter<'a, Tree>, bool)>,
}

impl<'a> Tokens<'a> {
    fn new(trees: &'a [Tree]) -> Self {
        Tokens {
            stack: vec![(trees.iter(), false)],
        }
    }
}

impl Iterator for Tokens<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        loop {
            let (iter, owes_close) = self.stack.last_mut()?;
            match iter.next() {
                Some(t) if t.is_leaf() => return Some(TOKEN_LEAF),
                Some(t) => {
                    self.stack.push((t.children().iter(), true));
                    return Some(TOKEN_OPEN);
                }
                None => {
                    let close = *owes_close;
                    self.stack.pop();
                    if close {
                        return Some(TOKEN_CLOSE);
                    }
                }
            }
        }
    }
}

/// A planar rooted forest: a nonempty sequence of trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    /// Builds a forest from its trees; `None` if `trees` is empty.
    pub fn new(trees: Vec<Tree>) -> Option<Forest> {
        if trees.is_empty() {
            None
        } else {
            Some(Forest { trees })
        }
    }

    /// The forest `•`, unit of the algebra product.
    pub fn unit() -> Forest {
        Forest::from(Tree::leaf())
    }

    /// `•⊔•⊔⋯⊔•` with `n ≥ 1` trees.
    pub fn bullets(n: usize) -> Forest {
        assert!(n >= 1, "a forest has at least one tree");
        Forest {
            trees: vec![Tree::leaf(); n],
        }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.len() == 1 && self.trees[0].is_leaf()
    }

    /// Returns the single tree if this forest has breadth one.
    pub fn as_tree(&self) -> Option<&Tree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn breadth(&self) -> usize {
        self.trees.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn depth(&self) -> usize {
        self.trees.iter().map(Tree::depth).max().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(Tree::vertex_count).sum()
    }

    /// Concatenation `self ⊔ other`.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest { trees }
    }

    /// Grafting `⌊self⌋`: a new root whose children are the trees of `self`.
    pub fn graft(&self) -> Tree {
        Tree::from_children(self.trees.clone())
    }

    /// Membership in the ladder-free set: not `•`, and no subtree equals `⌊•⌋`.
    pub fn is_ladder_free(&self) -> bool {
        !self.is_unit() && self.trees.iter().all(|t| !t.0.has_ladder_rung)
    }

    pub fn encoding(&self) -> String {
        let mut out = String::with_capacity(2 * self.vertex_count());
        for t in &self.trees {
            t.write_encoding(&mut out);
        }
        out
    }

    /// Parses a canonical encoding over `[`, `]`, `o`.
    pub fn from_encoding(s: &str) -> Option<Forest> {
        fn parse_seq(bytes: &[u8], pos: &mut usize) -> Vec<Tree> {
            let mut trees = Vec::new();
            while let Some(&b) = bytes.get(*pos) {
                match b {
                    TOKEN_LEAF => {
                        *pos += 1;
                        trees.push(Tree::leaf());
                    }
                    TOKEN_OPEN => {
                        let save = *pos;
                        *pos += 1;
                        let inner = parse_seq(bytes, pos);
                        if inner.is_empty() || bytes.get(*pos) != Some(&TOKEN_CLOSE) {
                            *pos = save;
                            break;
                        }
                        *pos += 1;
                        trees.push(Tree::from_children(inner));
                    }
                    _ => break,
                }
            }
            trees
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let trees = parse_seq(bytes, &mut pos);
        if pos != bytes.len() {
            return None;
        }
        Forest::new(trees)
    }

    pub(crate) fn tokens(&self) -> impl Iterator<Item = u8> + '_ {
        Tokens::new(&self.trees)
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Forest {
        Forest { trees: vec![t] }
    }
}

/// Grafting operator on a forest, `⌊f⌋`.
pub fn graft(f: &Forest) -> Tree {
    f.graft()
}

/// Total order used for normal forms: vertex count, then encoding.
pub fn canonical_compare(f: &Forest, g: &Forest) -> Ordering {
    f.vertex_count()
        .cmp(&g.vertex_count())
        .then_with(|| f.tokens().cmp(g.tokens()))
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_compare(self, other)
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

/// Filters for [`enumerate_forests`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    pub trees_only: bool,
    pub ladder_free_only: bool,
    /// Keep only forests of depth at most this value (the filtration level).
    pub max_depth: Option<usize>,
}

/// All distinct forests on exactly `vertices` vertices, in canonical order.
pub fn enumerate_forests(vertices: usize, opts: EnumerateOptions) -> Vec<Forest> {
    assert!(vertices >= 1, "vertex count must be positive");
    let mut out: Vec<Forest> = if opts.trees_only {
        trees_with(vertices).into_iter().map(Forest::from).collect()
    } else {
        forests_with(vertices)
    };
    out.retain(|f| {
        (!opts.ladder_free_only || f.is_ladder_free())
            && opts.max_depth.is_none_or(|d| f.depth() <= d)
    });
    out.sort();
    out
}

/// All forests with between 1 and `max_vertices` vertices, in canonical order.
pub fn enumerate_up_to(max_vertices: usize, opts: EnumerateOptions) -> Vec<Forest> {
    (1..=max_vertices)
        .flat_map(|n| enumerate_forests(n, opts))
        .collect()
}

fn trees_with(n: usize) -> Vec<Tree> {
    match n {
        0 => Vec::new(),
        1 => vec![Tree::leaf()],
        _ => forests_with(n - 1).iter().map(Forest::graft).collect(),
    }
}

fn forests_with(n: usize) -> Vec<Forest> {
    // first tree takes k vertices, the rest (possibly nothing) takes n - k
    let mut out = Vec::new();
    for k in 1..=n {
        let heads = trees_with(k);
        if k == n {
            out.extend(heads.into_iter().map(Forest::from));
            continue;
        }
        let tails = forests_with(n - k);
        for h in &heads {
            for t in &tails {
                let mut trees = Vec::with_capacity(1 + t.breadth());
                trees.push(h.clone());
                trees.extend_from_slice(t.trees());
                out.push(Forest { trees });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Forest {
        Forest::from_encoding(s).unwrap()
    }

    #[test]
    fn leaf_counts() {
        assert_eq!(f("o").leaf_count(), 1);
        assert_eq!(f("[oo]").leaf_count(), 2);
        assert_eq!(f("o[oo]").leaf_count(), 3);
    }

    #[test]
    fn depths() {
        assert_eq!(f("o").depth(), 0);
        assert_eq!(f("[[o]]").depth(), 2);
        assert_eq!(f("o[o]").depth(), 1);
    }

    #[test]
    fn concat_is_ordered() {
        assert_eq!(f("o").concat(&f("o")), f("oo"));
        assert_eq!(f("oo").concat(&f("[o]")), f("oo[o]"));
        assert_ne!(f("[o]").concat(&f("o")), f("o").concat(&f("[o]")));
    }

    #[test]
    fn graft_and_root_branches() {
        assert_eq!(Forest::from(f("o").graft()), f("[o]"));
        let t = f("oo").graft();
        assert_eq!(Forest::from(t.clone()), f("[oo]"));
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(t.root_branches(), Some(f("oo")));
        assert_eq!(Tree::leaf().root_branches(), None);
        assert_eq!(
            f("[[o]]").as_tree().unwrap().root_branches(),
            Some(f("[o]"))
        );
    }

    #[test]
    fn ladder_free_examples() {
        assert!(f("[oo]").is_ladder_free());
        assert!(!f("[o]").is_ladder_free());
        assert!(!f("o").is_ladder_free());
        assert!(f("oo").is_ladder_free());
        assert!(!f("[o[o]]").is_ladder_free());
        assert!(f("[[oo]]").is_ladder_free());
        assert!(f("[ooo]").is_ladder_free());
    }

    #[test]
    fn enumeration_small() {
        let trees = enumerate_forests(
            3,
            EnumerateOptions {
                trees_only: true,
                ..Default::default()
            },
        );
        let enc: Vec<_> = trees.iter().map(Forest::encoding).collect();
        assert_eq!(enc, vec!["[[o]]", "[oo]"]);
        assert_eq!(
            enumerate_forests(1, EnumerateOptions::default()),
            vec![f("o")]
        );
        let lf = enumerate_forests(
            3,
            EnumerateOptions {
                ladder_free_only: true,
                ..Default::default()
            },
        );
        let enc: Vec<_> = lf.iter().map(Forest::encoding).collect();
        assert_eq!(enc, vec!["[oo]", "ooo"]);
    }

    #[test]
    fn max_depth_filter() {
        let d0 = enumerate_forests(
            4,
            EnumerateOptions {
                max_depth: Some(0),
                ..Default::default()
            },
        );
        assert_eq!(d0, vec![f("oooo")]);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(canonical_compare(&f("o"), &f("[o]")), Ordering::Less);
        // "oo" vs "[o]": '[' sorts before 'o'
        assert_eq!(canonical_compare(&f("oo"), &f("[o]")), Ordering::Greater);
        assert_eq!(canonical_compare(&f("[oo]"), &f("[oo]")), Ordering::Equal);
    }

    #[test]
    fn encoding_rejects_garbage() {
        assert!(Forest::from_encoding("").is_none());
        assert!(Forest::from_encoding("[]").is_none());
        assert!(Forest::from_encoding("[o").is_none());
        assert!(Forest::from_encoding("o]").is_none());
        assert!(Forest::from_encoding("x").is_none());
    }
}
