use std::cmp::Ordering;

use proptest::prelude::*;
use rbforest::forest::{
    canonical_compare, enumerate_forests, enumerate_up_to, EnumerateOptions, Forest,
};

/// Whether `s` is a forest encoding: balanced, nonempty, and no `[]`.
fn is_encoding(s: &[u8]) -> bool {
    let mut depth = 0i32;
    for (i, &c) in s.iter().enumerate() {
        match c {
            b'[' => depth += 1,
            b']' => {
                if i == 0 || s[i - 1] == b'[' {
                    return false;
                }
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    !s.is_empty() && depth == 0
}

/// Every encoding with `n` vertices, by brute force over token strings:
/// `b` bracket pairs and `n - b` leaves give length `n + b`.
fn brute_force(n: usize, trees_only: bool) -> Vec<String> {
    let mut out = Vec::new();
    for b in 0..n {
        let len = n + b;
        let total = 3usize.pow(len as u32);
        for code in 0..total {
            let mut s = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                s.push(b"[]o"[c % 3]);
                c /= 3;
            }
            let opens = s.iter().filter(|&&t| t == b'[').count();
            if opens != b || !is_encoding(&s) {
                continue;
            }
            let is_tree =
                s == b"o" || (s[0] == b'[' && is_encoding(&s[1..len - 1]) && closes_at_end(&s));
            if trees_only && !is_tree {
                continue;
            }
            out.push(String::from_utf8(s).unwrap());
        }
    }
    out.sort();
    out
}

fn closes_at_end(s: &[u8]) -> bool {
    let mut depth = 0;
    for (i, &c) in s.iter().enumerate() {
        match c {
            b'[' => depth += 1,
            b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            return i == s.len() - 1;
        }
    }
    false
}

/// trees(n) = forests(n - 1); forests(n) = Σ_k trees(k) · forests(n - k),
/// with forests(0) read as 1.
fn recursive_counts(max: usize) -> (Vec<u64>, Vec<u64>) {
    let mut trees = vec![0u64; max + 1];
    let mut forests = vec![0u64; max + 1];
    forests[0] = 1;
    for n in 1..=max {
        trees[n] = if n == 1 { 1 } else { forests[n - 1] };
        forests[n] = (1..=n).map(|k| trees[k] * forests[n - k]).sum();
    }
    (trees, forests)
}

fn encodings(fs: &[Forest]) -> Vec<String> {
    fs.iter().map(Forest::encoding).collect()
}

#[test]
fn counts_match_catalan_and_recursion() {
    let (trees, forests) = recursive_counts(6);
    assert_eq!(&trees[1..], &[1, 1, 2, 5, 14, 42]);
    assert_eq!(&forests[1..], &[1, 2, 5, 14, 42, 132]);
    let trees_only = EnumerateOptions {
        trees_only: true,
        ..Default::default()
    };
    for n in 1..=6 {
        assert_eq!(
            enumerate_forests(n, trees_only).len() as u64,
            trees[n],
            "trees on {n}"
        );
        assert_eq!(
            enumerate_forests(n, EnumerateOptions::default()).len() as u64,
            forests[n],
            "forests on {n}"
        );
    }
}

#[test]
fn generation_matches_brute_force() {
    let trees_only = EnumerateOptions {
        trees_only: true,
        ..Default::default()
    };
    for n in 1..=6 {
        assert_eq!(
            encodings(&enumerate_forests(n, EnumerateOptions::default())),
            brute_force(n, false)
        );
        assert_eq!(
            encodings(&enumerate_forests(n, trees_only)),
            brute_force(n, true)
        );
    }
}

#[test]
fn spec_enumeration_examples() {
    let trees_only = EnumerateOptions {
        trees_only: true,
        ..Default::default()
    };
    assert_eq!(
        encodings(&enumerate_forests(3, trees_only)),
        ["[[o]]", "[oo]"]
    );
    assert_eq!(
        encodings(&enumerate_forests(1, EnumerateOptions::default())),
        ["o"]
    );
    let lf = EnumerateOptions {
        ladder_free_only: true,
        ..Default::default()
    };
    assert_eq!(encodings(&enumerate_forests(3, lf)), ["[oo]", "ooo"]);
    let shallow = EnumerateOptions {
        max_depth: Some(1),
        ..Default::default()
    };
    assert!(enumerate_forests(4, shallow).iter().all(|f| f.depth() <= 1));
    assert_eq!(enumerate_forests(4, shallow).len(), 8);
}

#[test]
fn ladder_free_matches_substring_scan() {
    for f in enumerate_up_to(6, EnumerateOptions::default()) {
        let e = f.encoding();
        assert_eq!(f.is_ladder_free(), e != "o" && !e.contains("[o]"), "{e}");
    }
}

#[test]
fn canonical_order_is_total() {
    let all = enumerate_up_to(4, EnumerateOptions::default());
    for a in &all {
        assert_eq!(canonical_compare(a, a), Ordering::Equal);
        for b in &all {
            let ab = canonical_compare(a, b);
            assert_eq!(ab, canonical_compare(b, a).reverse());
            assert_eq!(ab == Ordering::Equal, a == b);
            let expected = (a.vertex_count(), a.encoding()).cmp(&(b.vertex_count(), b.encoding()));
            assert_eq!(ab, expected, "{a} vs {b}");
            for c in &all {
                if ab != Ordering::Greater && canonical_compare(b, c) != Ordering::Greater {
                    assert_ne!(canonical_compare(a, c), Ordering::Greater);
                }
            }
        }
    }
    let f = |s: &str| Forest::from_encoding(s).unwrap();
    assert_eq!(canonical_compare(&f("o"), &f("[o]")), Ordering::Less);
    assert_eq!(canonical_compare(&f("oo"), &f("[o]")), Ordering::Greater);
}

fn tree_encoding() -> impl Strategy<Value = String> {
    Just("o".to_string()).prop_recursive(4, 24, 3, |inner| {
        prop::collection::vec(inner, 1..4).prop_map(|v| format!("[{}]", v.concat()))
    })
}

fn forest() -> impl Strategy<Value = Forest> {
    prop::collection::vec(tree_encoding(), 1..4)
        .prop_map(|v| Forest::from_encoding(&v.concat()).unwrap())
}

proptest! {
    #[test]
    fn concat_adds_statistics(f in forest(), g in forest()) {
        let h = f.concat(&g);
        prop_assert_eq!(h.leaf_count(), f.leaf_count() + g.leaf_count());
        prop_assert_eq!(h.breadth(), f.breadth() + g.breadth());
        prop_assert_eq!(h.vertex_count(), f.vertex_count() + g.vertex_count());
    }

    #[test]
    fn concat_is_associative(f in forest(), g in forest(), h in forest()) {
        prop_assert_eq!(f.concat(&g).concat(&h), f.concat(&g.concat(&h)));
    }

    #[test]
    fn graft_statistics(f in forest()) {
        let t = f.graft();
        prop_assert_eq!(t.depth(), f.depth() + 1);
        prop_assert_eq!(t.leaf_count(), f.leaf_count());
        prop_assert_eq!(t.root_branches(), Some(f.clone()));
    }

    #[test]
    fn root_branches_then_graft(f in forest()) {
        for t in f.trees() {
            match t.root_branches() {
                Some(inner) => prop_assert_eq!(&inner.graft(), t),
                None => prop_assert!(t.is_leaf()),
            }
        }
    }

    #[test]
    fn encoding_round_trips(f in forest()) {
        prop_assert_eq!(Forest::from_encoding(&f.encoding()), Some(f.clone()));
        prop_assert_eq!(f.leaf_count(), f.encoding().matches('o').count());
    }
}
