use rbforest::oracle::{check_law, Law};

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn passes(law: Law, max: usize, alphabet: Option<&[String]>) -> (usize, usize) {
    let r = check_law(law, max, alphabet).unwrap();
    assert!(r.passed, "{}", r.to_text());
    (r.basis_size, r.tuples)
}

#[test]
fn forest_laws() {
    assert_eq!(passes(Law::Assoc, 4, None), (22, 10_648));
    assert_eq!(passes(Law::Rb, 4, None), (22, 484));
    assert_eq!(passes(Law::Unit, 6, None), (196, 196));
    assert_eq!(passes(Law::TwoAssoc, 4, None), (22, 10_648));
    assert_eq!(passes(Law::Leaf, 4, None), (22, 484));
    assert_eq!(passes(Law::LadderClosure, 5, None), (21, 441));
}

#[test]
fn decorated_laws() {
    assert_eq!(passes(Law::DecoratedAssoc, 3, Some(&xy())), (15, 3375));
    assert_eq!(passes(Law::DecoratedRb, 3, Some(&xy())), (15, 225));
    assert_eq!(passes(Law::LadderClosure, 4, Some(&xy())), (30, 900));
    assert_eq!(passes(Law::Morphism, 3, Some(&xy())), (15, 225));
}

#[test]
fn reports_are_deterministic() {
    let a = check_law(Law::DecoratedRb, 3, Some(&xy())).unwrap();
    let b = check_law(Law::DecoratedRb, 3, Some(&xy())).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_text(), b.to_text());
}
