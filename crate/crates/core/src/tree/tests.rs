use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gate::CliffordGate;

fn strs(m: &MajoranaMapping) -> Vec<String> {
    m.stripped().iter().map(|p| p.to_string()).collect()
}

fn random_tree(n: usize, seed: u64) -> TernaryTree {
    TernaryTree::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

#[test]
fn jordan_wigner_two_qubits() {
    let t = TernaryTree::jordan_wigner(2).unwrap();
    assert_eq!(strs(&t.compile()), ["XI", "YI", "ZX", "ZY", "ZZ"]);
    assert_eq!(t.right_spine(), [0, 1]);
}

#[test]
fn bravyi_kitaev_five_qubits() {
    let t = TernaryTree::bravyi_kitaev(5).unwrap();
    assert_eq!(t.root(), 3);
    assert_eq!(t.children(3)[0], Child::Node(1));
    assert_eq!(t.children(3)[1], Child::Leaf(7));
    assert_eq!(t.children(3)[2], Child::Node(4));
    assert_eq!(t.inorder_qubits(), [0, 1, 2, 3, 4]);
    assert_eq!(t.inorder_leaves(), (0..11).collect::<Vec<_>>());
    assert!(t.compile().is_valid());
}

#[test]
fn balanced_trees() {
    let t = TernaryTree::balanced(5).unwrap();
    assert_eq!(t.root(), 0);
    assert_eq!(
        t.children(0),
        &[Child::Node(1), Child::Node(2), Child::Node(3)]
    );
    assert_eq!(
        t.children(3),
        &[Child::Leaf(6), Child::Leaf(7), Child::Node(4)]
    );
    assert_eq!(t.inorder_leaves(), (0..11).collect::<Vec<_>>());

    let t2 = TernaryTree::balanced(2).unwrap();
    assert_eq!(t2.shape().to_string(), "(..(...))");
}

#[test]
fn single_operator_weights() {
    for n in 1..=8u64 {
        let t = TernaryTree::jordan_wigner(n as usize).unwrap();
        assert_eq!(t.single_op_avg_weight(), Ratio::new(n + 1, 2));
    }
    let expected = [(1, 1, 1), (2, 3, 2), (3, 11, 6), (4, 2, 1), (5, 11, 5)];
    for (n, num, den) in expected {
        let t = TernaryTree::balanced(n).unwrap();
        assert_eq!(t.single_op_avg_weight(), Ratio::new(num, den), "n = {n}");
    }
}

#[test]
fn compiled_trees_are_valid_mappings() {
    for n in 1..=12 {
        for t in [
            TernaryTree::jordan_wigner(n).unwrap(),
            TernaryTree::bravyi_kitaev(n).unwrap(),
            TernaryTree::balanced(n).unwrap(),
            random_tree(n, n as u64),
        ] {
            let m = t.compile();
            assert!(m.is_valid(), "{t:?}");
            assert!(m.is_tree_compatible());
            assert_eq!(TernaryTree::from_mapping(&m).unwrap(), t);
        }
    }
}

#[test]
fn rejects_malformed_trees() {
    let leafy = [Child::Leaf(0), Child::Leaf(1), Child::Leaf(2)];
    assert!(TernaryTree::new(0, vec![]).is_err());
    assert!(TernaryTree::new(0, vec![[Child::Leaf(0), Child::Leaf(0), Child::Leaf(1)]]).is_err());
    assert!(TernaryTree::new(1, vec![leafy]).is_err());
    // two disconnected parents
    let bad = vec![
        [Child::Leaf(0), Child::Leaf(1), Child::Leaf(2)],
        [Child::Leaf(3), Child::Leaf(4), Child::Node(1)],
    ];
    assert!(TernaryTree::new(0, bad).is_err());
}

#[test]
fn json_round_trip() {
    let t = TernaryTree::bravyi_kitaev(6).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    assert!(s.starts_with(r#"{"qubit":"#));
    let back: TernaryTree = serde_json::from_str(&s).unwrap();
    assert_eq!(back, t);

    let j1: TernaryTree =
        serde_json::from_str(r#"{"qubit":0,"children":[{"leaf":0},{"leaf":1},{"leaf":2}]}"#)
            .unwrap();
    assert_eq!(strs(&j1.compile()), ["X", "Y", "Z"]);
    assert!(serde_json::from_str::<TernaryTree>(r#"{"qubit":0,"children":[{"leaf":0}]}"#).is_err());
}

#[test]
fn rotations_require_the_right_child() {
    let t = TernaryTree::jordan_wigner(3).unwrap();
    assert!(matches!(t.rotate_left(1, 0), Err(Error::Precondition(_))));
    assert!(matches!(t.rotate_middle(1, 0), Err(Error::Precondition(_))));
}

fn child_pairs(t: &TernaryTree, slot: usize) -> Vec<(usize, usize)> {
    (0..t.n_qubits())
        .filter_map(|k| match t.children(k)[slot] {
            Child::Node(j) => Some((j, k)),
            Child::Leaf(_) => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotations_match_cnot_conjugation(n in 2usize..10, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        for (j, k) in child_pairs(&t, 0) {
            let r = t.rotate_left(j, k).unwrap();
            let via = t.compile().conjugate(&[CliffordGate::cnot(j, k)]).unwrap();
            prop_assert!(via.eq_up_to_phase(&r.compile()));
            prop_assert_eq!(r.inorder_qubits(), t.inorder_qubits());
            prop_assert_eq!(r.inorder_leaves(), t.inorder_leaves());
        }
        for (j, k) in child_pairs(&t, 1) {
            let r = t.rotate_middle(j, k).unwrap();
            let via = t.compile().conjugate(&[CliffordGate::cnot(j, k)]).unwrap();
            prop_assert!(via.eq_up_to_phase(&r.compile()));
        }
    }

    #[test]
    fn right_spine_transform(n in 1usize..14, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let (gates, spine) = to_right_spine(&t);
        prop_assert!(gates.len() < n);
        prop_assert_eq!(spine.shape(), TernaryTree::jordan_wigner(n).unwrap().shape());
        prop_assert!(t.compile().conjugate(&gates).unwrap().eq_up_to_phase(&spine.compile()));
    }

    #[test]
    fn shape_transform(n in 1usize..12, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (t1, t2) = (random_tree(n, s1), random_tree(n, s2));
        let gates = shape_transform_sequence(&t1, &t2).unwrap();
        prop_assert!(gates.len() <= 2 * n - 2);
        prop_assert!(gates.iter().all(CliffordGate::is_cnot));
        let out = t1.conjugate(&gates).unwrap();
        prop_assert_eq!(out.shape(), t2.shape());
    }

    #[test]
    fn full_transform(n in 1usize..10, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (t1, t2) = (random_tree(n, s1), random_tree(n, s2));
        let gates = full_transform_sequence(&t1, &t2).unwrap();
        let out = t1.compile().conjugate(&gates).unwrap();
        prop_assert!(out.eq_up_to_phase(&t2.compile()));
    }
}

#[test]
fn bk_to_jw_is_short_and_exact() {
    for n in 1..=32 {
        let gates = jw_bk_sequence(n).unwrap();
        assert!(gates.len() < n.max(2));
        let bk = TernaryTree::bravyi_kitaev(n).unwrap();
        let jw = TernaryTree::jordan_wigner(n).unwrap();
        assert_eq!(to_right_spine(&bk).1, jw);
        assert!(bk
            .compile()
            .conjugate(&gates)
            .unwrap()
            .eq_up_to_phase(&jw.compile()));
    }
}

#[test]
fn qubit_swap_costs_three_cnots() {
    let t = TernaryTree::balanced(4).unwrap();
    let swapped = t.relabel_qubits(&[0, 2, 1, 3]).unwrap();
    let gates = full_transform_sequence(&t, &swapped).unwrap();
    assert_eq!(gates.len(), 3);
    assert!(gates.iter().all(CliffordGate::is_cnot));
    assert!(t
        .compile()
        .conjugate(&gates)
        .unwrap()
        .eq_up_to_phase(&swapped.compile()));
}

#[test]
fn leaf_permutation_in_one_node_is_local() {
    let t = TernaryTree::jordan_wigner(3).unwrap();
    // swap the two leaves under qubit 1
    let mut perm: Vec<usize> = (0..7).collect();
    perm.swap(2, 3);
    let u = t.relabel_leaves(&perm).unwrap();
    let gates = full_transform_sequence(&t, &u).unwrap();
    assert!(!gates.is_empty());
    assert!(gates.iter().all(|g| !g.is_cnot() && g.qubits().eq([1])));
    assert!(t
        .compile()
        .conjugate(&gates)
        .unwrap()
        .eq_up_to_phase(&u.compile()));
}

#[test]
fn transforms_reject_size_mismatch() {
    let a = TernaryTree::jordan_wigner(2).unwrap();
    let b = TernaryTree::jordan_wigner(3).unwrap();
    assert!(full_transform_sequence(&a, &b).is_err());
    assert!(shape_transform_sequence(&a, &b).is_err());
}

/// Every ordered shape with `n` parents.
fn all_ordered_shapes(n: usize) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n - a {
            let c = n - 1 - a - b;
            for sa in all_ordered_shapes(a) {
                for sb in all_ordered_shapes(b) {
                    for sc in all_ordered_shapes(c) {
                        out.push(Shape::node(sa.clone(), sb.clone(), sc.clone()));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn shape_counts_match_brute_force() {
    let frozen = [1, 1, 2, 4, 8, 17];
    for n in 1..=6 {
        let brute: BTreeSet<Shape> = all_ordered_shapes(n).iter().map(Shape::canonical).collect();
        let shapes = enumerate_shapes(n).unwrap();
        assert_eq!(shapes.len(), brute.len(), "n = {n}");
        assert_eq!(shapes.len(), frozen[n - 1]);
        let got: BTreeSet<Shape> = shapes.iter().map(TernaryTree::shape).collect();
        assert_eq!(got, brute);
    }
    assert!(matches!(
        enumerate_shapes(7),
        Err(Error::BoundExceeded { n: 7, bound: 6 })
    ));
    assert_eq!(enumerate_shapes_bounded(7, 7).unwrap().len(), 39);
}

#[test]
fn mapping_enumeration_counts() {
    let all: Vec<_> = enumerate_mappings(1).unwrap().collect();
    assert_eq!(all.len(), 6);
    assert!(all.iter().all(MajoranaMapping::is_valid));
    let distinct: BTreeSet<Vec<String>> = all.iter().map(strs).collect();
    assert_eq!(distinct.len(), 6);

    assert_eq!(enumerate_mappings(2).unwrap().count(), 120);
    assert!(enumerate_mappings(5).is_err());
}
