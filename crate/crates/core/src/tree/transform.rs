//! CNOT tree rotations and Clifford circuits between ternary-tree mappings.

use std::collections::VecDeque;

use super::{Child, TernaryTree};
use crate::error::{Error, Result};
use crate::gate::{invert_sequence, CliffordGate};
use crate::pauli::{Pauli, PauliString};

/// Rotates every parent onto the right spine.
///
/// Walking down the spine, a parent in the left slot of spine node `k` is
/// lifted with `CNOT_{jk}` (a left rotation) and a parent in the middle slot
/// with `CNOT_{jk}` (a middle rotation). Each gate adds one node to the spine,
/// so at most `n - 1` gates are emitted.
pub fn to_right_spine(t: &TernaryTree) -> (Vec<CliffordGate>, TernaryTree) {
    let mut gates = Vec::new();
    let mut cur = t.clone();
    let mut k = cur.root();
    loop {
        let [l, m, r] = *cur.children(k);
        if let Child::Node(j) = l {
            cur = cur.rotate_left(j, k).expect("j is the left child of k");
            gates.push(CliffordGate::cnot(j, k));
            // j now occupies k's spine position
            k = j;
        } else if let Child::Node(j) = m {
            cur = cur.rotate_middle(j, k).expect("j is the middle child of k");
            gates.push(CliffordGate::cnot(j, k));
        } else if let Child::Node(j) = r {
            k = j;
        } else {
            break;
        }
    }
    (gates, cur)
}

/// CNOT circuit taking the Bravyi-Kitaev mapping on `n` qubits to the
/// Jordan-Wigner mapping, leaf by leaf; shorter than `n`.
pub fn jw_bk_sequence(n: usize) -> Result<Vec<CliffordGate>> {
    let bk = TernaryTree::bravyi_kitaev(n)?;
    let (gates, spine) = to_right_spine(&bk);
    debug_assert_eq!(spine, TernaryTree::jordan_wigner(n)?);
    Ok(gates)
}

fn same_size(t1: &TernaryTree, t2: &TernaryTree) -> Result<()> {
    if t1.n_qubits() != t2.n_qubits() {
        return Err(Error::Dimension {
            expected: t1.n_qubits(),
            found: t2.n_qubits(),
        });
    }
    Ok(())
}

/// CNOT circuit of length at most `2n - 2` that turns the mapping of `t1`
/// into a tree mapping with the ordered shape of `t2` (labels unconstrained).
pub fn shape_transform_sequence(t1: &TernaryTree, t2: &TernaryTree) -> Result<Vec<CliffordGate>> {
    same_size(t1, t2)?;
    if t1.shape() == t2.shape() {
        return Ok(Vec::new());
    }
    let (mut gates, s1) = to_right_spine(t1);
    let (g2, s2) = to_right_spine(t2);
    // replay t2's rotations backwards on s1's qubits, matched by spine position
    let mut qubit_of = vec![0; t1.n_qubits()];
    for (a, b) in s2.right_spine().into_iter().zip(s1.right_spine()) {
        qubit_of[a] = b;
    }
    gates.extend(invert_sequence(&g2).into_iter().map(|g| match g {
        CliffordGate::Cnot { control, target } => {
            CliffordGate::cnot(qubit_of[control], qubit_of[target])
        }
        other => other,
    }));
    Ok(gates)
}

/// Clifford circuit over `{CNOT, H, S, SDG}` whose conjugation maps the
/// strings of `t1` onto those of `t2` index by index, up to the sign of each
/// string.
///
/// Trees that already share an ordered shape are aligned in place: qubit
/// labels by SWAPs (three CNOTs each), then leaves within a node by a single
/// qubit Clifford. Otherwise both trees are rotated onto the right spine, the
/// spines are aligned and their leaves permuted, and `t2`'s rotations are
/// undone.
pub fn full_transform_sequence(t1: &TernaryTree, t2: &TernaryTree) -> Result<Vec<CliffordGate>> {
    same_size(t1, t2)?;
    let mut gates = Vec::new();
    let mut cur = t1.clone();

    if cur.shape() == t2.shape() {
        cur = align_qubits(
            &cur,
            &preorder_qubits(&cur),
            &preorder_qubits(t2),
            &mut gates,
        )?;
        if let Some(fix) = local_leaf_fix(&cur, t2) {
            gates.extend(fix);
            return Ok(gates);
        }
    }

    let (g1, s1) = to_right_spine(&cur);
    gates.extend(g1);
    let (g2, s2) = to_right_spine(t2);
    let s1 = align_qubits(&s1, &s1.right_spine(), &s2.right_spine(), &mut gates)?;
    permute_spine_leaves(&s1, &s2, &mut gates);
    gates.extend(invert_sequence(&g2));
    Ok(gates)
}

fn preorder_qubits(t: &TernaryTree) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![t.root()];
    while let Some(q) = stack.pop() {
        out.push(q);
        for c in t.children(q).iter().rev() {
            if let Child::Node(k) = *c {
                stack.push(k);
            }
        }
    }
    out
}

fn swap_gates(a: usize, b: usize) -> [CliffordGate; 3] {
    [
        CliffordGate::cnot(a, b),
        CliffordGate::cnot(b, a),
        CliffordGate::cnot(a, b),
    ]
}

/// Relabels qubits with SWAPs so that position `i` of `have` carries label `want[i]`.
fn align_qubits(
    t: &TernaryTree,
    have: &[usize],
    want: &[usize],
    gates: &mut Vec<CliffordGate>,
) -> Result<TernaryTree> {
    let n = t.n_qubits();
    let mut cur = have.to_vec();
    // label -> new label, accumulated
    let mut perm: Vec<usize> = (0..n).collect();
    for i in 0..cur.len() {
        let (a, b) = (cur[i], want[i]);
        if a == b {
            continue;
        }
        gates.extend(swap_gates(a, b));
        for x in cur.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
        for x in perm.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }
    t.relabel_qubits(&perm)
}

/// Gates on qubit `q` sending the Pauli of slot `s` to that of slot `perm[s]`.
fn single_qubit_permutation(q: usize, perm: [usize; 3]) -> Vec<CliffordGate> {
    const SLOT: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
    let candidates: [&[CliffordGate]; 6] = [
        &[],
        &[CliffordGate::H(0)],
        &[CliffordGate::S(0)],
        &[CliffordGate::H(0), CliffordGate::S(0)],
        &[CliffordGate::S(0), CliffordGate::H(0)],
        &[CliffordGate::H(0), CliffordGate::S(0), CliffordGate::H(0)],
    ];
    for seq in candidates {
        let ok = (0..3).all(|s| {
            let p = PauliString::from_paulis(&[SLOT[s]]);
            p.conjugate_sequence(seq).map(|r| r.get(0)).ok() == Some(SLOT[perm[s]])
        });
        if ok {
            return seq
                .iter()
                .map(|g| match g {
                    CliffordGate::H(_) => CliffordGate::H(q),
                    _ => CliffordGate::S(q),
                })
                .collect();
        }
    }
    unreachable!("H and S generate every permutation of X, Y, Z")
}

/// Single-qubit fixes when each node holds the right leaves in the wrong slots.
fn local_leaf_fix(cur: &TernaryTree, target: &TernaryTree) -> Option<Vec<CliffordGate>> {
    let mut gates = Vec::new();
    for q in 0..cur.n_qubits() {
        let (a, b) = (cur.children(q), target.children(q));
        if a == b {
            continue;
        }
        let mut perm = [0usize; 3];
        for s in 0..3 {
            perm[s] = b.iter().position(|c| *c == a[s])?;
            if matches!(a[s], Child::Node(_)) && perm[s] != s {
                return None;
            }
        }
        gates.extend(single_qubit_permutation(q, perm));
    }
    Some(gates)
}

/// Permutes the leaves of right-spine tree `cur` into those of `target`
/// (same spine order). Uses `S` to swap the left and middle leaf of a node,
/// `CNOT H CNOT` to swap the left leaves of consecutive spine nodes, and
/// single-qubit gates on the last node.
fn permute_spine_leaves(cur: &TernaryTree, target: &TernaryTree, gates: &mut Vec<CliffordGate>) {
    let spine = cur.right_spine();
    let n = spine.len();
    // slot index: 2p + s for s in {0, 1}; the last node's right slot is 2n
    let n_slots = 2 * n + 1;
    let slot_child = |t: &TernaryTree, i: usize| -> usize {
        let (p, s) = if i == 2 * n {
            (n - 1, 2)
        } else {
            (i / 2, i % 2)
        };
        match t.children(spine[p])[s] {
            Child::Leaf(j) => j,
            Child::Node(_) => unreachable!("spine leaf slots hold leaves"),
        }
    };
    let mut content: Vec<usize> = (0..n_slots).map(|i| slot_child(cur, i)).collect();
    let goal: Vec<usize> = (0..n_slots).map(|i| slot_child(target, i)).collect();

    let mut edges: Vec<(usize, usize, Vec<CliffordGate>)> = Vec::new();
    for p in 0..n {
        let q = spine[p];
        edges.push((2 * p, 2 * p + 1, vec![CliffordGate::S(q)]));
        if p + 1 < n {
            let k = spine[p + 1];
            edges.push((
                2 * p,
                2 * p + 2,
                vec![
                    CliffordGate::cnot(q, k),
                    CliffordGate::H(q),
                    CliffordGate::cnot(q, k),
                ],
            ));
        }
    }
    let last = spine[n - 1];
    edges.push((2 * (n - 1), 2 * n, vec![CliffordGate::H(last)]));
    edges.push((
        2 * (n - 1) + 1,
        2 * n,
        vec![
            CliffordGate::H(last),
            CliffordGate::S(last),
            CliffordGate::H(last),
        ],
    ));

    let mut order: Vec<usize> = Vec::with_capacity(n_slots);
    for p in 0..n - 1 {
        order.push(2 * p + 1);
        order.push(2 * p);
    }
    order.extend([2 * (n - 1) + 1, 2 * n, 2 * (n - 1)]);

    let mut alive = vec![true; n_slots];
    for &slot in &order {
        let from = content
            .iter()
            .position(|&c| c == goal[slot])
            .expect("same leaf set");
        // breadth-first path from `from` to `slot` through live slots
        let mut prev = vec![usize::MAX; n_slots];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == slot {
                break;
            }
            for (a, b, _) in &edges {
                let v = if *a == u {
                    *b
                } else if *b == u {
                    *a
                } else {
                    continue;
                };
                if alive[v] && prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![slot];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let (_, _, g) = edges
                .iter()
                .find(|(a, b, _)| (*a, *b) == (u, v) || (*a, *b) == (v, u))
                .expect("adjacent slots");
            gates.extend(g.iter().copied());
            content.swap(u, v);
        }
        alive[slot] = false;
    }
}
