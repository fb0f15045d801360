//! Ternary-tree mappings.
//!
//! A tree on `n` qubits has `n` parents, each with three ordered child slots,
//! and `2n + 1` leaves. Parents are identified by their qubit label and leaves
//! by their Majorana index (0-based: leaf `j` is `γ_{j+1}`), so relabeling a
//! tree means renaming ids. Walking from the root to a leaf through the
//! left, middle or right slot of qubit `k` contributes `X_k`, `Y_k` or `Z_k`
//! to that leaf's Pauli string.

mod enumerate;
mod shape;
mod transform;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::MajoranaMapping;
use crate::pauli::{Pauli, PauliString};

pub use enumerate::{
    enumerate_mappings, enumerate_mappings_bounded, enumerate_shapes, enumerate_shapes_bounded,
    MappingIter, DEFAULT_MAPPING_BOUND, DEFAULT_SHAPE_BOUND,
};
pub use shape::Shape;
pub use transform::{
    full_transform_sequence, jw_bk_sequence, shape_transform_sequence, to_right_spine,
};

const SLOT_PAULI: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Child {
    Node(usize),
    Leaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NodeJson", into = "NodeJson")]
pub struct TernaryTree {
    root: usize,
    children: Vec<[Child; 3]>,
}

impl TernaryTree {
    /// Builds a tree from per-qubit child slots, checking that it is a full
    /// ternary tree with a single root and bijective qubit and leaf labels.
    pub fn new(root: usize, children: Vec<[Child; 3]>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Err(Error::Structure("tree has no parents".into()));
        }
        if root >= n {
            return Err(Error::Structure(format!("root {root} out of range")));
        }
        let mut node_seen = vec![false; n];
        let mut leaf_seen = vec![false; 2 * n + 1];
        for (q, slots) in children.iter().enumerate() {
            for c in slots {
                match *c {
                    Child::Node(k) => {
                        if k >= n || k == root || node_seen[k] {
                            return Err(Error::Structure(format!(
                                "qubit {k} referenced illegally from qubit {q}"
                            )));
                        }
                        node_seen[k] = true;
                    }
                    Child::Leaf(j) => {
                        if j > 2 * n || leaf_seen[j] {
                            return Err(Error::Structure(format!(
                                "leaf {j} invalid or repeated under qubit {q}"
                            )));
                        }
                        leaf_seen[j] = true;
                    }
                }
            }
        }
        if leaf_seen.iter().any(|s| !s) {
            return Err(Error::Structure("leaf labels are not a bijection".into()));
        }
        let tree = TernaryTree { root, children };
        // every non-root node has exactly one parent; reachability rules out cycles
        let mut reached = 0;
        let mut stack = vec![root];
        while let Some(q) = stack.pop() {
            reached += 1;
            if reached > n {
                break;
            }
            for c in &tree.children[q] {
                if let Child::Node(k) = *c {
                    stack.push(k);
                }
            }
        }
        if reached != n {
            return Err(Error::Structure("tree is not connected".into()));
        }
        Ok(tree)
    }

    pub fn n_qubits(&self) -> usize {
        self.children.len()
    }

    pub fn n_leaves(&self) -> usize {
        2 * self.children.len() + 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, q: usize) -> &[Child; 3] {
        &self.children[q]
    }

    /// Parent qubit and slot index of `node`, or `None` for the root.
    pub fn parent_of(&self, node: Child) -> Option<(usize, usize)> {
        self.children
            .iter()
            .enumerate()
            .find_map(|(q, slots)| slots.iter().position(|&c| c == node).map(|s| (q, s)))
    }

    /// Jordan-Wigner tree: a spine of right children.
    pub fn jordan_wigner(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Jordan-Wigner tree needs n >= 1".into()));
        }
        let children = (0..n)
            .map(|q| {
                let right = if q + 1 < n {
                    Child::Node(q + 1)
                } else {
                    Child::Leaf(2 * n)
                };
                [Child::Leaf(2 * q), Child::Leaf(2 * q + 1), right]
            })
            .collect();
        TernaryTree::new(0, children)
    }

    /// Bravyi-Kitaev tree: the first `n` nodes in preorder of a perfect binary
    /// tree of height `floor(log2 n)`, labeled by inorder traversal.
    pub fn bravyi_kitaev(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Bravyi-Kitaev tree needs n >= 1".into()));
        }
        let height = usize::BITS - 1 - n.leading_zeros();
        // heap indices: node i has children 2i and 2i+1
        fn preorder(i: usize, depth: u32, height: u32, out: &mut Vec<usize>) {
            out.push(i);
            if depth < height {
                preorder(2 * i, depth + 1, height, out);
                preorder(2 * i + 1, depth + 1, height, out);
            }
        }
        let mut order = Vec::new();
        preorder(1, 0, height, &mut order);
        order.truncate(n);
        let present = |i: usize| order.contains(&i);
        fn build(i: usize, present: &dyn Fn(usize) -> bool) -> Shape {
            let left = if present(2 * i) {
                build(2 * i, present)
            } else {
                Shape::Leaf
            };
            let right = if present(2 * i + 1) {
                build(2 * i + 1, present)
            } else {
                Shape::Leaf
            };
            Shape::node(left, Shape::Leaf, right)
        }
        Ok(build(1, &present).label_inorder())
    }

    /// Balanced ternary tree: layers filled top to bottom, the bottom layer
    /// flushed right, qubits labeled breadth-first and leaves left to right.
    pub fn balanced(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("balanced tree needs n >= 1".into()));
        }
        // arena of parents, children as Option<arena index>
        let mut arena: Vec<[Option<usize>; 3]> = vec![[None; 3]];
        let mut layer = vec![0usize];
        let mut remaining = n - 1;
        while remaining > 0 {
            let cap = 3 * layer.len();
            let take = remaining.min(cap);
            let mut next = Vec::with_capacity(take);
            for pos in cap - take..cap {
                let id = arena.len();
                arena.push([None; 3]);
                arena[layer[pos / 3]][pos % 3] = Some(id);
                next.push(id);
            }
            remaining -= take;
            layer = next;
        }
        fn to_shape(id: usize, arena: &[[Option<usize>; 3]]) -> Shape {
            let c = |s: usize| arena[id][s].map_or(Shape::Leaf, |k| to_shape(k, arena));
            Shape::node(c(0), c(1), c(2))
        }
        Ok(to_shape(0, &arena).label_bfs())
    }

    /// Uniformly grown random tree: each new parent replaces a random leaf
    /// slot, then qubit and leaf labels are shuffled.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("random tree needs n >= 1".into()));
        }
        let mut children = vec![[Child::Leaf(0); 3]];
        let mut open: Vec<(usize, usize)> = (0..3).map(|s| (0, s)).collect();
        for q in 1..n {
            let (p, s) = open.swap_remove(rng.gen_range(0..open.len()));
            children[p][s] = Child::Node(q);
            children.push([Child::Leaf(0); 3]);
            open.extend((0..3).map(|s| (q, s)));
        }
        for (leaf, (p, s)) in open.into_iter().enumerate() {
            children[p][s] = Child::Leaf(leaf);
        }
        let mut qperm: Vec<usize> = (0..n).collect();
        qperm.shuffle(rng);
        let mut lperm: Vec<usize> = (0..2 * n + 1).collect();
        lperm.shuffle(rng);
        TernaryTree::new(0, children)?
            .relabel_qubits(&qperm)?
            .relabel_leaves(&lperm)
    }

    /// Majorana strings read off root-to-leaf paths.
    pub fn compile(&self) -> MajoranaMapping {
        let n = self.n_qubits();
        let mut out = vec![PauliString::identity(n); 2 * n + 1];
        let mut stack = vec![(self.root, PauliString::identity(n))];
        while let Some((q, path)) = stack.pop() {
            for (slot, c) in self.children[q].iter().enumerate() {
                let mut p = path.clone();
                p.set(q, SLOT_PAULI[slot]).expect("qubit in range");
                match *c {
                    Child::Node(k) => stack.push((k, p)),
                    Child::Leaf(j) => out[j] = p,
                }
            }
        }
        MajoranaMapping::new(n, out).expect("tree strings are distinct")
    }

    /// Depth of every leaf, indexed by leaf label.
    pub fn leaf_depths(&self) -> Vec<usize> {
        let mut depths = vec![0; self.n_leaves()];
        let mut stack = vec![(self.root, 1usize)];
        while let Some((q, d)) = stack.pop() {
            for c in &self.children[q] {
                match *c {
                    Child::Node(k) => stack.push((k, d + 1)),
                    Child::Leaf(j) => depths[j] = d,
                }
            }
        }
        depths
    }

    /// Mean weight of `γ_1 … γ_{2n}`, i.e. the average single-operator weight;
    /// the redundant last Majorana is excluded.
    pub fn single_op_avg_weight(&self) -> Ratio<u64> {
        let d = self.leaf_depths();
        let n2 = 2 * self.n_qubits();
        let total: usize = d[..n2].iter().sum();
        Ratio::new(total as u64, n2 as u64)
    }

    /// Qubits in inorder (left subtree, node, middle subtree, right subtree).
    pub fn inorder_qubits(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n_qubits());
        self.inorder(self.root, &mut |c| {
            if let Child::Node(k) = c {
                out.push(k)
            }
        });
        out
    }

    /// Leaves from left to right.
    pub fn inorder_leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n_leaves());
        self.inorder(self.root, &mut |c| {
            if let Child::Leaf(j) = c {
                out.push(j)
            }
        });
        out
    }

    fn inorder(&self, q: usize, visit: &mut dyn FnMut(Child)) {
        let [l, m, r] = self.children[q];
        self.visit_child(l, visit);
        visit(Child::Node(q));
        self.visit_child(m, visit);
        self.visit_child(r, visit);
    }

    fn visit_child(&self, c: Child, visit: &mut dyn FnMut(Child)) {
        match c {
            Child::Node(k) => self.inorder(k, visit),
            leaf => visit(leaf),
        }
    }

    /// Qubits from the root down the chain of right children.
    pub fn right_spine(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        let mut q = self.root;
        while let Child::Node(k) = self.children[q][2] {
            out.push(k);
            q = k;
        }
        out
    }

    /// Ordered shape with labels dropped.
    pub fn shape(&self) -> Shape {
        fn go(t: &TernaryTree, q: usize) -> Shape {
            let c = |s: usize| match t.children[q][s] {
                Child::Node(k) => go(t, k),
                Child::Leaf(_) => Shape::Leaf,
            };
            Shape::node(c(0), c(1), c(2))
        }
        go(self, self.root)
    }

    /// Renames qubits: qubit `q` becomes `perm[q]`.
    pub fn relabel_qubits(&self, perm: &[usize]) -> Result<TernaryTree> {
        let n = self.n_qubits();
        if perm.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: perm.len(),
            });
        }
        let mut children = vec![[Child::Leaf(0); 3]; n];
        for (q, slots) in self.children.iter().enumerate() {
            children[perm[q]] = slots.map(|c| match c {
                Child::Node(k) => Child::Node(perm[k]),
                leaf => leaf,
            });
        }
        TernaryTree::new(perm[self.root], children)
    }

    /// Renames leaves: leaf `j` becomes `perm[j]`.
    pub fn relabel_leaves(&self, perm: &[usize]) -> Result<TernaryTree> {
        if perm.len() != self.n_leaves() {
            return Err(Error::Dimension {
                expected: self.n_leaves(),
                found: perm.len(),
            });
        }
        let children = self
            .children
            .iter()
            .map(|slots| {
                slots.map(|c| match c {
                    Child::Leaf(j) => Child::Leaf(perm[j]),
                    node => node,
                })
            })
            .collect();
        TernaryTree::new(self.root, children)
    }

    /// Recovers the tree whose compiled strings equal `m` up to sign, if any.
    pub fn from_mapping(m: &MajoranaMapping) -> Result<TernaryTree> {
        let n = m.n_qubits();
        if !m.includes_redundant() {
            return Err(Error::InvalidMapping(
                "tree reconstruction needs all 2n+1 strings".into(),
            ));
        }
        let ps = m.paulis();
        let mut children = vec![[Child::Leaf(0); 3]; n];
        let mut used = vec![false; n];

        fn build(
            group: Vec<usize>,
            ps: &[PauliString],
            used: &mut [bool],
            children: &mut [[Child; 3]],
        ) -> Result<Child> {
            if group.len() == 1 {
                return Ok(Child::Leaf(group[0]));
            }
            let n = used.len();
            let q = (0..n)
                .find(|&q| !used[q] && group.iter().all(|&j| ps[j].get(q) != Pauli::I))
                .ok_or_else(|| Error::InvalidMapping("strings do not form a tree".into()))?;
            used[q] = true;
            let mut parts: [Vec<usize>; 3] = Default::default();
            for &j in &group {
                let slot = match ps[j].get(q) {
                    Pauli::X => 0,
                    Pauli::Y => 1,
                    _ => 2,
                };
                parts[slot].push(j);
            }
            let mut slots = [Child::Leaf(0); 3];
            for (s, part) in parts.into_iter().enumerate() {
                if part.is_empty() {
                    return Err(Error::InvalidMapping(format!(
                        "qubit {q} has an empty child slot"
                    )));
                }
                slots[s] = build(part, ps, used, children)?;
            }
            children[q] = slots;
            Ok(Child::Node(q))
        }

        let root = match build((0..ps.len()).collect(), ps, &mut used, &mut children)? {
            Child::Node(q) => q,
            Child::Leaf(_) => unreachable!("group has more than one string"),
        };
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidMapping("not every qubit is a parent".into()));
        }
        let tree = TernaryTree::new(root, children)?;
        if tree.compile().stripped() != m.stripped() {
            return Err(Error::InvalidMapping("strings do not form a tree".into()));
        }
        Ok(tree)
    }

    /// Conjugates the compiled mapping and reads the result back as a tree.
    pub fn conjugate(&self, gates: &[crate::gate::CliffordGate]) -> Result<TernaryTree> {
        TernaryTree::from_mapping(&self.compile().conjugate(gates)?)
    }

    /// Rotation induced by `CNOT_{jk}` when `j` is the left child of `k`:
    /// `k[j[A, B, C], D, E]` becomes `j[A, B, k[C, D, E]]`.
    pub fn rotate_left(&self, j: usize, k: usize) -> Result<TernaryTree> {
        self.check_child(j, k, 0, "left")?;
        let [a, b, c] = self.children[j];
        let [_, d, e] = self.children[k];
        let mut t = self.clone();
        t.replace_in_parent(k, j);
        t.children[j] = [a, b, Child::Node(k)];
        t.children[k] = [c, d, e];
        if t.root == k {
            t.root = j;
        }
        Ok(t)
    }

    /// Rotation induced by `CNOT_{jk}` when `j` is the middle child of `k`:
    /// `k[A, j[B, C, D], E]` becomes `k[A, D, j[C, B, E]]`.
    pub fn rotate_middle(&self, j: usize, k: usize) -> Result<TernaryTree> {
        self.check_child(j, k, 1, "middle")?;
        let [b, c, d] = self.children[j];
        let [a, _, e] = self.children[k];
        let mut t = self.clone();
        t.children[k] = [a, d, Child::Node(j)];
        t.children[j] = [c, b, e];
        Ok(t)
    }

    fn check_child(&self, j: usize, k: usize, slot: usize, name: &str) -> Result<()> {
        let n = self.n_qubits();
        if j >= n || k >= n || self.children[k][slot] != Child::Node(j) {
            return Err(Error::Precondition(format!(
                "qubit {j} is not the {name} child of qubit {k}"
            )));
        }
        Ok(())
    }

    fn replace_in_parent(&mut self, old: usize, new: usize) {
        if let Some((p, s)) = self.parent_of(Child::Node(old)) {
            self.children[p][s] = Child::Node(new);
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeJson {
    Parent {
        qubit: usize,
        children: Vec<NodeJson>,
    },
    Leaf {
        leaf: usize,
    },
}

impl From<TernaryTree> for NodeJson {
    fn from(t: TernaryTree) -> Self {
        fn go(t: &TernaryTree, q: usize) -> NodeJson {
            NodeJson::Parent {
                qubit: q,
                children: t.children[q]
                    .iter()
                    .map(|c| match *c {
                        Child::Node(k) => go(t, k),
                        Child::Leaf(j) => NodeJson::Leaf { leaf: j },
                    })
                    .collect(),
            }
        }
        go(&t, t.root)
    }
}

impl TryFrom<NodeJson> for TernaryTree {
    type Error = Error;

    fn try_from(j: NodeJson) -> Result<Self> {
        let mut slots: Vec<(usize, [Child; 3])> = Vec::new();
        fn go(j: &NodeJson, out: &mut Vec<(usize, [Child; 3])>) -> Result<Child> {
            match j {
                NodeJson::Leaf { leaf } => Ok(Child::Leaf(*leaf)),
                NodeJson::Parent { qubit, children } => {
                    if children.len() != 3 {
                        return Err(Error::Structure(format!(
                            "qubit {qubit} has {} children, expected 3",
                            children.len()
                        )));
                    }
                    let mut c = [Child::Leaf(0); 3];
                    for (s, ch) in children.iter().enumerate() {
                        c[s] = go(ch, out)?;
                    }
                    out.push((*qubit, c));
                    Ok(Child::Node(*qubit))
                }
            }
        }
        let root = match go(&j, &mut slots)? {
            Child::Node(q) => q,
            Child::Leaf(_) => return Err(Error::Structure("root must be a parent".into())),
        };
        let n = slots.len();
        let mut children = vec![None; n];
        for (q, c) in slots {
            if q >= n || children[q].is_some() {
                return Err(Error::Structure(format!(
                    "qubit label {q} invalid or repeated"
                )));
            }
            children[q] = Some(c);
        }
        TernaryTree::new(root, children.into_iter().map(Option::unwrap).collect())
    }
}

#[cfg(test)]
mod tests;
