use std::collections::VecDeque;
use std::fmt;

use super::{Child, TernaryTree};

/// Unlabeled full ternary tree.
///
/// The derived ordering puts `Leaf` before any `Node` and compares nodes by
/// their children lexicographically; [`Shape::canonical`] builds on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf,
    Node(Box<[Shape; 3]>),
}

impl Shape {
    pub fn node(left: Shape, middle: Shape, right: Shape) -> Shape {
        Shape::Node(Box::new([left, middle, right]))
    }

    /// Number of parents.
    pub fn size(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(c) => 1 + c.iter().map(Shape::size).sum::<usize>(),
        }
    }

    /// Representative of the class of shapes equal up to reordering each
    /// parent's children: leaves first, then subtrees by size, ties broken by
    /// the derived order. Subtrees therefore sit flushed right.
    pub fn canonical(&self) -> Shape {
        match self {
            Shape::Leaf => Shape::Leaf,
            Shape::Node(c) => {
                let mut kids: Vec<Shape> = c.iter().map(Shape::canonical).collect();
                kids.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
                let [l, m, r]: [Shape; 3] = kids.try_into().expect("three children");
                Shape::node(l, m, r)
            }
        }
    }

    pub(crate) fn canonical_key(&self) -> (bool, usize, &Shape) {
        (matches!(self, Shape::Node(_)), self.size(), self)
    }

    /// Labels parents by inorder traversal (left, node, middle, right) and
    /// leaves left to right.
    pub fn label_inorder(&self) -> TernaryTree {
        let mut labeler = Labeler::default();
        let root = labeler.inorder(self);
        labeler.finish(root)
    }

    /// Labels parents breadth-first (top to bottom, left to right) and leaves
    /// left to right.
    pub fn label_bfs(&self) -> TernaryTree {
        // breadth-first qubit ids
        let mut ids: Vec<*const Shape> = Vec::new();
        let mut queue = VecDeque::from([self]);
        while let Some(s) = queue.pop_front() {
            if let Shape::Node(c) = s {
                ids.push(s as *const Shape);
                queue.extend(c.iter());
            }
        }
        let id_of = |s: &Shape| {
            ids.iter()
                .position(|&p| std::ptr::eq(p, s))
                .expect("node visited")
        };
        let n = ids.len();
        let mut children = vec![[Child::Leaf(0); 3]; n];
        let mut next_leaf = 0;
        fn dfs(
            s: &Shape,
            id_of: &dyn Fn(&Shape) -> usize,
            children: &mut [[Child; 3]],
            next_leaf: &mut usize,
        ) -> Child {
            match s {
                Shape::Leaf => {
                    *next_leaf += 1;
                    Child::Leaf(*next_leaf - 1)
                }
                Shape::Node(c) => {
                    let q = id_of(s);
                    let mut slots = [Child::Leaf(0); 3];
                    for (i, ch) in c.iter().enumerate() {
                        slots[i] = dfs(ch, id_of, children, next_leaf);
                    }
                    children[q] = slots;
                    Child::Node(q)
                }
            }
        }
        dfs(self, &id_of, &mut children, &mut next_leaf);
        TernaryTree::new(0, children).expect("shape yields a valid tree")
    }
}

#[derive(Default)]
struct Labeler {
    next_qubit: usize,
    next_leaf: usize,
    slots: Vec<(usize, [Child; 3])>,
}

impl Labeler {
    fn inorder(&mut self, s: &Shape) -> Child {
        match s {
            Shape::Leaf => {
                self.next_leaf += 1;
                Child::Leaf(self.next_leaf - 1)
            }
            Shape::Node(c) => {
                let l = self.inorder(&c[0]);
                let q = self.next_qubit;
                self.next_qubit += 1;
                let m = self.inorder(&c[1]);
                let r = self.inorder(&c[2]);
                self.slots.push((q, [l, m, r]));
                Child::Node(q)
            }
        }
    }

    fn finish(mut self, root: Child) -> TernaryTree {
        self.slots.sort_by_key(|(q, _)| *q);
        let root = match root {
            Child::Node(q) => q,
            Child::Leaf(_) => panic!("shape without parents"),
        };
        TernaryTree::new(root, self.slots.into_iter().map(|(_, c)| c).collect())
            .expect("shape yields a valid tree")
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Leaf => f.write_str("."),
            Shape::Node(c) => write!(f, "({}{}{})", c[0], c[1], c[2]),
        }
    }
}
