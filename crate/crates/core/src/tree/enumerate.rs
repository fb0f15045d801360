//! Exhaustive enumeration of tree shapes and leaf labelings for small `n`.

use super::{Shape, TernaryTree};
use crate::error::{Error, Result};
use crate::mapping::MajoranaMapping;
use crate::pauli::PauliString;

pub const DEFAULT_SHAPE_BOUND: usize = 6;
pub const DEFAULT_MAPPING_BOUND: usize = 4;

/// One representative per class of shapes equal up to child order, in
/// canonical (flushed-right) form, labeled breadth-first.
pub fn enumerate_shapes(n: usize) -> Result<Vec<TernaryTree>> {
    enumerate_shapes_bounded(n, DEFAULT_SHAPE_BOUND)
}

pub fn enumerate_shapes_bounded(n: usize, bound: usize) -> Result<Vec<TernaryTree>> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if n == 0 {
        return Err(Error::Domain("shape enumeration needs n >= 1".into()));
    }
    Ok(canonical_shapes(n).iter().map(Shape::label_bfs).collect())
}

pub(crate) fn canonical_shapes(n: usize) -> Vec<Shape> {
    // by_size[m] = canonical shapes with m parents, sorted
    let mut by_size: Vec<Vec<Shape>> = vec![vec![Shape::Leaf]];
    for m in 1..=n {
        let options: Vec<&Shape> = by_size.iter().flatten().collect();
        let mut out = Vec::new();
        for i in 0..options.len() {
            for j in i..options.len() {
                for k in j..options.len() {
                    let (a, b, c) = (options[i], options[j], options[k]);
                    if a.size() + b.size() + c.size() == m - 1 {
                        out.push(Shape::node(a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        out.sort();
        by_size.push(out);
    }
    by_size.pop().unwrap_or_default()
}

/// Advances `v` to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Every (canonical shape, leaf labeling) pair compiled to a mapping.
///
/// Labelings equivalent under relabeling of the redundant leaf are all
/// visited, so the count is `shapes(n) · (2n+1)!`.
pub fn enumerate_mappings(n: usize) -> Result<MappingIter> {
    enumerate_mappings_bounded(n, DEFAULT_MAPPING_BOUND)
}

pub fn enumerate_mappings_bounded(n: usize, bound: usize) -> Result<MappingIter> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let shapes = enumerate_shapes_bounded(n, bound.max(n))?;
    let base = shapes.first().map(|t| t.compile().paulis().to_vec());
    Ok(MappingIter {
        n,
        shapes,
        shape_idx: 0,
        base: base.unwrap_or_default(),
        labeling: (0..2 * n + 1).collect(),
        done: false,
    })
}

pub struct MappingIter {
    n: usize,
    shapes: Vec<TernaryTree>,
    shape_idx: usize,
    base: Vec<PauliString>,
    labeling: Vec<usize>,
    done: bool,
}

impl MappingIter {
    pub fn shapes(&self) -> &[TernaryTree] {
        &self.shapes
    }
}

impl Iterator for MappingIter {
    type Item = MajoranaMapping;

    fn next(&mut self) -> Option<MajoranaMapping> {
        if self.done {
            return None;
        }
        let mut paulis = vec![PauliString::identity(self.n); self.base.len()];
        for (leaf, &label) in self.labeling.iter().enumerate() {
            paulis[label] = self.base[leaf].clone();
        }
        let item = MajoranaMapping::new(self.n, paulis).expect("labeling is a bijection");

        if !next_permutation(&mut self.labeling) {
            self.shape_idx += 1;
            if self.shape_idx == self.shapes.len() {
                self.done = true;
            } else {
                self.base = self.shapes[self.shape_idx].compile().paulis().to_vec();
                self.labeling = (0..2 * self.n + 1).collect();
            }
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_cover_factorial() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![3, 2, 1, 0]);
    }

    #[test]
    fn canonical_shapes_are_canonical() {
        for n in 1..=5 {
            for s in canonical_shapes(n) {
                assert_eq!(s.canonical(), s);
                assert_eq!(s.size(), n);
            }
        }
    }
}
