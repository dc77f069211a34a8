//! Set families over a ground set `[n] = {1..n}` and the auxiliary graph
//! whose edges mark pairs with intersection size different from lambda.
//!
//! Elements are 1-based throughout; member indices are 0-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A subset of `{1..width}` stored as a fixed-width bit vector.
///
/// Element `e` lives in bit `e - 1`. The derived equality/hash compare the
/// raw blocks, which is sound because unused high bits are kept at zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    width: usize,
    blocks: Vec<u64>,
}

fn block_count(width: usize) -> usize {
    width.div_ceil(64)
}

impl ElementSet {
    /// The empty subset of `{1..width}`.
    pub fn empty(width: usize) -> Self {
        ElementSet {
            width,
            blocks: vec![0; block_count(width)],
        }
    }

    /// The full ground set `{1..width}`.
    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for e in 1..=width {
            s.insert(e).unwrap();
        }
        s
    }

    pub fn from_elements(width: usize, elements: &[usize]) -> Result<Self> {
        let mut s = Self::empty(width);
        for &e in elements {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, element: usize) -> Result<()> {
        if element == 0 || element > self.width {
            return Err(Error::ElementOutOfRange {
                index: 0,
                element,
                ground: self.width,
            });
        }
        self.blocks[(element - 1) / 64] |= 1u64 << ((element - 1) % 64);
        Ok(())
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 || element > self.width {
            return false;
        }
        self.blocks[(element - 1) / 64] >> ((element - 1) % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for (i, &b) in self.blocks.iter().enumerate() {
            let mut bits = b;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                out.push(i * 64 + t + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    fn zip_blocks(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.width, other.width, "element sets of different width");
        ElementSet {
            width: self.width,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a ^ b)
    }

    /// Complement with respect to the full ground set `{1..width}`.
    pub fn complement(&self) -> Self {
        let mut blocks: Vec<u64> = self.blocks.iter().map(|&b| !b).collect();
        let spare = block_count(self.width) * 64 - self.width;
        if spare > 0 {
            if let Some(last) = blocks.last_mut() {
                *last &= u64::MAX >> spare;
            }
        }
        ElementSet {
            width: self.width,
            blocks,
        }
    }

    pub fn intersection_size(&self, other: &Self) -> usize {
        assert_eq!(self.width, other.width, "element sets of different width");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn symmetric_difference_size(&self, other: &Self) -> usize {
        assert_eq!(self.width, other.width, "element sets of different width");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(&a, &b)| a & !b == 0)
    }

    /// Re-embeds the set into a wider ground set, keeping all elements.
    pub fn widened(&self, new_width: usize) -> Self {
        assert!(new_width >= self.width);
        let mut s = ElementSet {
            width: new_width,
            blocks: self.blocks.clone(),
        };
        s.blocks.resize(block_count(new_width), 0);
        s
    }

    /// Canonical order: by size first, then by the lexicographic order of the
    /// ascending element lists (the set containing the smallest differing
    /// element compares smaller).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (&a, &b) in self.blocks.iter().zip(&other.blocks) {
            let diff = a ^ b;
            if diff != 0 {
                let lowest = diff & diff.wrapping_neg();
                return if a & lowest != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A family of pairwise distinct subsets of `[n]`, in a fixed member order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Builds a family from element lists, enforcing the invariants:
    /// every element in `{1..n}`, members pairwise distinct.
    pub fn build(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::parameter("ground size n must be at least 1"));
        }
        let mut members = Vec::with_capacity(sets.len());
        for (index, elems) in sets.iter().enumerate() {
            let mut s = ElementSet::empty(n);
            for &e in elems {
                s.insert(e).map_err(|err| match err {
                    Error::ElementOutOfRange { element, ground, .. } => {
                        Error::ElementOutOfRange {
                            index,
                            element,
                            ground,
                        }
                    }
                    other => other,
                })?;
            }
            members.push(s);
        }
        Self::from_members(n, members)
    }

    /// Builds a family from already-canonical bit vectors.
    pub fn from_members(n: usize, members: Vec<ElementSet>) -> Result<Self> {
        if n == 0 {
            return Err(Error::parameter("ground size n must be at least 1"));
        }
        for (i, m) in members.iter().enumerate() {
            if m.width() != n {
                return Err(Error::parameter(format!(
                    "member {i} has width {} but ground size is {n}",
                    m.width()
                )));
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i] == members[j] {
                    return Err(Error::DuplicateSet { first: i, second: j });
                }
            }
        }
        Ok(SetFamily { ground: n, members })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, index: usize) -> &ElementSet {
        &self.members[index]
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    /// The subfamily at the given member indices, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        SetFamily {
            ground: self.ground,
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }

    /// Applies a permutation of the ground set; `perm[e - 1]` is the image
    /// of element `e`.
    pub fn permute_ground(&self, perm: &[usize]) -> Result<SetFamily> {
        if perm.len() != self.ground {
            return Err(Error::parameter("permutation length must equal n"));
        }
        let mut members = Vec::with_capacity(self.members.len());
        for m in &self.members {
            let mut s = ElementSet::empty(self.ground);
            for e in m.elements() {
                s.insert(perm[e - 1])?;
            }
            members.push(s);
        }
        Ok(SetFamily {
            ground: self.ground,
            members,
        })
    }
}

/// The graph on family members with an edge wherever the pairwise
/// intersection size differs from lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl AuxiliaryGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as ordered pairs `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    /// Connected components, each sorted ascending; components ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Builds the auxiliary graph of `family` for the given lambda.
pub fn build_auxiliary_graph(family: &SetFamily, lambda: usize) -> AuxiliaryGraph {
    let m = family.len();
    let mut edges = Vec::new();
    let mut degrees = vec![0usize; m];
    let mut adjacency = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if family.member(i).intersection_size(family.member(j)) != lambda {
                edges.push((i, j));
                degrees[i] += 1;
                degrees[j] += 1;
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    AuxiliaryGraph {
        vertex_count: m,
        edges,
        degrees,
        adjacency,
    }
}

/// Outcome of checking the k-almost lambda-Fisher property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub lambda: usize,
    pub k: usize,
    /// Members with more than `k` bad intersections, as `(index, bad count)`.
    pub violations: Vec<(usize, usize)>,
    pub max_bad_degree: usize,
}

/// Checks whether every member has at most `k` other members whose
/// intersection with it has size different from `lambda`.
///
/// Invalid input is a report, not a failure.
pub fn verify_almost_fisher(family: &SetFamily, k: usize, lambda: usize) -> VerificationReport {
    let graph = build_auxiliary_graph(family, lambda);
    let violations: Vec<(usize, usize)> = graph
        .degrees()
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d > k)
        .map(|(i, &d)| (i, d))
        .collect();
    VerificationReport {
        valid: violations.is_empty(),
        lambda,
        k,
        max_bad_degree: graph.max_degree(),
        violations,
    }
}

/// The restricted size `|F ∩ X|` of a set within a window `X ⊆ [n]`.
pub fn restricted_size(set: &ElementSet, window: &ElementSet) -> usize {
    set.intersection_size(window)
}

/// Convenience form of [`restricted_size`] taking the window as elements;
/// rejects out-of-range window elements.
pub fn restricted_size_in(set: &ElementSet, window: &[usize]) -> Result<usize> {
    let w = ElementSet::from_elements(set.width(), window)?;
    Ok(restricted_size(set, &w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn hadamard4_sets() -> Vec<Vec<usize>> {
        vec![
            vec![1, 2],
            vec![3, 4],
            vec![1, 3],
            vec![2, 4],
            vec![1, 4],
            vec![2, 3],
        ]
    }

    /// Naive pairwise-intersection oracle on BTreeSets, independent of the
    /// bit-vector implementation.
    fn naive_edges(sets: &[Vec<usize>], lambda: usize) -> Vec<(usize, usize)> {
        let sets: Vec<BTreeSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        let mut out = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).count() != lambda {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn build_family_basic() {
        let fam = SetFamily::build(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.ground_size(), 4);
        assert_eq!(fam.member(0).elements(), vec![1, 2]);
    }

    #[test]
    fn build_family_rejects_duplicates() {
        let err = SetFamily::build(4, &[vec![1, 2], vec![2, 1]]).unwrap_err();
        assert_eq!(err, Error::DuplicateSet { first: 0, second: 1 });
    }

    #[test]
    fn build_family_rejects_out_of_range() {
        let err = SetFamily::build(3, &[vec![1, 4]]).unwrap_err();
        assert_eq!(
            err,
            Error::ElementOutOfRange {
                index: 0,
                element: 4,
                ground: 3
            }
        );
        assert!(SetFamily::build(3, &[vec![0]]).is_err());
    }

    #[test]
    fn empty_set_is_a_legal_member() {
        let fam = SetFamily::build(3, &[vec![], vec![1]]).unwrap();
        assert!(fam.member(0).is_empty());
    }

    #[test]
    fn auxiliary_graph_of_hadamard4_is_perfect_matching() {
        let sets = hadamard4_sets();
        let fam = SetFamily::build(4, &sets).unwrap();
        let g = build_auxiliary_graph(&fam, 1);
        // Oracle: enumerate all 15 pairwise intersections naively.
        assert_eq!(g.edges(), naive_edges(&sets, 1).as_slice());
        assert_eq!(g.edges(), &[(0, 1), (2, 3), (4, 5)]);
        assert!(g.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn auxiliary_graph_single_bad_pair() {
        let fam = SetFamily::build(5, &[vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        let g = build_auxiliary_graph(&fam, 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn auxiliary_graph_empty_when_all_lambda() {
        let fam = SetFamily::build(5, &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]).unwrap();
        let g = build_auxiliary_graph(&fam, 2);
        assert!(g.edges().is_empty());
        assert_eq!(g.max_degree(), 0);
    }

    #[test]
    fn verify_hadamard4() {
        let fam = SetFamily::build(4, &hadamard4_sets()).unwrap();
        let rep = verify_almost_fisher(&fam, 1, 1);
        assert!(rep.valid);
        assert_eq!(rep.max_bad_degree, 1);
        let rep0 = verify_almost_fisher(&fam, 0, 1);
        assert!(!rep0.valid);
        assert_eq!(rep0.violations.len(), 6);
    }

    #[test]
    fn verify_empty_family_is_vacuously_valid() {
        let fam = SetFamily::build(3, &[]).unwrap();
        for k in 0..3 {
            for lambda in 0..3 {
                assert!(verify_almost_fisher(&fam, k, lambda).valid);
            }
        }
    }

    #[test]
    fn verify_monotone_in_k() {
        let fam = SetFamily::build(4, &hadamard4_sets()).unwrap();
        for lambda in 0..=4 {
            let mut prev_valid = false;
            for k in 0..=6 {
                let valid = verify_almost_fisher(&fam, k, lambda).valid;
                assert!(!prev_valid || valid, "validity must be monotone in k");
                prev_valid = valid;
            }
        }
    }

    #[test]
    fn restricted_size_examples() {
        let f = ElementSet::from_elements(4, &[1, 2, 3]).unwrap();
        let w = ElementSet::from_elements(4, &[2, 3, 4]).unwrap();
        assert_eq!(restricted_size(&f, &w), 2);
        assert_eq!(restricted_size(&f, &ElementSet::full(4)), 3);
        assert_eq!(restricted_size(&f, &ElementSet::empty(4)), 0);
        assert!(restricted_size_in(&f, &[5]).is_err());
    }

    #[test]
    fn canonical_order_is_size_then_element_lex() {
        let s = |e: &[usize]| ElementSet::from_elements(6, e).unwrap();
        assert!(s(&[]) < s(&[1]));
        assert!(s(&[6]) < s(&[1, 2]));
        assert!(s(&[1, 4]) < s(&[2, 3]));
        assert!(s(&[1, 2]) < s(&[1, 3]));
    }

    #[test]
    fn graph_components() {
        let fam = SetFamily::build(4, &hadamard4_sets()).unwrap();
        let g = build_auxiliary_graph(&fam, 1);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn complement_respects_width() {
        let s = ElementSet::from_elements(70, &[1, 70]).unwrap();
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(1) && !c.contains(70) && c.contains(69));
        assert_eq!(s.union(&c), ElementSet::full(70));
    }
}
