//! Structural decomposition of rank-3 five-cycles.
//!
//! A rank-3 five-cycle admits a labelling `F_1..F_5` and disjoint element
//! sets `X_0..X_4` with `F_1 = X_0 ∪ X_1 ∪ X_2`, `F_2 = X_0 ∪ X_3 ∪ X_4`,
//! `F_3 = X_0 ∪ X_2 ∪ X_3` and `F_4 = X_0 ∪ X_1 ∪ X_4`. The cycle is of
//! type I when the common part `X_0` has size exactly lambda, and of type
//! II when it is strictly smaller.

use crate::error::{Error, Result};
use crate::family::{build_auxiliary_graph, AuxiliaryGraph, ElementSet, SetFamily};
use crate::linalg::{exact_rank, intersection_matrix};

/// Type of a rank-3 five-cycle. Type I carries the block parameters
/// `(x2, x4, f)` with `x2 = |X_2|`, `x4 = |X_4|` and `f = |F_5| - lambda`;
/// rank 3 forces `1/x2 + 1/x4 + 1 = f`, so `(x2, x4, f)` is `(1,1,3)` or
/// `(2,2,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C5Type {
    TypeI { x2: usize, x4: usize, f: i64 },
    TypeII,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C5Decomposition {
    /// `labelling[role]` is the member index playing `F_{role+1}`.
    pub labelling: [usize; 5],
    /// The disjoint parts `X_0..X_4`.
    pub x: [ElementSet; 5],
    pub c5_type: C5Type,
}

impl C5Decomposition {
    pub fn x0_size(&self) -> usize {
        self.x[0].len()
    }
}

fn is_five_cycle(graph: &AuxiliaryGraph) -> bool {
    graph.vertex_count() == 5 && graph.degrees().iter().all(|&d| d == 2)
}

/// Searches all 120 ordered labellings for the structural decomposition and
/// returns the lexicographically first one that satisfies the type-specific
/// cycle normalization: type I in cycle order `F_1 F_3 F_2 F_4 F_5` with
/// `X_1` empty, type II in cycle order `F_1 F_2 F_3 F_4 F_5`.
///
/// Returns `None` when the family is not a five-cycle or no labelling works.
pub fn find_c5_decomposition(family: &SetFamily, lambda: usize) -> Option<C5Decomposition> {
    if family.len() != 5 {
        return None;
    }
    let graph = build_auxiliary_graph(family, lambda);
    if !is_five_cycle(&graph) {
        return None;
    }
    let idx: [usize; 5] = [0, 1, 2, 3, 4];
    for &i1 in &idx {
        for &i2 in idx.iter().filter(|&&v| v != i1) {
            let x0 = family.member(i1).intersection(family.member(i2));
            let union12 = family.member(i1).union(family.member(i2));
            for &i3 in idx.iter().filter(|&&v| v != i1 && v != i2) {
                for &i4 in idx.iter().filter(|&&v| v != i1 && v != i2 && v != i3) {
                    let i5 = 10 - i1 - i2 - i3 - i4;
                    if family.member(i3).intersection(family.member(i4)) != x0 {
                        continue;
                    }
                    if family.member(i3).union(family.member(i4)) != union12 {
                        continue;
                    }
                    if x0.len() > lambda {
                        continue;
                    }
                    let part = |a: usize, b: usize| {
                        family
                            .member(a)
                            .difference(&x0)
                            .intersection(&family.member(b).difference(&x0))
                    };
                    let x1 = part(i1, i4);
                    let x2 = part(i1, i3);
                    let x3 = part(i2, i3);
                    let x4 = part(i2, i4);
                    let c5_type = if x0.len() == lambda {
                        // type I normalization: X_1 empty, cycle F1 F3 F2 F4 F5
                        if !x1.is_empty() {
                            continue;
                        }
                        let cycle = [(i1, i3), (i3, i2), (i2, i4), (i4, i5), (i5, i1)];
                        if !cycle.iter().all(|&(a, b)| graph.has_edge(a, b)) {
                            continue;
                        }
                        let f = family.member(i5).len() as i64 - lambda as i64;
                        C5Type::TypeI {
                            x2: x2.len(),
                            x4: x4.len(),
                            f,
                        }
                    } else {
                        // type II normalization: cycle F1 F2 F3 F4 F5
                        let cycle = [(i1, i2), (i2, i3), (i3, i4), (i4, i5), (i5, i1)];
                        if !cycle.iter().all(|&(a, b)| graph.has_edge(a, b)) {
                            continue;
                        }
                        C5Type::TypeII
                    };
                    debug_assert_eq!(family.member(i1), &x0.union(&x1).union(&x2));
                    debug_assert_eq!(family.member(i2), &x0.union(&x3).union(&x4));
                    debug_assert_eq!(family.member(i3), &x0.union(&x2).union(&x3));
                    debug_assert_eq!(family.member(i4), &x0.union(&x1).union(&x4));
                    return Some(C5Decomposition {
                        labelling: [i1, i2, i3, i4, i5],
                        x: [x0, x1, x2, x3, x4],
                        c5_type,
                    });
                }
            }
        }
    }
    None
}

/// Classifies a five-set family as a type I or type II rank-3 five-cycle.
///
/// Preconditions, each checked: exactly five sets; auxiliary graph a
/// five-cycle; intersection-matrix rank exactly 3; all set sizes above
/// lambda; nested members differ by exactly one element. For type I the
/// parameters `(x2, x4, f)` must land in `{(1,1,3), (2,2,2)}`.
pub fn classify_c5(family: &SetFamily, lambda: usize) -> Result<C5Decomposition> {
    if family.len() != 5 {
        return Err(Error::precondition(format!(
            "classification needs exactly 5 sets, got {}",
            family.len()
        )));
    }
    let graph = build_auxiliary_graph(family, lambda);
    if !is_five_cycle(&graph) {
        return Err(Error::precondition(
            "auxiliary graph is not a five-cycle",
        ));
    }
    let rank = exact_rank(intersection_matrix(family, lambda).as_matrix()).rank;
    if rank != 3 {
        return Err(Error::precondition(format!(
            "intersection matrix has rank {rank}, expected 3"
        )));
    }
    for (i, member) in family.members().iter().enumerate() {
        if member.len() <= lambda {
            return Err(Error::precondition(format!(
                "set {i} has size {} <= lambda {lambda}",
                member.len()
            )));
        }
    }
    for i in 0..5 {
        for j in 0..5 {
            if i != j
                && family.member(i).is_subset_of(family.member(j))
                && family.member(j).len() != family.member(i).len() + 1
            {
                return Err(Error::precondition(format!(
                    "nested members {i} ⊂ {j} differ by more than one element"
                )));
            }
        }
    }
    let decomposition = find_c5_decomposition(family, lambda)
        .ok_or_else(|| Error::structure("no valid five-cycle decomposition found"))?;
    if let C5Type::TypeI { x2, x4, f } = decomposition.c5_type {
        let admissible = [(1, 1, 3), (2, 2, 2)];
        if !admissible.contains(&(x2, x4, f as usize)) || f < 0 {
            return Err(Error::structure(format!(
                "type I parameters ({x2},{x4},{f}) outside {{(1,1,3),(2,2,2)}}"
            )));
        }
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn type_i_family() -> SetFamily {
        SetFamily::build(
            8,
            &[
                vec![1, 2, 3],
                vec![1, 2, 3, 5],
                vec![1, 2, 4, 5],
                vec![1, 2, 4],
                vec![1, 5, 6, 7, 8],
            ],
        )
        .unwrap()
    }

    fn type_ii_family() -> SetFamily {
        SetFamily::build(
            9,
            &[
                vec![1, 2, 3],
                vec![1, 4, 5, 6],
                vec![1, 3, 5, 6],
                vec![1, 2, 4],
                vec![1, 5, 7, 8, 9],
            ],
        )
        .unwrap()
    }

    #[test]
    fn classifies_type_i_example() {
        let d = classify_c5(&type_i_family(), 2).unwrap();
        assert_eq!(d.c5_type, C5Type::TypeI { x2: 1, x4: 1, f: 3 });
        assert_eq!(d.x[0].elements(), vec![1, 2]);
        assert!(d.x[1].is_empty());
        // relation forced by rank 3: 1/x2 + 1/x4 + 1 = f for (1,1,3)
        assert_eq!(d.labelling, [0, 2, 1, 3, 4]);
    }

    #[test]
    fn classifies_type_ii_example() {
        let d = classify_c5(&type_ii_family(), 2).unwrap();
        assert_eq!(d.c5_type, C5Type::TypeII);
        assert_eq!(d.labelling, [0, 1, 2, 3, 4]);
        assert_eq!(d.x[0].elements(), vec![1]);
        assert_eq!(d.x[1].elements(), vec![2]);
        assert_eq!(d.x[2].elements(), vec![3]);
        assert_eq!(d.x[3].elements(), vec![5, 6]);
        assert_eq!(d.x[4].elements(), vec![4]);
    }

    #[test]
    fn decomposition_parts_are_disjoint_and_cover() {
        for (fam, lambda) in [(type_i_family(), 2), (type_ii_family(), 2)] {
            let d = classify_c5(&fam, lambda).unwrap();
            for i in 0..5 {
                for j in i + 1..5 {
                    assert!(d.x[i].intersection(&d.x[j]).is_empty());
                }
            }
            let f = |role: usize| fam.member(d.labelling[role]);
            assert_eq!(f(0), &d.x[0].union(&d.x[1]).union(&d.x[2]));
            assert_eq!(f(1), &d.x[0].union(&d.x[3]).union(&d.x[4]));
            assert_eq!(f(2), &d.x[0].union(&d.x[2]).union(&d.x[3]));
            assert_eq!(f(3), &d.x[0].union(&d.x[1]).union(&d.x[4]));
        }
    }

    #[test]
    fn rejects_path_shape() {
        // Five sets whose auxiliary graph is the path P4, not a cycle.
        let fam = SetFamily::build(
            5,
            &[vec![1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]],
        )
        .unwrap();
        let err = classify_c5(&fam, 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn rejects_wrong_member_count() {
        let fam = SetFamily::build(3, &[vec![1], vec![2]]).unwrap();
        assert!(classify_c5(&fam, 0).is_err());
    }
}
