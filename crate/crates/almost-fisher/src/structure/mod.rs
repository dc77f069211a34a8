//! Structural analysis of a family through its auxiliary graph: component
//! decomposition with exact block ranks, low-rank classification, the
//! rank-1 core decomposition, dyadic diagnostics, five-cycle classification,
//! the average-distance (Plotkin) check, heavy edges and bounded-degree
//! partitions.

mod c5;
mod p1_core;
mod partition;

pub use c5::{classify_c5, find_c5_decomposition, C5Decomposition, C5Type};
pub use p1_core::{
    dyadic_diagnostics, one_per_edge_subfamily, rank1_p1_structure, symmetric_difference_identity,
    CoreDecomposition, DyadicDiagnostics, DyadicLevel, SymmetricDifferenceReport,
};
pub use partition::{
    find_heavy_edge, heavy_edge_threshold_exceeded, lovasz_partition, Multigraph, SimpleGraph,
};

use num::{BigRational, FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{build_auxiliary_graph, SetFamily};
use crate::linalg::{exact_rank, intersection_matrix, RankCertificate};

/// Shape of the auxiliary subgraph induced by one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Isolated,
    /// A path on `vertices` vertices (so `vertices - 1` edges).
    Path { vertices: usize },
    /// A cycle on `vertices` vertices.
    Cycle { vertices: usize },
    Other,
}

/// Low-rank classification of a component's intersection-matrix block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Rank1P1,
    Rank2C4,
    Rank3C5TypeI,
    Rank3C5TypeII,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    /// Member indices in this component, ascending.
    pub members: Vec<usize>,
    pub shape: ComponentShape,
    pub rank: usize,
    pub certificate: RankCertificate,
    pub classification: Classification,
}

fn component_shape(degrees: &[usize], members: &[usize]) -> ComponentShape {
    if members.len() == 1 {
        return ComponentShape::Isolated;
    }
    let degs: Vec<usize> = members.iter().map(|&v| degrees[v]).collect();
    if degs.iter().any(|&d| d > 2) {
        return ComponentShape::Other;
    }
    let edge_count: usize = degs.iter().sum::<usize>() / 2;
    if degs.iter().all(|&d| d == 2) && edge_count == members.len() {
        ComponentShape::Cycle {
            vertices: members.len(),
        }
    } else if edge_count + 1 == members.len() {
        ComponentShape::Path {
            vertices: members.len(),
        }
    } else {
        ComponentShape::Other
    }
}

/// Splits the family by auxiliary-graph components, computes the exact rank
/// of each diagonal block of the intersection matrix and classifies the
/// low-rank structures.
///
/// Degrees above two simply yield shape `Other`; the rank is still computed.
/// A five-cycle of rank 3 is typed I or II through its structural
/// decomposition; if no decomposition exists the component stays `Other`.
pub fn decompose_components(family: &SetFamily, lambda: usize) -> Vec<ComponentReport> {
    let graph = build_auxiliary_graph(family, lambda);
    let m = intersection_matrix(family, lambda);
    let mut out = Vec::new();
    for members in graph.components() {
        let certificate = exact_rank(&m.block(&members));
        let rank = certificate.rank;
        let shape = component_shape(graph.degrees(), &members);
        let classification = match (shape, rank) {
            (ComponentShape::Path { vertices: 2 }, 1) => Classification::Rank1P1,
            (ComponentShape::Cycle { vertices: 4 }, 2) => Classification::Rank2C4,
            (ComponentShape::Cycle { vertices: 5 }, 3) => {
                match find_c5_decomposition(&family.subfamily(&members), lambda) {
                    Some(d) => match d.c5_type {
                        C5Type::TypeI { .. } => Classification::Rank3C5TypeI,
                        C5Type::TypeII => Classification::Rank3C5TypeII,
                    },
                    None => Classification::Other,
                }
            }
            _ => Classification::Other,
        };
        out.push(ComponentReport {
            members,
            shape,
            rank,
            certificate,
            classification,
        });
    }
    out
}

/// Lower bounds on component block ranks: an s-vertex path has rank at
/// least `s - 1`, an s-vertex cycle at least `s - 2`, and a triangle whose
/// three sets all meet some outside member in exactly lambda elements has
/// rank at least 2. Isolated vertices are trivially within bounds.
pub fn check_component_rank_bounds(
    family: &SetFamily,
    lambda: usize,
    report: &ComponentReport,
) -> Result<bool> {
    match report.shape {
        ComponentShape::Isolated => Ok(true),
        ComponentShape::Path { vertices } => Ok(report.rank >= vertices - 1),
        ComponentShape::Cycle { vertices } => {
            if report.rank + 2 < vertices {
                return Ok(false);
            }
            if vertices == 3 {
                let outside_witness = (0..family.len())
                    .filter(|i| !report.members.contains(i))
                    .any(|i| {
                        report.members.iter().all(|&j| {
                            family.member(i).intersection_size(family.member(j)) == lambda
                        })
                    });
                if outside_witness && report.rank < 2 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ComponentShape::Other => Err(Error::precondition(
            "rank bounds apply to path or cycle components only",
        )),
    }
}

/// Counts of rank-1 single edges, rank-2 four-cycles and rank-3 five-cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowRankCounts {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

/// Exact counts by classification, for a family whose auxiliary graph has
/// maximum degree at most 2.
///
/// `r` counts every five-cycle of rank 3, typed or not.
pub fn count_low_rank_structures(family: &SetFamily, lambda: usize) -> Result<LowRankCounts> {
    let graph = build_auxiliary_graph(family, lambda);
    if graph.max_degree() > 2 {
        return Err(Error::precondition(format!(
            "auxiliary graph has degree {} > 2",
            graph.max_degree()
        )));
    }
    let reports = decompose_components(family, lambda);
    let mut counts = LowRankCounts { p: 0, q: 0, r: 0 };
    for rep in &reports {
        match rep.classification {
            Classification::Rank1P1 => counts.p += 1,
            Classification::Rank2C4 => counts.q += 1,
            Classification::Rank3C5TypeI | Classification::Rank3C5TypeII => counts.r += 1,
            Classification::Other => {
                if rep.shape == (ComponentShape::Cycle { vertices: 5 }) && rep.rank == 3 {
                    counts.r += 1;
                }
            }
        }
    }
    Ok(counts)
}

/// Outcome of the average-distance bound: with
/// `total = Σ_{i<j} |F_i Δ F_j|` and `delta` the largest rational with
/// `total ≥ C(m,2)(n/2 + delta)`, a positive `delta` forces
/// `m ≤ n/(2 delta) + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotkinReport {
    pub total_difference: u64,
    pub pair_count: u64,
    pub delta: BigRational,
    /// `n/(2 delta) + 1` when `delta > 0`; `None` marks the bound
    /// inapplicable.
    pub bound: Option<BigRational>,
    pub holds: Option<bool>,
}

pub fn plotkin_check(family: &SetFamily) -> Result<PlotkinReport> {
    let m = family.len();
    if m < 2 {
        return Err(Error::precondition(
            "the distance bound needs at least two sets",
        ));
    }
    let mut total: u64 = 0;
    for i in 0..m {
        for j in i + 1..m {
            total += family.member(i).symmetric_difference_size(family.member(j)) as u64;
        }
    }
    let pair_count = (m as u64) * (m as u64 - 1) / 2;
    let n = family.ground_size();
    let delta = BigRational::from_u64(total).unwrap() / BigRational::from_u64(pair_count).unwrap()
        - BigRational::from_usize(n).unwrap() / BigRational::from_u64(2).unwrap();
    let (bound, holds) = if delta.is_positive() {
        let bound = BigRational::from_usize(n).unwrap()
            / (BigRational::from_u64(2).unwrap() * &delta)
            + BigRational::one();
        let holds = BigRational::from_usize(m).unwrap() <= bound;
        (Some(bound), Some(holds))
    } else {
        (None, None)
    };
    Ok(PlotkinReport {
        total_difference: total,
        pair_count,
        delta,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SetFamily;
    use num::ToPrimitive;

    fn hadamard4() -> SetFamily {
        SetFamily::build(
            4,
            &[
                vec![1, 2],
                vec![3, 4],
                vec![1, 3],
                vec![2, 4],
                vec![1, 4],
                vec![2, 3],
            ],
        )
        .unwrap()
    }

    fn five_example() -> SetFamily {
        SetFamily::build(
            5,
            &[vec![1, 2, 3], vec![1, 4, 5], vec![1, 2, 4], vec![1, 3, 5]],
        )
        .unwrap()
    }

    fn type_i_c5() -> SetFamily {
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

    #[test]
    fn hadamard4_components_are_rank1_p1() {
        let reports = decompose_components(&hadamard4(), 1);
        assert_eq!(reports.len(), 3);
        for rep in &reports {
            assert_eq!(rep.shape, ComponentShape::Path { vertices: 2 });
            assert_eq!(rep.rank, 1);
            assert_eq!(rep.classification, Classification::Rank1P1);
        }
    }

    #[test]
    fn five_example_components_are_rank1_p1() {
        let reports = decompose_components(&five_example(), 2);
        assert_eq!(reports.len(), 2);
        for rep in &reports {
            assert_eq!(rep.classification, Classification::Rank1P1);
        }
    }

    #[test]
    fn type_i_c5_component_classified() {
        let reports = decompose_components(&type_i_c5(), 2);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].shape, ComponentShape::Cycle { vertices: 5 });
        assert_eq!(reports[0].rank, 3);
        assert_eq!(reports[0].classification, Classification::Rank3C5TypeI);
    }

    #[test]
    fn rank_bounds_hold_on_small_components() {
        let fam = hadamard4();
        for rep in decompose_components(&fam, 1) {
            assert!(check_component_rank_bounds(&fam, 1, &rep).unwrap());
        }
        let c5 = type_i_c5();
        for rep in decompose_components(&c5, 2) {
            assert!(check_component_rank_bounds(&c5, 2, &rep).unwrap());
        }
    }

    #[test]
    fn counts_examples() {
        assert_eq!(
            count_low_rank_structures(&hadamard4(), 1).unwrap(),
            LowRankCounts { p: 3, q: 0, r: 0 }
        );
        assert_eq!(
            count_low_rank_structures(&type_i_c5(), 2).unwrap(),
            LowRankCounts { p: 0, q: 0, r: 1 }
        );
        // lambda-Fisher family: no edges at all
        let sunflower =
            SetFamily::build(5, &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]).unwrap();
        assert_eq!(
            count_low_rank_structures(&sunflower, 2).unwrap(),
            LowRankCounts { p: 0, q: 0, r: 0 }
        );
    }

    #[test]
    fn counts_reject_high_degree() {
        // Three sets pairwise bad plus one more bad partner pushes degree to 3.
        let fam = SetFamily::build(
            4,
            &[vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 2, 3, 4]],
        )
        .unwrap();
        assert!(count_low_rank_structures(&fam, 0).is_err());
    }

    #[test]
    fn plotkin_hadamard4_is_tight() {
        // Oracle: 3 complement pairs at distance 4, 12 pairs at distance 2.
        let rep = plotkin_check(&hadamard4()).unwrap();
        assert_eq!(rep.total_difference, 36);
        assert_eq!(rep.pair_count, 15);
        assert_eq!(rep.delta, BigRational::new(2.into(), 5.into()));
        let bound = rep.bound.unwrap();
        assert_eq!(bound, BigRational::from_integer(6.into()));
        assert_eq!(bound.to_integer().to_u64(), Some(6));
        assert_eq!(rep.holds, Some(true));
    }

    #[test]
    fn plotkin_singletons() {
        let fam = SetFamily::build(2, &[vec![1], vec![2]]).unwrap();
        let rep = plotkin_check(&fam).unwrap();
        assert_eq!(rep.total_difference, 2);
        assert_eq!(rep.delta, BigRational::from_integer(1.into()));
        assert_eq!(rep.bound.unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(rep.holds, Some(true));
    }

    #[test]
    fn plotkin_needs_two_sets() {
        let fam = SetFamily::build(3, &[vec![1]]).unwrap();
        assert!(plotkin_check(&fam).is_err());
    }

    #[test]
    fn plotkin_inapplicable_when_delta_nonpositive() {
        let fam = SetFamily::build(4, &[vec![1], vec![1, 2], vec![1, 2, 3]]).unwrap();
        let rep = plotkin_check(&fam).unwrap();
        assert!(!rep.delta.is_positive());
        assert!(rep.bound.is_none() && rep.holds.is_none());
    }
}
