//! Core decomposition of the rank-1 single-edge components.
//!
//! When a family has at least two rank-1 single edges (and all set sizes
//! exceed lambda), their member sets share a common core `V` of size `nu`
//! and are otherwise supported on a set `U` of size `4 mu` with
//! `mu = lambda - nu`; each edge's two sets intersect exactly in `V` and
//! split `U` into two halves of size `2 mu`. The remainder
//! `W = [n] \ (U ∪ V)` has size `gamma`.

use crate::error::{Error, Result};
use crate::family::{build_auxiliary_graph, ElementSet, SetFamily};
use crate::linalg::{exact_rank, intersection_matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub v: ElementSet,
    pub u: ElementSet,
    pub w: ElementSet,
    pub mu: usize,
    pub nu: usize,
    pub gamma: usize,
}

/// Indices of the rank-1 single-edge components, as pairs `(i, j)` with
/// `i < j`, ordered by smallest member.
fn rank1_pairs(family: &SetFamily, lambda: usize) -> Vec<(usize, usize)> {
    let graph = build_auxiliary_graph(family, lambda);
    let m = intersection_matrix(family, lambda);
    let mut pairs = Vec::new();
    for comp in graph.components() {
        if comp.len() == 2 && exact_rank(&m.block(&comp)).rank == 1 {
            pairs.push((comp[0], comp[1]));
        }
    }
    pairs
}

/// Extracts the core decomposition `(V, U, W, mu, nu, gamma)` from the
/// rank-1 single edges, verifying the determinant identity
/// `(|F| - λ)(|F'| - λ) = (|F ∩ F'| - λ)²` and the partition structure for
/// every such edge. Structural violations are reported with the offending
/// pair; they signal that the input is not a valid configuration.
pub fn rank1_p1_structure(family: &SetFamily, lambda: usize) -> Result<CoreDecomposition> {
    for (i, member) in family.members().iter().enumerate() {
        if member.len() <= lambda {
            return Err(Error::precondition(format!(
                "set {i} has size {} <= lambda {lambda}",
                member.len()
            )));
        }
    }
    let pairs = rank1_pairs(family, lambda);
    if pairs.len() < 2 {
        return Err(Error::precondition(format!(
            "need at least two rank-1 single edges, found {}",
            pairs.len()
        )));
    }
    let nu = pairs
        .iter()
        .map(|&(i, j)| family.member(i).intersection_size(family.member(j)))
        .min()
        .unwrap();
    if nu >= lambda {
        return Err(Error::structure(format!(
            "minimum edge intersection {nu} is not below lambda {lambda}"
        )));
    }
    let mu = lambda - nu;
    let &(a, b) = pairs
        .iter()
        .find(|&&(i, j)| family.member(i).intersection_size(family.member(j)) == nu)
        .unwrap();
    let v = family.member(a).intersection(family.member(b));
    let u = family.member(a).union(family.member(b)).difference(&v);

    for &(i, j) in &pairs {
        let (f1, f2) = (family.member(i), family.member(j));
        let s1 = f1.len() as i64 - lambda as i64;
        let s2 = f2.len() as i64 - lambda as i64;
        let inter = f1.intersection_size(f2) as i64 - lambda as i64;
        if s1 * s2 != inter * inter {
            return Err(Error::structure(format!(
                "pair ({i},{j}) violates the rank-1 determinant identity"
            )));
        }
        if f1.intersection(f2) != v {
            return Err(Error::structure(format!(
                "pair ({i},{j}) does not intersect exactly in the core V"
            )));
        }
        let outside = f1.union(f2).difference(&v);
        if outside != u {
            return Err(Error::structure(format!(
                "pair ({i},{j}) is not supported on V ∪ U"
            )));
        }
        for (label, f) in [(i, f1), (j, f2)] {
            if !v.is_subset_of(f) || !f.is_subset_of(&u.union(&v)) {
                return Err(Error::structure(format!(
                    "set {label} escapes the core decomposition"
                )));
            }
            if f.difference(&v).len() != 2 * mu {
                return Err(Error::structure(format!(
                    "set {label} does not cover half of U"
                )));
            }
        }
    }
    debug_assert_eq!(u.len(), 4 * mu);
    let w = u.union(&v).complement();
    let gamma = w.len();
    debug_assert_eq!(gamma, family.ground_size() - 4 * mu - nu);
    Ok(CoreDecomposition {
        v,
        u,
        w,
        mu,
        nu,
        gamma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricDifferenceReport {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// Evaluates `|F Δ F'|_U = 2μ + 2|comp(F) ∩ comp(F')|_V + 2|F ∩ F'|_W` for
/// a pair from the one-set-per-edge subfamily with `|F ∩ F'| = lambda`.
pub fn symmetric_difference_identity(
    f: &ElementSet,
    f_prime: &ElementSet,
    decomposition: &CoreDecomposition,
    lambda: usize,
) -> Result<SymmetricDifferenceReport> {
    if f.intersection_size(f_prime) != lambda {
        return Err(Error::precondition(format!(
            "pair intersects in {} elements, not lambda = {lambda}",
            f.intersection_size(f_prime)
        )));
    }
    let lhs = f
        .symmetric_difference(f_prime)
        .intersection_size(&decomposition.u);
    let missed = f
        .complement()
        .intersection(&f_prime.complement())
        .intersection_size(&decomposition.v);
    let shared_w = f.intersection(f_prime).intersection_size(&decomposition.w);
    let rhs = 2 * decomposition.mu + 2 * missed + 2 * shared_w;
    Ok(SymmetricDifferenceReport {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// The lambda-Fisher subfamily with one set per auxiliary edge plus all
/// isolated vertices, in member order; the auxiliary graph must have
/// maximum degree 1.
pub fn one_per_edge_subfamily(family: &SetFamily, lambda: usize) -> Result<SetFamily> {
    let graph = build_auxiliary_graph(family, lambda);
    if graph.max_degree() > 1 {
        return Err(Error::precondition(
            "one-set-per-edge subfamily needs auxiliary degree at most 1",
        ));
    }
    let mut keep = Vec::new();
    for i in 0..family.len() {
        let partnered_later = graph.neighbours(i).iter().any(|&j| j < i);
        if !partnered_later {
            keep.push(i);
        }
    }
    Ok(family.subfamily(&keep))
}

/// Per-level counts for the dyadic diagnostics. Level `i` collects pairs
/// whose uncovered part of `V` (for `p`/`r`) or shared part of `W` (for
/// `q`/`s`) has size in `[2^i, 2^{i+1})`; `r`/`s` count the distinct sets
/// involved in such pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicLevel {
    pub level: u32,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    /// `p_i ≤ μ r_i 2^{-(i+1)}`
    pub p_holds: bool,
    /// `r_i 2^i ≤ 4μ sqrt(2ν)`
    pub r_holds: bool,
    /// `q_i ≤ μ s_i 2^{-(i+1)}`
    pub q_holds: bool,
    /// `s_i 2^i ≤ 4μ sqrt(2γ)`
    pub s_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicDiagnostics {
    pub levels: Vec<DyadicLevel>,
    pub p_holds_all: bool,
    pub r_holds_all: bool,
    pub q_holds_all: bool,
    pub s_holds_all: bool,
}

fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

/// Counts the dyadic interference statistics of the one-set-per-edge
/// subfamily against a core decomposition and evaluates the four level
/// inequalities exactly (the square-root comparisons are squared).
///
/// Levels run from 0 to `ceil(log2(max(nu, gamma)))`; empty levels are
/// reported as zeros.
pub fn dyadic_diagnostics(
    g_subfamily: &SetFamily,
    decomposition: &CoreDecomposition,
    lambda: usize,
) -> Result<DyadicDiagnostics> {
    let m = g_subfamily.len();
    for i in 0..m {
        for j in i + 1..m {
            let inter = g_subfamily
                .member(i)
                .intersection_size(g_subfamily.member(j));
            if inter != lambda {
                return Err(Error::precondition(format!(
                    "subfamily pair ({i},{j}) intersects in {inter}, not lambda = {lambda}; \
                     not a one-set-per-edge subfamily"
                )));
            }
        }
    }
    let max_level = ceil_log2(decomposition.nu.max(decomposition.gamma).max(1));
    let level_count = (max_level + 1) as usize;
    let mut p = vec![0u64; level_count];
    let mut q = vec![0u64; level_count];
    let mut r_sets = vec![vec![false; m]; level_count];
    let mut s_sets = vec![vec![false; m]; level_count];
    for i in 0..m {
        for j in i + 1..m {
            let missed = g_subfamily
                .member(i)
                .complement()
                .intersection(&g_subfamily.member(j).complement())
                .intersection_size(&decomposition.v);
            if missed >= 1 {
                let level = missed.ilog2() as usize;
                p[level] += 1;
                r_sets[level][i] = true;
                r_sets[level][j] = true;
            }
            let shared = g_subfamily
                .member(i)
                .intersection(g_subfamily.member(j))
                .intersection_size(&decomposition.w);
            if shared >= 1 {
                let level = shared.ilog2() as usize;
                q[level] += 1;
                s_sets[level][i] = true;
                s_sets[level][j] = true;
            }
        }
    }
    let mu = decomposition.mu as u128;
    let nu = decomposition.nu as u128;
    let gamma = decomposition.gamma as u128;
    let mut levels = Vec::with_capacity(level_count);
    for level in 0..level_count {
        let r = r_sets[level].iter().filter(|&&b| b).count() as u64;
        let s = s_sets[level].iter().filter(|&&b| b).count() as u64;
        let two_i = 1u128 << level;
        let p_holds = (p[level] as u128) * two_i * 2 <= mu * r as u128;
        let q_holds = (q[level] as u128) * two_i * 2 <= mu * s as u128;
        let r_scaled = r as u128 * two_i;
        let s_scaled = s as u128 * two_i;
        let r_holds = r_scaled * r_scaled <= 32 * mu * mu * nu;
        let s_holds = s_scaled * s_scaled <= 32 * mu * mu * gamma;
        levels.push(DyadicLevel {
            level: level as u32,
            p: p[level],
            q: q[level],
            r,
            s,
            p_holds,
            r_holds,
            q_holds,
            s_holds,
        });
    }
    Ok(DyadicDiagnostics {
        p_holds_all: levels.iter().all(|l| l.p_holds),
        r_holds_all: levels.iter().all(|l| l.r_holds),
        q_holds_all: levels.iter().all(|l| l.q_holds),
        s_holds_all: levels.iter().all(|l| l.s_holds),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn core_of_five_example() {
        let d = rank1_p1_structure(&five_example(), 2).unwrap();
        assert_eq!(d.v.elements(), vec![1]);
        assert_eq!(d.u.elements(), vec![2, 3, 4, 5]);
        assert_eq!((d.mu, d.nu, d.gamma), (1, 1, 0));
        assert!(d.w.is_empty());
    }

    #[test]
    fn core_of_hadamard4() {
        let d = rank1_p1_structure(&hadamard4(), 1).unwrap();
        assert!(d.v.is_empty());
        assert_eq!(d.u.elements(), vec![1, 2, 3, 4]);
        assert_eq!((d.mu, d.nu, d.gamma), (1, 0, 0));
    }

    #[test]
    fn one_pair_only_is_rejected() {
        let fam = SetFamily::build(5, &[vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        assert!(matches!(
            rank1_p1_structure(&fam, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn symmetric_difference_on_five_example() {
        let fam = five_example();
        let d = rank1_p1_structure(&fam, 2).unwrap();
        let rep =
            symmetric_difference_identity(fam.member(0), fam.member(2), &d, 2).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (2, 2));
        assert!(rep.holds);
        // pair with intersection size != lambda is rejected
        assert!(symmetric_difference_identity(fam.member(0), fam.member(1), &d, 2).is_err());
    }

    #[test]
    fn symmetric_difference_on_hadamard4() {
        let fam = hadamard4();
        let d = rank1_p1_structure(&fam, 1).unwrap();
        let g = one_per_edge_subfamily(&fam, 1).unwrap();
        assert_eq!(g.len(), 3);
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let rep =
                    symmetric_difference_identity(g.member(i), g.member(j), &d, 1).unwrap();
                assert_eq!((rep.lhs, rep.rhs), (2, 2));
            }
        }
    }

    #[test]
    fn dyadic_all_zero_on_pure_p1_families() {
        for (fam, lambda) in [(five_example(), 2), (hadamard4(), 1)] {
            let d = rank1_p1_structure(&fam, lambda).unwrap();
            let g = one_per_edge_subfamily(&fam, lambda).unwrap();
            let diag = dyadic_diagnostics(&g, &d, lambda).unwrap();
            for level in &diag.levels {
                assert_eq!((level.p, level.q, level.r, level.s), (0, 0, 0, 0));
            }
            assert!(diag.p_holds_all && diag.q_holds_all && diag.r_holds_all && diag.s_holds_all);
        }
    }

    #[test]
    fn dyadic_sees_a_shared_w_element() {
        // The five-example pairs plus two isolated sets meeting in the
        // single W element 6; gamma = 1 and one pair lands at level 0.
        let fam = SetFamily::build(
            6,
            &[
                vec![1, 2, 3],
                vec![1, 4, 5],
                vec![1, 2, 4],
                vec![1, 3, 5],
                vec![1, 2, 5, 6],
                vec![1, 3, 4, 6],
            ],
        )
        .unwrap();
        let report = crate::family::verify_almost_fisher(&fam, 1, 2);
        assert!(report.valid);
        let d = rank1_p1_structure(&fam, 2).unwrap();
        assert_eq!((d.mu, d.nu, d.gamma), (1, 1, 1));
        let g = one_per_edge_subfamily(&fam, 2).unwrap();
        assert_eq!(g.len(), 4);
        let diag = dyadic_diagnostics(&g, &d, 2).unwrap();
        assert_eq!(diag.levels.len(), 1);
        let level = diag.levels[0];
        assert_eq!((level.p, level.r), (0, 0));
        assert_eq!((level.q, level.s), (1, 2));
        // q_0 = 1 <= mu * s_0 / 2 = 1 and s_0 * 1 = 2 <= sqrt(32 * 1 * 1)
        assert!(level.q_holds && level.s_holds);
    }

    #[test]
    fn subfamily_helper_rejects_degree_two() {
        let fam = SetFamily::build(
            5,
            &[vec![1], vec![1, 2], vec![1, 2, 3]],
        )
        .unwrap();
        assert!(one_per_edge_subfamily(&fam, 0).is_err());
    }
}
