//! Explicit families: the Hadamard construction and its adjoined variants,
//! extremal almost-disjoint families, the size-`2n-2` construction for
//! three bad intersections per set, and sunflower baselines.

use crate::error::{Error, Result};
use crate::family::{ElementSet, SetFamily};

/// A square {±1} matrix with pairwise orthogonal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    /// Row-major entries, each `+1` or `-1`.
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// Validates entries and exact row orthogonality (`H Hᵀ = n I`).
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::parameter("matrix must be non-empty"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::parameter("matrix must be square"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            for &v in row {
                if v != 1 && v != -1 {
                    return Err(Error::parameter(format!("entry {v} is not +1 or -1")));
                }
                entries.push(v);
            }
        }
        let h = HadamardMatrix { order: n, entries };
        for i in 0..n {
            for j in i + 1..n {
                let dot: i64 = (0..n)
                    .map(|c| h.entry(i, c) as i64 * h.entry(j, c) as i64)
                    .sum();
                if dot != 0 {
                    return Err(Error::parameter(format!(
                        "rows {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Sign-normalized copy: the last column and the first row all ones.
    pub fn normalized(&self) -> HadamardMatrix {
        let n = self.order;
        let mut entries = self.entries.clone();
        for i in 0..n {
            if entries[i * n + (n - 1)] == -1 {
                for j in 0..n {
                    entries[i * n + j] = -entries[i * n + j];
                }
            }
        }
        for j in 0..n {
            if entries[j] == -1 {
                for i in 0..n {
                    entries[i * n + j] = -entries[i * n + j];
                }
            }
        }
        HadamardMatrix { order: n, entries }
    }
}

/// Sylvester doubling `H_{2n} = [[H, H], [H, -H]]` for any power-of-two
/// order.
pub fn hadamard_sylvester(order: usize) -> Result<HadamardMatrix> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::parameter(format!(
            "order {order} is not a power of two"
        )));
    }
    let mut entries = vec![1i8];
    let mut n = 1;
    while n < order {
        let mut next = vec![0i8; 4 * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                next[i * 2 * n + j] = v;
                next[i * 2 * n + (j + n)] = v;
                next[(i + n) * 2 * n + j] = v;
                next[(i + n) * 2 * n + (j + n)] = -v;
            }
        }
        entries = next;
        n *= 2;
    }
    Ok(HadamardMatrix { order, entries })
}

/// The family of `2n - 2` sets obtained from a Hadamard matrix of order
/// `n`: after normalizing so one column is all ones, every other column
/// contributes the set of its `+1` rows together with that set's
/// complement. The result is 1-almost `(n/4)`-Fisher.
///
/// Sets are emitted as pairs (set, complement) with the pairs ordered by
/// their first set, so output is reproducible byte for byte.
pub fn hadamard_family(h: &HadamardMatrix) -> Result<SetFamily> {
    let n = h.order();
    if n < 4 || n % 4 != 0 {
        return Err(Error::parameter(format!(
            "order {n} must be a multiple of 4 and at least 4"
        )));
    }
    let h = h.normalized();
    let mut primary: Vec<ElementSet> = (0..n - 1)
        .map(|j| {
            let mut s = ElementSet::empty(n);
            for i in 0..n {
                if h.entry(i, j) == 1 {
                    s.insert(i + 1).unwrap();
                }
            }
            s
        })
        .collect();
    primary.sort();
    let mut members = Vec::with_capacity(2 * n - 2);
    for s in primary {
        let c = s.complement();
        members.push(s);
        members.push(c);
    }
    SetFamily::from_members(n, members)
}

/// Lambda for which [`hadamard_family`] output is 1-almost Fisher.
pub fn hadamard_lambda(order: usize) -> usize {
    order / 4
}

/// A maximum k-almost disjoint family: the edges of a `(k/2)`-regular
/// graph H on `[n]` (for even k; for odd k, H is a disjoint union of
/// complete bipartite blocks `K_{(k-1)/2,(k+1)/2}`), plus all singletons
/// and the empty set. Size is exactly `(n/k) * floor(k²/4) + n + 1`.
///
/// The regular graph is pinned for reproducibility: for `k/2` even,
/// circulant offsets `1..=k/4`; for `k/2 = 1`, the consecutive matching
/// `{2i-1, 2i}`; for larger odd `k/2`, circulant offsets plus the
/// antipodal matching `{v, v + n/2}`.
pub fn almost_disjoint_family(n: usize, k: usize) -> Result<SetFamily> {
    if n == 0 || k == 0 {
        return Err(Error::parameter("n and k must be positive"));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if k % 2 == 0 {
        let d = k / 2;
        if d > n - 1 {
            return Err(Error::parameter(format!(
                "k/2 = {d} exceeds n - 1 = {}",
                n - 1
            )));
        }
        if (k * n / 2) % 2 != 0 {
            return Err(Error::parameter(format!(
                "kn/2 = {} must be even for a (k/2)-regular graph",
                k * n / 2
            )));
        }
        let cycles = d / 2;
        for offset in 1..=cycles {
            for v in 1..=n {
                let w = (v - 1 + offset) % n + 1;
                if v < w {
                    edges.push((v, w));
                } else {
                    edges.push((w, v));
                }
            }
        }
        if d % 2 == 1 {
            // d odd forces n even here (kn/2 = dn even)
            if d == 1 {
                for i in 0..n / 2 {
                    edges.push((2 * i + 1, 2 * i + 2));
                }
            } else {
                for v in 1..=n / 2 {
                    edges.push((v, v + n / 2));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != d * n / 2 {
            return Err(Error::parameter(format!(
                "no simple {d}-regular circulant on {n} vertices with the pinned offsets"
            )));
        }
    } else {
        if n % k != 0 {
            return Err(Error::parameter(format!("odd k = {k} must divide n = {n}")));
        }
        let small = (k - 1) / 2;
        for block in 0..n / k {
            let base = block * k;
            for a in 1..=small {
                for b in small + 1..=k {
                    edges.push((base + a, base + b));
                }
            }
        }
    }
    let mut sets: Vec<Vec<usize>> = edges.into_iter().map(|(a, b)| vec![a, b]).collect();
    for v in 1..=n {
        sets.push(vec![v]);
    }
    sets.push(vec![]);
    SetFamily::build(n, &sets)
}

/// Exact size of [`almost_disjoint_family`] output.
pub fn almost_disjoint_size(n: usize, k: usize) -> usize {
    n * (k * k / 4) / k + n + 1
}

/// Appends `extra` fresh elements to the ground set and to every member
/// set. All intersection sizes grow by exactly `extra`, so a 1-almost
/// lambda-Fisher base becomes 1-almost (lambda + extra)-Fisher and the
/// auxiliary graph is preserved.
pub fn adjoined_family(base: &SetFamily, extra: usize) -> Result<SetFamily> {
    if extra == 0 {
        return Err(Error::parameter("extra must be positive"));
    }
    let n0 = base.ground_size();
    let n = n0 + extra;
    let mut members = Vec::with_capacity(base.len());
    for m in base.members() {
        let mut s = m.widened(n);
        for e in n0 + 1..=n {
            s.insert(e)?;
        }
        members.push(s);
    }
    SetFamily::from_members(n, members)
}

/// The 3-almost m-Fisher family of `2n - 2` sets on `n = 4m + t` elements:
/// the Hadamard construction on `[4m]`, plus, for the first `t`
/// complement pairs `{F_{i,1}, F_{i,2}}`, the sets `F_{i,j} ∪ {4m + i}`.
pub fn k3_family(m: usize, t: usize) -> Result<SetFamily> {
    if m == 0 {
        return Err(Error::parameter("m must be positive"));
    }
    let order = 4 * m;
    if !order.is_power_of_two() {
        return Err(Error::parameter(format!(
            "no Hadamard matrix of order {order} available natively; \
             supply one from a file"
        )));
    }
    k3_family_from(&hadamard_sylvester(order)?, t)
}

/// [`k3_family`] with an explicitly supplied Hadamard matrix of order `4m`.
pub fn k3_family_from(h: &HadamardMatrix, t: usize) -> Result<SetFamily> {
    let order = h.order();
    if order % 4 != 0 || order < 4 {
        return Err(Error::parameter("matrix order must be a multiple of 4"));
    }
    let m = order / 4;
    if t == 0 || t > 4 * m - 1 {
        return Err(Error::parameter(format!(
            "t = {t} out of range 1..={}",
            4 * m - 1
        )));
    }
    let base = hadamard_family(h)?;
    let n = order + t;
    let mut members: Vec<ElementSet> = base.members().iter().map(|s| s.widened(n)).collect();
    for i in 0..t {
        for j in 0..2 {
            let mut s = base.member(2 * i + j).widened(n);
            s.insert(order + i + 1)?;
            members.push(s);
        }
    }
    let family = SetFamily::from_members(n, members)?;
    debug_assert_eq!(family.len(), 2 * n - 2);
    debug_assert!(crate::family::verify_almost_fisher(&family, 3, m).valid);
    Ok(family)
}

/// The lambda-Fisher baseline: a common core `{1..lambda}` extended by one
/// fresh element per set, giving `n - lambda` sets with every pairwise
/// intersection equal to the core.
pub fn fisher_sunflower(n: usize, lambda: usize) -> Result<SetFamily> {
    if lambda >= n {
        return Err(Error::parameter(format!(
            "lambda = {lambda} must be below n = {n}"
        )));
    }
    let core: Vec<usize> = (1..=lambda).collect();
    let sets: Vec<Vec<usize>> = (lambda + 1..=n)
        .map(|j| {
            let mut s = core.clone();
            s.push(j);
            s
        })
        .collect();
    SetFamily::build(n, &sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_auxiliary_graph, verify_almost_fisher};

    #[test]
    fn sylvester_orders() {
        let h1 = hadamard_sylvester(1).unwrap();
        assert_eq!(h1.rows(), vec![vec![1]]);
        let h2 = hadamard_sylvester(2).unwrap();
        assert_eq!(h2.rows(), vec![vec![1, 1], vec![1, -1]]);
        let h4 = hadamard_sylvester(4).unwrap();
        // orthogonality is validated exactly
        assert!(HadamardMatrix::new(h4.rows()).is_ok());
        assert!(hadamard_sylvester(3).is_err());
        assert!(hadamard_sylvester(0).is_err());
    }

    #[test]
    fn hadamard4_family_is_all_two_subsets() {
        let fam = hadamard_family(&hadamard_sylvester(4).unwrap()).unwrap();
        let sets: Vec<Vec<usize>> = fam.members().iter().map(|s| s.elements()).collect();
        assert_eq!(
            sets,
            vec![
                vec![1, 2],
                vec![3, 4],
                vec![1, 3],
                vec![2, 4],
                vec![1, 4],
                vec![2, 3],
            ]
        );
        assert!(verify_almost_fisher(&fam, 1, 1).valid);
    }

    #[test]
    fn hadamard_family_sizes_and_verification() {
        for order in [4usize, 8, 16] {
            let fam = hadamard_family(&hadamard_sylvester(order).unwrap()).unwrap();
            assert_eq!(fam.len(), 2 * order - 2);
            let lambda = hadamard_lambda(order);
            let report = verify_almost_fisher(&fam, 1, lambda);
            assert!(report.valid, "order {order}");
            assert_eq!(report.max_bad_degree, 1);
            // the bad partner of each set is exactly its complement
            let g = build_auxiliary_graph(&fam, lambda);
            for &(i, j) in g.edges() {
                assert_eq!(&fam.member(i).complement(), fam.member(j));
            }
            assert_eq!(g.edges().len(), fam.len() / 2);
        }
    }

    #[test]
    fn hadamard_family_rejects_order_two() {
        assert!(hadamard_family(&hadamard_sylvester(2).unwrap()).is_err());
    }

    #[test]
    fn almost_disjoint_examples() {
        let fam = almost_disjoint_family(4, 2).unwrap();
        assert_eq!(fam.len(), 7);
        assert_eq!(almost_disjoint_size(4, 2), 7);
        assert!(verify_almost_fisher(&fam, 2, 0).valid);
        let edge_sets: Vec<Vec<usize>> = fam
            .members()
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| s.elements())
            .collect();
        assert_eq!(edge_sets, vec![vec![1, 2], vec![3, 4]]);

        let fam = almost_disjoint_family(6, 3).unwrap();
        assert_eq!(fam.len(), 11);
        assert!(verify_almost_fisher(&fam, 3, 0).valid);

        // k odd must divide n
        assert!(almost_disjoint_family(4, 3).is_err());
        // 1-regular graph on odd n does not exist
        assert!(almost_disjoint_family(5, 2).is_err());
    }

    #[test]
    fn almost_disjoint_sizes_match_formula() {
        for (n, k) in [(4, 2), (8, 2), (6, 3), (12, 3), (5, 1), (8, 4), (12, 6), (10, 5)] {
            let fam = almost_disjoint_family(n, k).unwrap();
            assert_eq!(fam.len(), almost_disjoint_size(n, k), "({n},{k})");
            assert!(verify_almost_fisher(&fam, k, 0).valid, "({n},{k})");
        }
    }

    #[test]
    fn adjoined_family_shifts_lambda() {
        let base = hadamard_family(&hadamard_sylvester(4).unwrap()).unwrap();
        let fam = adjoined_family(&base, 1).unwrap();
        assert_eq!(fam.ground_size(), 5);
        assert_eq!(fam.len(), 6);
        assert!(verify_almost_fisher(&fam, 1, 2).valid);
        // auxiliary graph is preserved exactly
        assert_eq!(
            build_auxiliary_graph(&base, 1).edges(),
            build_auxiliary_graph(&fam, 2).edges()
        );

        let base8 = hadamard_family(&hadamard_sylvester(8).unwrap()).unwrap();
        let fam8 = adjoined_family(&base8, 2).unwrap();
        assert_eq!((fam8.ground_size(), fam8.len()), (10, 14));
        assert!(verify_almost_fisher(&fam8, 1, 4).valid);

        assert!(adjoined_family(&base, 0).is_err());
    }

    #[test]
    fn k3_family_smallest_case() {
        let fam = k3_family(1, 1).unwrap();
        assert_eq!(fam.ground_size(), 5);
        assert_eq!(fam.len(), 8);
        assert!(verify_almost_fisher(&fam, 3, 1).valid);
        let sets: Vec<Vec<usize>> = fam.members().iter().map(|s| s.elements()).collect();
        assert!(sets.contains(&vec![1, 2, 5]));
        assert!(sets.contains(&vec![3, 4, 5]));
        // {1,2} has exactly the bad partners {3,4}, {1,2,5}, {3,4,5}
        let g = build_auxiliary_graph(&fam, 1);
        let idx = sets.iter().position(|s| s == &vec![1, 2]).unwrap();
        let mut partners: Vec<Vec<usize>> = g
            .neighbours(idx)
            .iter()
            .map(|&j| fam.member(j).elements())
            .collect();
        partners.sort();
        assert_eq!(
            partners,
            vec![vec![1, 2, 5], vec![3, 4], vec![3, 4, 5]]
        );
    }

    #[test]
    fn k3_family_larger_case() {
        let fam = k3_family(2, 3).unwrap();
        assert_eq!(fam.ground_size(), 11);
        assert_eq!(fam.len(), 20);
        assert!(verify_almost_fisher(&fam, 3, 2).valid);
    }

    #[test]
    fn k3_family_range_errors() {
        assert!(k3_family(1, 4).is_err());
        assert!(k3_family(1, 0).is_err());
        // order 12 is not a power of two, so not available natively
        assert!(k3_family(3, 1).is_err());
    }

    #[test]
    fn sunflower_examples() {
        let fam = fisher_sunflower(5, 2).unwrap();
        let sets: Vec<Vec<usize>> = fam.members().iter().map(|s| s.elements()).collect();
        assert_eq!(sets, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]);
        assert!(verify_almost_fisher(&fam, 0, 2).valid);

        let singletons = fisher_sunflower(4, 0).unwrap();
        assert_eq!(singletons.len(), 4);
        assert!(singletons.members().iter().all(|s| s.len() == 1));

        assert!(fisher_sunflower(3, 3).is_err());
    }
}
