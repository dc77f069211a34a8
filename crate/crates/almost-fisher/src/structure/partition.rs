//! Heavy edges in multigraphs and partitions into parts of bounded induced
//! degree.

use crate::error::{Error, Result};
use crate::family::AuxiliaryGraph;

/// A loopless multigraph on vertices `1..=n`; parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    /// Normalized `(u, v)` with `u < v`, sorted, repeated per multiplicity.
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        let mut degrees = vec![0usize; vertex_count];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > vertex_count || b > vertex_count {
                return Err(Error::parameter(format!(
                    "edge ({a},{b}) out of range 1..={vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::parameter(format!("loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
            degrees[a - 1] += 1;
            degrees[b - 1] += 1;
        }
        normalized.sort_unstable();
        Ok(Multigraph {
            vertex_count,
            edges: normalized,
            degrees,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree of `v` (1-based) counted with multiplicity.
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v - 1]
    }
}

/// True when `e(G) > (n/k) * floor(k²/4)`, the edge count that forces a
/// heavy edge to exist; compared exactly as `e(G) * k > n * floor(k²/4)`.
pub fn heavy_edge_threshold_exceeded(graph: &Multigraph, k: usize) -> bool {
    (graph.edge_count() as u128) * (k as u128)
        > (graph.vertex_count() as u128) * ((k * k / 4) as u128)
}

/// First edge (lexicographically by endpoints) whose endpoint degree sum is
/// at least `k + 1`, or `None` when no edge qualifies. Whenever the edge
/// count exceeds `(n/k) * floor(k²/4)`, a qualifying edge exists.
pub fn find_heavy_edge(graph: &Multigraph, k: usize) -> Option<(usize, usize)> {
    let mut last = None;
    for &(u, v) in &graph.edges {
        if last == Some((u, v)) {
            continue;
        }
        last = Some((u, v));
        if graph.degree(u) + graph.degree(v) >= k + 1 {
            return Some((u, v));
        }
    }
    None
}

/// A simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::parameter(format!(
                    "edge ({a},{b}) out of range 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::parameter(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::parameter(format!("repeated edge ({a},{b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Ok(SimpleGraph {
            vertex_count,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

impl From<&AuxiliaryGraph> for SimpleGraph {
    fn from(g: &AuxiliaryGraph) -> Self {
        SimpleGraph::new(g.vertex_count(), g.edges()).expect("auxiliary graph is simple")
    }
}

/// Partitions the vertices into `targets.len()` parts with the induced
/// maximum degree of part `i` at most `targets[i]`, provided
/// `Σ (targets[i] + 1) ≥ Δ(G) + 1`.
///
/// Iterated local improvement: scan for a vertex with more than `targets[p]`
/// neighbours in its own part `p` and move it to the part `j` minimizing
/// `d_j(v) / (targets[j] + 1)` (ties to the smallest index). Each such move
/// strictly decreases the potential `Σ_i e(G[V_i]) / (targets[i] + 1)`, so
/// the loop terminates, and on termination every quota is met.
///
/// Returns the part index per vertex. Deterministic for a fixed input order.
pub fn lovasz_partition(graph: &SimpleGraph, targets: &[usize]) -> Result<Vec<usize>> {
    let t = targets.len();
    if t == 0 {
        return Err(Error::precondition("at least one part is required"));
    }
    let capacity: usize = targets.iter().map(|&d| d + 1).sum();
    if capacity < graph.max_degree() + 1 {
        return Err(Error::precondition(format!(
            "Σ(Δ_i + 1) = {capacity} is below Δ(G) + 1 = {}",
            graph.max_degree() + 1
        )));
    }
    let n = graph.vertex_count();
    let mut assignment = vec![0usize; n];
    // counts[v][p] = number of neighbours of v currently in part p
    let mut counts = vec![vec![0usize; t]; n];
    for v in 0..n {
        counts[v][0] = graph.degree(v);
    }
    loop {
        let violator = (0..n).find(|&v| {
            let p = assignment[v];
            counts[v][p] > targets[p]
        });
        let Some(v) = violator else {
            break;
        };
        let from = assignment[v];
        // exact comparison of d_j(v)/(targets[j]+1) without rationals
        let mut best = from;
        for j in 0..t {
            if counts[v][j] * (targets[best] + 1) < counts[v][best] * (targets[j] + 1) {
                best = j;
            }
        }
        debug_assert_ne!(best, from, "a strictly improving part must exist");
        assignment[v] = best;
        for &w in graph.neighbours(v) {
            counts[w][from] -= 1;
            counts[w][best] += 1;
        }
    }
    Ok(assignment)
}

/// Groups a part assignment into vertex lists, one per part.
pub fn partition_parts(assignment: &[usize], part_count: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); part_count];
    for (v, &p) in assignment.iter().enumerate() {
        parts[p].push(v);
    }
    parts
}

/// Maximum induced degree of each part under an assignment.
pub fn induced_degrees(graph: &SimpleGraph, assignment: &[usize], part_count: usize) -> Vec<usize> {
    let mut max = vec![0usize; part_count];
    for v in 0..graph.vertex_count() {
        let p = assignment[v];
        let d = graph
            .neighbours(v)
            .iter()
            .filter(|&&w| assignment[w] == p)
            .count();
        max[p] = max[p].max(d);
    }
    max
}
