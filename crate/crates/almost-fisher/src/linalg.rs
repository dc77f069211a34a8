//! Exact integer linear algebra for incidence and intersection matrices.
//!
//! Every rank and span decision here is made over the rationals with
//! arbitrary-precision integer arithmetic (fraction-free Bareiss
//! elimination). Floating point is deliberately absent: rank decisions at
//! determinant boundaries must be exact.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{build_auxiliary_graph, ElementSet, SetFamily};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Submatrix at the given row and column indices, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Appends a column of ones.
    fn augment_with_ones(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            out.set(i, self.cols, BigInt::one());
        }
        out
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(matrix: &IntMatrix) -> BigInt {
    assert_eq!(matrix.rows, matrix.cols, "determinant of non-square matrix");
    let n = matrix.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        let tmp = a.get(k, j).clone();
                        a.set(k, j, a.get(r, j).clone());
                        a.set(r, j, tmp);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    a.get(n - 1, n - 1) * BigInt::from(sign)
}

/// Witness for an exact rank computation: the pivot rows and columns select
/// a square submatrix with nonzero determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Rank over the rationals via fraction-free Bareiss elimination.
///
/// Pivots are chosen deterministically (leftmost column, then smallest
/// remaining row), so certificates are reproducible.
pub fn exact_rank(matrix: &IntMatrix) -> RankCertificate {
    let mut a = matrix.clone();
    let rows = a.rows;
    let cols = a.cols;
    // row_order[i] = original index of the row currently in position i
    let mut row_order: Vec<usize> = (0..rows).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(p, j).clone());
                a.set(p, j, tmp);
            }
            row_order.swap(r, p);
        }
        pivot_rows.push(row_order[r]);
        pivot_cols.push(c);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (a.get(r, c) * a.get(i, j) - a.get(i, c) * a.get(r, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = a.get(r, c).clone();
        r += 1;
    }
    RankCertificate {
        rank: pivot_rows.len(),
        pivot_rows,
        pivot_cols,
    }
}

/// Checks a certificate against its matrix: the pivot submatrix must be
/// square of size `rank` with nonzero determinant.
pub fn verify_rank_certificate(matrix: &IntMatrix, cert: &RankCertificate) -> bool {
    if cert.pivot_rows.len() != cert.rank || cert.pivot_cols.len() != cert.rank {
        return false;
    }
    if cert.rank > matrix.rows.min(matrix.cols) {
        return false;
    }
    let sub = matrix.submatrix(&cert.pivot_rows, &cert.pivot_cols);
    !determinant(&sub).is_zero()
}

/// True iff the all-ones column vector lies in the exact column span.
pub fn spans_all_ones(matrix: &IntMatrix) -> bool {
    if matrix.rows == 0 {
        return true; // zero-length vector is vacuously spanned
    }
    let base = exact_rank(matrix).rank;
    let augmented = exact_rank(&matrix.augment_with_ones()).rank;
    base == augmented
}

/// The n-by-m {0,1} element-set incidence matrix; column `i` is the
/// characteristic vector of member `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    matrix: IntMatrix,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn entry(&self, element_row: usize, member_col: usize) -> u8 {
        if self.matrix.get(element_row, member_col).is_zero() {
            0
        } else {
            1
        }
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

pub fn incidence_matrix(family: &SetFamily) -> IncidenceMatrix {
    let n = family.ground_size();
    let m = family.len();
    let mut matrix = IntMatrix::zero(n, m);
    for (i, member) in family.members().iter().enumerate() {
        for e in member.elements() {
            matrix.set(e - 1, i, BigInt::one());
        }
    }
    IncidenceMatrix { matrix }
}

/// The m-by-m matrix with entry `(i, j)` equal to `|F_i ∩ F_j| - lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    lambda: usize,
    matrix: IntMatrix,
}

impl IntersectionMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.get(i, j)
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The diagonal block at the given member indices.
    pub fn block(&self, indices: &[usize]) -> IntMatrix {
        self.matrix.submatrix(indices, indices)
    }
}

/// Computed directly from the pairwise intersection sizes. The identity
/// `M = AᵀA - λJ` is kept as a separately tested invariant, so the two
/// routes stay independent.
pub fn intersection_matrix(family: &SetFamily, lambda: usize) -> IntersectionMatrix {
    let m = family.len();
    let lam = BigInt::from(lambda);
    let mut matrix = IntMatrix::zero(m, m);
    for i in 0..m {
        for j in i..m {
            let size = family.member(i).intersection_size(family.member(j));
            let v = BigInt::from(size) - &lam;
            matrix.set(i, j, v.clone());
            matrix.set(j, i, v);
        }
    }
    IntersectionMatrix { lambda, matrix }
}

/// Outcome of the rank sandwich `rank(A) - 1 <= rank(M) <= rank(A) + 1`.
///
/// `holds` is a theorem guarantee; a false value signals an implementation
/// bug, which is why this returns data instead of asserting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSandwichReport {
    pub rank_a: usize,
    pub rank_m: usize,
    pub holds: bool,
    /// `rank(M) = rank(A) + 1` may only happen when the columns of `M`
    /// span the all-ones vector.
    pub equality_condition_consistent: bool,
}

pub fn check_rank_sandwich(family: &SetFamily, lambda: usize) -> RankSandwichReport {
    let a = incidence_matrix(family);
    let m = intersection_matrix(family, lambda);
    let rank_a = exact_rank(a.as_matrix()).rank;
    let rank_m = exact_rank(m.as_matrix()).rank;
    let holds = rank_a.saturating_sub(1) <= rank_m && rank_m <= rank_a + 1;
    let equality_condition_consistent = rank_m != rank_a + 1 || spans_all_ones(m.as_matrix());
    RankSandwichReport {
        rank_a,
        rank_m,
        holds,
        equality_condition_consistent,
    }
}

/// A sum relation `v_i + v_j = v_k + v_l` between four {0,1}-vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumRelation {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

/// Clause-by-clause report for the {0,1}-vector lemma on vectors with a
/// common witness inner product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorLemmaReport {
    /// Every triple of the given vectors is linearly independent.
    pub a_holds: bool,
    /// `v_1 - v_2` and `v_1 - v_3` are linearly independent.
    pub b_holds: bool,
    /// Meaningful only when exactly four vectors are given.
    pub c_dependent: bool,
    /// The lexicographically least relabelling with `v_i + v_j = v_k + v_l`,
    /// when four vectors are given and they are dependent.
    pub c_relation: Option<SumRelation>,
    /// Indices of four linearly independent vectors, when five are given.
    pub d_basis: Option<[usize; 4]>,
}

fn columns_matrix(vectors: &[&ElementSet]) -> IntMatrix {
    let n = vectors.first().map_or(0, |v| v.width());
    let mut m = IntMatrix::zero(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for e in v.elements() {
            m.set(e - 1, j, BigInt::one());
        }
    }
    m
}

fn vectors_independent(vectors: &[&ElementSet]) -> bool {
    exact_rank(&columns_matrix(vectors)).rank == vectors.len()
}

fn rational_dot(witness: &[BigRational], v: &ElementSet) -> BigRational {
    v.elements()
        .iter()
        .fold(BigRational::zero(), |acc, &e| acc + &witness[e - 1])
}

/// Checks the clauses of the {0,1}-vector lemma on 3 to 5 distinct non-zero
/// vectors admitting a rational witness `w` with `w · v_i = lambda != 0`.
///
/// The hypothesis is verified first; a violation is an error, not a report.
pub fn check_vector_lemma(
    vectors: &[ElementSet],
    witness: &[BigRational],
    lambda: &BigRational,
) -> Result<VectorLemmaReport> {
    let t = vectors.len();
    if !(3..=5).contains(&t) {
        return Err(Error::precondition(format!(
            "vector lemma takes 3 to 5 vectors, got {t}"
        )));
    }
    if lambda.is_zero() {
        return Err(Error::precondition("lambda must be nonzero"));
    }
    let n = vectors[0].width();
    if witness.len() != n || vectors.iter().any(|v| v.width() != n) {
        return Err(Error::precondition(
            "vectors and witness must share one dimension",
        ));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.is_empty() {
            return Err(Error::precondition(format!("vector {i} is zero")));
        }
        if rational_dot(witness, v) != *lambda {
            return Err(Error::precondition(format!(
                "witness inner product with vector {i} differs from lambda"
            )));
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            if vectors[i] == vectors[j] {
                return Err(Error::precondition(format!(
                    "vectors {i} and {j} are equal"
                )));
            }
        }
    }

    let mut a_holds = true;
    for i in 0..t {
        for j in i + 1..t {
            for k in j + 1..t {
                if !vectors_independent(&[&vectors[i], &vectors[j], &vectors[k]]) {
                    a_holds = false;
                }
            }
        }
    }

    // v1 - v2 and v1 - v3 are independent iff v1, v2, v3 span a space of
    // dimension at least... directly: rank of the two difference columns.
    let mut diff = IntMatrix::zero(n, 2);
    for e in 1..=n {
        let v1 = i64::from(vectors[0].contains(e));
        let v2 = i64::from(vectors[1].contains(e));
        let v3 = i64::from(vectors[2].contains(e));
        diff.set(e - 1, 0, BigInt::from(v1 - v2));
        diff.set(e - 1, 1, BigInt::from(v1 - v3));
    }
    let b_holds = exact_rank(&diff).rank == 2;

    let mut c_dependent = false;
    let mut c_relation = None;
    if t == 4 {
        let all: Vec<&ElementSet> = vectors.iter().collect();
        c_dependent = !vectors_independent(&all);
        if c_dependent {
            // splits of {0,1,2,3} into two pairs, lexicographic order
            for (left, right) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
                let sum_eq = (1..=n).all(|e| {
                    let l = u8::from(vectors[left.0].contains(e))
                        + u8::from(vectors[left.1].contains(e));
                    let r = u8::from(vectors[right.0].contains(e))
                        + u8::from(vectors[right.1].contains(e));
                    l == r
                });
                if sum_eq {
                    c_relation = Some(SumRelation { left, right });
                    break;
                }
            }
        }
    }

    let mut d_basis = None;
    if t == 5 {
        'outer: for skip in 0..5 {
            let chosen: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
            let cols: Vec<&ElementSet> = chosen.iter().map(|&i| &vectors[i]).collect();
            if vectors_independent(&cols) {
                d_basis = Some([chosen[0], chosen[1], chosen[2], chosen[3]]);
                break 'outer;
            }
        }
    }

    Ok(VectorLemmaReport {
        a_holds,
        b_holds,
        c_dependent,
        c_relation,
        d_basis,
    })
}

/// Block-diagonal decomposition of the intersection matrix by auxiliary
/// graph components: the sum of block ranks, for comparison against the
/// rank of the full matrix.
pub fn component_rank_sum(family: &SetFamily, lambda: usize) -> usize {
    let m = intersection_matrix(family, lambda);
    let g = build_auxiliary_graph(family, lambda);
    g.components()
        .iter()
        .map(|comp| exact_rank(&m.block(comp)).rank)
        .sum()
}
