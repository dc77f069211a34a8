//! Exact evaluation of every upper bound on the maximum family size,
//! with asymptotic statements flagged rather than silently truncated.
//!
//! All values are exact rationals. Square roots are replaced by the integer
//! ceiling of the root so that each reported value stays a true upper
//! bound.

use std::fmt;

use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Identifier of the bound a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// `(k+1)n + 1`, improving to `(k+1)n` for nonzero lambda.
    Trivial,
    /// `(n/k) floor(k²/4) + n + 1` for lambda = 0.
    AlmostDisjoint,
    /// `2(n-1)` for one bad intersection per set, `n ≥ 3`.
    K1Vu,
    /// `max{n + 2, 8 min{lambda, (n-lambda)/3}}`, error term dropped.
    K1Refined,
    /// `n + r + 1` in terms of the rank-1 single-edge count `r`.
    K1BoundI,
    /// `16 mu`.
    K1BoundII,
    /// `8 mu`, exact for families consisting only of rank-1 single edges.
    K1BoundIII,
    /// `2n - 2` for two bad intersections per set.
    K2PartI,
    /// `(5n + 4 min{lambda, (n-lambda)/3} + 7) / 3`.
    K2PartII,
    /// `(3/2)n + 3 lambda + (1/2) sqrt(lambda n) + 90`.
    K2PartIII,
    /// `(2n - 2) ceil((k+1)/3)`.
    LargeK,
    /// `(3/2) n ceil((k+1)/3)`, the o(1) factor dropped.
    LargeKAsymptotic,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::Trivial => "trivial",
            TheoremId::AlmostDisjoint => "almost-disjoint",
            TheoremId::K1Vu => "k1-vu",
            TheoremId::K1Refined => "k1-refined",
            TheoremId::K1BoundI => "k1-bound-i",
            TheoremId::K1BoundII => "k1-bound-ii",
            TheoremId::K1BoundIII => "k1-bound-iii",
            TheoremId::K2PartI => "k2-i",
            TheoremId::K2PartII => "k2-ii",
            TheoremId::K2PartIII => "k2-iii",
            TheoremId::LargeK => "largek",
            TheoremId::LargeKAsymptotic => "largek-asymptotic",
        };
        f.write_str(s)
    }
}

/// One evaluated bound: an exact rational value, its floor, and whether an
/// asymptotic error term was dropped from the statement. Bounds flagged
/// asymptotic are never used for search pruning.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub value: BigRational,
    pub floor_value: BigInt,
    pub asymptotic: bool,
    pub applicable: bool,
    pub note: String,
}

impl BoundReport {
    fn new(theorem: TheoremId, value: BigRational, asymptotic: bool) -> Self {
        let floor_value = value.floor().to_integer();
        BoundReport {
            theorem,
            value,
            floor_value,
            asymptotic,
            applicable: true,
            note: String::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.applicable = false;
        self.note = reason.into();
        self
    }
}

fn rat(n: usize) -> BigRational {
    BigRational::from_usize(n).unwrap()
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Smallest integer `s` with `s² ≥ x`.
pub fn isqrt_ceil(x: &BigInt) -> BigInt {
    if x.is_negative() {
        panic!("isqrt_ceil of negative value");
    }
    let root = x.sqrt();
    if &(&root * &root) == x {
        root
    } else {
        root + BigInt::one()
    }
}

/// `min{lambda, (n - lambda)/3}` as an exact rational.
fn min_lambda_term(n: usize, lambda: usize) -> BigRational {
    let a = rat(lambda);
    let b = (rat(n) - rat(lambda)) / rat(3);
    if a <= b {
        a
    } else {
        b
    }
}

/// `(k+1)n + 1` in general, `(k+1)n` when lambda is nonzero. Exact.
pub fn bound_trivial(n: usize, k: usize, lambda: usize) -> BoundReport {
    let base = rat(k + 1) * rat(n);
    let value = if lambda == 0 { base + rat(1) } else { base };
    BoundReport::new(TheoremId::Trivial, value, false)
}

/// `(n/k) floor(k²/4) + n + 1` for almost-disjoint families. Exact.
pub fn bound_almost_disjoint(n: usize, k: usize) -> BoundReport {
    let value = ratio(n, k) * rat(k * k / 4) + rat(n) + rat(1);
    BoundReport::new(TheoremId::AlmostDisjoint, value, false)
}

/// Both bounds for one bad intersection per set.
#[derive(Debug, Clone, PartialEq)]
pub struct K1Bounds {
    /// Exact `2(n-1)`, valid for `n ≥ 3`; attained only when
    /// `lambda = n/4` and a Hadamard matrix of order `n` exists.
    pub vu: BoundReport,
    /// `max{n + 2, 8 min{lambda, (n-lambda)/3}}` with the `o(lambda)`
    /// term dropped, hence flagged asymptotic.
    pub refined: BoundReport,
}

pub fn bound_k1(n: usize, lambda: usize) -> K1Bounds {
    let vu = if n >= 3 {
        BoundReport::new(TheoremId::K1Vu, rat(2) * (rat(n) - rat(1)), false)
    } else {
        BoundReport::new(TheoremId::K1Vu, rat(2) * (rat(n) - rat(1)), false)
            .inapplicable("requires n >= 3")
    };
    let eight_min = rat(8) * min_lambda_term(n, lambda);
    let n_plus_2 = rat(n) + rat(2);
    let refined_value = if eight_min > n_plus_2 { eight_min } else { n_plus_2 };
    let refined = BoundReport::new(TheoremId::K1Refined, refined_value, true)
        .with_note("o(lambda) error term dropped");
    K1Bounds { vu, refined }
}

/// `m ≤ n + r + 1` where `r` counts the rank-1 single edges. Exact.
pub fn bound_i(n: usize, r: usize) -> BoundReport {
    BoundReport::new(TheoremId::K1BoundI, rat(n) + rat(r) + rat(1), false)
}

/// `m ≤ 16 mu`. Exact.
pub fn bound_ii(mu: usize) -> BoundReport {
    BoundReport::new(TheoremId::K1BoundII, rat(16) * rat(mu), false)
}

/// `m ≤ 8 mu` for families consisting only of rank-1 single edges. Exact
/// in that pure case; the general statement carries an o(mu) term.
pub fn bound_iii_pure_p1(mu: usize) -> BoundReport {
    BoundReport::new(TheoremId::K1BoundIII, rat(8) * rat(mu), false)
        .with_note("exact for pure rank-1 single-edge families")
}

/// Scale of the dropped error term in the refined k = 1 bound,
/// `sqrt(nu) log nu + sqrt(gamma) log gamma`, rounded up per summand.
/// Informational only; its constant is not certified.
pub fn k1_error_term_scale(nu: usize, gamma: usize) -> BigInt {
    let term = |x: usize| -> BigInt {
        if x <= 1 {
            BigInt::zero()
        } else {
            isqrt_ceil(&BigInt::from(x)) * BigInt::from(x.next_power_of_two().trailing_zeros())
        }
    };
    term(nu) + term(gamma)
}

/// All three bounds for two bad intersections per set. The theorem
/// guarantees them for n sufficiently large; values are reported for all n
/// with that proviso noted.
#[derive(Debug, Clone, PartialEq)]
pub struct K2Bounds {
    /// `2n - 2`, exact.
    pub part_i: BoundReport,
    /// `(5n + 4 min{lambda, (n-lambda)/3} + 7)/3`, exact.
    pub part_ii: BoundReport,
    /// `(3/2)n + 3 lambda + (1/2) sqrt(lambda n) + 90` with the root
    /// rounded up, so the value stays an upper bound.
    pub part_iii: BoundReport,
}

pub fn bound_k2(n: usize, lambda: usize) -> K2Bounds {
    let proviso = "guaranteed for n sufficiently large";
    let part_i = BoundReport::new(TheoremId::K2PartI, rat(2) * rat(n) - rat(2), false)
        .with_note(proviso);
    let part_ii = BoundReport::new(
        TheoremId::K2PartII,
        (rat(5) * rat(n) + rat(4) * min_lambda_term(n, lambda) + rat(7)) / rat(3),
        false,
    )
    .with_note(proviso);
    let root = isqrt_ceil(&BigInt::from(lambda * n));
    let part_iii = BoundReport::new(
        TheoremId::K2PartIII,
        ratio(3, 2) * rat(n)
            + rat(3) * rat(lambda)
            + BigRational::new(root, BigInt::from(2))
            + rat(90),
        false,
    )
    .with_note("sqrt rounded up; guaranteed for n sufficiently large and lambda = o(n)");
    K2Bounds {
        part_i,
        part_ii,
        part_iii,
    }
}

/// The general-k bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeKBounds {
    /// `(2n - 2) ceil((k+1)/3)`, exact.
    pub exact: BoundReport,
    /// `(3/2) n ceil((k+1)/3)` with the o(1) factor dropped; flagged
    /// asymptotic, stated for lambda = o(n).
    pub asymptotic: BoundReport,
}

pub fn bound_largek(n: usize, k: usize) -> Result<LargeKBounds> {
    if k == 0 {
        return Err(Error::parameter("k must be at least 1"));
    }
    let parts = rat((k + 1).div_ceil(3));
    let exact = BoundReport::new(
        TheoremId::LargeK,
        (rat(2) * rat(n) - rat(2)) * parts.clone(),
        false,
    );
    let asymptotic = BoundReport::new(
        TheoremId::LargeKAsymptotic,
        ratio(3, 2) * rat(n) * parts,
        true,
    )
    .with_note("o(1) factor dropped; stated for lambda = o(n)");
    Ok(LargeKBounds { exact, asymptotic })
}

/// Upper bounds on the low-rank structure counts for `lambda ≥ 1`:
/// at most `4 min{lambda, (n-lambda)/3}` rank-1 single edges, at most one
/// rank-2 four-cycle, at most `2 lambda + sqrt(lambda n) + 175` rank-3
/// five-cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureCountBounds {
    pub p_max: BigRational,
    pub p_max_floor: BigInt,
    pub q_max: usize,
    /// Root rounded up, so this integer is a true upper bound.
    pub r_max: BigInt,
}

pub fn bound_structure_counts(n: usize, lambda: usize) -> Result<StructureCountBounds> {
    if lambda == 0 {
        return Err(Error::parameter(
            "structure count bounds require lambda >= 1",
        ));
    }
    let p_max = rat(4) * min_lambda_term(n, lambda);
    let p_max_floor = p_max.floor().to_integer();
    let r_max =
        BigInt::from(2 * lambda) + isqrt_ceil(&BigInt::from(lambda * n)) + BigInt::from(175);
    Ok(StructureCountBounds {
        p_max,
        p_max_floor,
        q_max: 1,
        r_max,
    })
}

/// Exact evaluation of the two count-combination inequalities
/// `m ≤ (5/3)n + p/3 + 2q/3 + 5/3` and `m ≤ (3/2)n + p/2 + q + r/2 + 3/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountCombination {
    pub eq41_bound: BigRational,
    pub eq41_holds: bool,
    pub eq42_bound: BigRational,
    pub eq42_holds: bool,
}

pub fn combine_counts(n: usize, m: usize, p: usize, q: usize, r: usize) -> CountCombination {
    let eq41_bound = ratio(5, 3) * rat(n) + ratio(p, 3) + ratio(2 * q, 3) + ratio(5, 3);
    let eq42_bound =
        ratio(3, 2) * rat(n) + ratio(p, 2) + rat(q) + ratio(r, 2) + ratio(3, 2);
    CountCombination {
        eq41_holds: rat(m) <= eq41_bound,
        eq41_bound,
        eq42_holds: rat(m) <= eq42_bound,
        eq42_bound,
    }
}

/// Floor of a report value as usize, for comparisons against family sizes.
pub fn floor_usize(report: &BoundReport) -> usize {
    report.floor_value.to_usize().unwrap_or(usize::MAX)
}
