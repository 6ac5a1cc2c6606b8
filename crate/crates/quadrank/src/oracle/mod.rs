//! Independent cross-checks: exhaustive square-root-rank search over sign
//! patterns, explicit nonnegative factorizations, rank-one PSD
//! factorizations, and aggregate bounds reports.

mod bounds;
mod factor;

pub use bounds::{bounds_report, BoundsExtras, BoundsReport};
pub use factor::{
    nonneg_factorization_f, rank_one_psd_from_sqrt, verify_nonneg_factorization,
    NonnegFactorization, RankOnePsdFactorization,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::certify::CertifyError;
use crate::field::FieldError;
use crate::linalg::{entrywise_sqrt, FieldMatrix, LinalgError, RationalMatrix, SignMatrix};

/// Default enumeration budget: keeps the Fawzi 3x3 and every dense 4x4
/// exhaustive within minutes.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("sign space needs {required} patterns, over the budget of {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("matrix has non-rational entries; a rational sign witness is required")]
    NonRationalEntries,
    #[error("supplied bounds contradict each other: {0}")]
    InconsistentEvidence(String),
    #[error("n = {0} is outside the supported range")]
    DimensionCap(u32),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Outcome of the exhaustive search over sign patterns.
#[derive(Clone, Debug)]
pub struct BruteForceResult {
    /// Minimum rank over all signings of the entrywise square root.
    pub min_rank: usize,
    /// A signing achieving it (lexicographically least among minimizers).
    pub witness: SignMatrix,
    /// Sign patterns examined after symmetry reduction.
    pub classes_enumerated: u64,
    /// True iff the reduced space was fully covered.
    pub exhausted: bool,
}

/// Minimum rank of `S . sqrt(W)` over all sign matrices `S`, enumerated
/// modulo row and column sign flips.
///
/// The canonical reduction fixes to `+` the first nonzero entry of every row
/// and the entries of row 0's nonzero columns; rank is invariant under row
/// and column negation, so every flip orbit contains a canonical pattern.
/// Patterns walk in Gray-code order, each rank computed from scratch over
/// the minimal field of `sqrt(W)`. Enumeration partitions across workers
/// (`QUADRANK_THREADS` overrides the count) with a deterministic reduction.
pub fn sqrt_rank_bruteforce(
    w: &RationalMatrix,
    budget: u64,
) -> Result<BruteForceResult, OracleError> {
    let (sqrt_w, _basis) = entrywise_sqrt(w)?;
    let free = free_positions(w);
    if free.len() >= 63 || (1u64 << free.len()) > budget {
        return Err(OracleError::BudgetExceeded {
            required: BigUint::one() << free.len(),
            budget,
        });
    }
    let total: u64 = 1 << free.len();
    let workers = worker_count(total);
    let chunk = total.div_ceil(workers as u64);
    let results: Vec<Option<(usize, u64)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for wi in 0..workers {
            let lo = wi as u64 * chunk;
            let hi = (lo + chunk).min(total);
            let sqrt_w = &sqrt_w;
            let free = &free;
            handles.push(scope.spawn(move || search_range(sqrt_w, free, lo, hi)));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let (min_rank, best_bits) = results
        .into_iter()
        .flatten()
        .reduce(|a, b| combine(a, b))
        .expect("at least one pattern is always enumerated");
    Ok(BruteForceResult {
        min_rank,
        witness: bits_to_signs(w.rows(), w.cols(), &free, best_bits),
        classes_enumerated: total,
        exhausted: true,
    })
}

/// The sign positions left free by the canonical reduction, in row-major
/// order.
fn free_positions(w: &RationalMatrix) -> Vec<(usize, usize)> {
    let mut fixed = vec![vec![false; w.cols()]; w.rows()];
    for i in 0..w.rows() {
        if let Some(j) = (0..w.cols()).find(|&j| !w.get(i, j).is_zero()) {
            fixed[i][j] = true;
        }
    }
    for j in 0..w.cols() {
        if !w.get(0, j).is_zero() {
            fixed[0][j] = true;
        }
    }
    let mut free = Vec::new();
    for i in 0..w.rows() {
        for j in 0..w.cols() {
            if !w.get(i, j).is_zero() && !fixed[i][j] {
                free.push((i, j));
            }
        }
    }
    free
}

fn worker_count(total: u64) -> usize {
    let configured = std::env::var("QUADRANK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|v| v.get())
                .unwrap_or(1)
        });
    configured.min(total.max(1) as usize).min(64)
}

fn search_range(
    sqrt_w: &FieldMatrix,
    free: &[(usize, usize)],
    lo: u64,
    hi: u64,
) -> Option<(usize, u64)> {
    let mut best: Option<(usize, u64)> = None;
    for idx in lo..hi {
        let bits = idx ^ (idx >> 1); // Gray code: neighbors differ in one sign
        let mut signed = sqrt_w.clone();
        for (k, &(i, j)) in free.iter().enumerate() {
            if (bits >> k) & 1 == 1 {
                let e = signed.get(i, j).neg();
                signed.set(i, j, e);
            }
        }
        let rank = signed.rank();
        best = match best {
            None => Some((rank, bits)),
            Some(cur) => Some(combine(cur, (rank, bits))),
        };
    }
    best
}

/// Deterministic reduction: smaller rank wins; ties go to the witness whose
/// sign sequence over the free positions is lexicographically least, with
/// `+` before `-` (bit k holds free position k, so compare from bit 0 up).
fn combine(a: (usize, u64), b: (usize, u64)) -> (usize, u64) {
    if b.0 < a.0 || (b.0 == a.0 && lex_less(b.1, a.1)) {
        b
    } else {
        a
    }
}

fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let k = diff.trailing_zeros();
    (a >> k) & 1 == 0
}

fn bits_to_signs(rows: usize, cols: usize, free: &[(usize, usize)], bits: u64) -> SignMatrix {
    let mut s = SignMatrix::all_plus(rows, cols);
    for (k, &(i, j)) in free.iter().enumerate() {
        if (bits >> k) & 1 == 1 {
            s.set(i, j, -1);
        }
    }
    s
}

/// Test-only unreduced search: every sign pattern on the nonzero entries.
/// Exponentially larger than the reduced space; used to validate the
/// symmetry reduction on tiny inputs.
pub fn sqrt_rank_bruteforce_unreduced(w: &RationalMatrix) -> Result<usize, OracleError> {
    let (sqrt_w, _basis) = entrywise_sqrt(w)?;
    let nonzero: Vec<(usize, usize)> = (0..w.rows())
        .flat_map(|i| (0..w.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !w.get(i, j).is_zero())
        .collect();
    assert!(nonzero.len() <= 20, "unreduced search is for tiny matrices");
    let mut min_rank = usize::MAX;
    for bits in 0u64..(1 << nonzero.len()) {
        let mut signed = sqrt_w.clone();
        for (k, &(i, j)) in nonzero.iter().enumerate() {
            if (bits >> k) & 1 == 1 {
                let e = signed.get(i, j).neg();
                signed.set(i, j, e);
            }
        }
        min_rank = min_rank.min(signed.rank());
    }
    if min_rank == usize::MAX {
        min_rank = 0; // zero matrix: single empty pattern
    }
    Ok(min_rank)
}
