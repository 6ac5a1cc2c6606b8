//! Aggregate bounds: the rank chain `sqrt(rank(A)) <= prank(A) <=
//! rootrank(A)` and `prank(A) <= rank+(A)`, assembled from whatever
//! evidence is available.

use super::{verify_nonneg_factorization, NonnegFactorization, OracleError};
use crate::certify::SqrtRankCertificate;
use crate::linalg::{entrywise_sqrt, RationalMatrix, SignMatrix};

/// Optional evidence feeding a [`BoundsReport`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundsExtras<'a> {
    /// A structural certificate for the matrix: yields `rootrank_lower`.
    pub certificate: Option<&'a SqrtRankCertificate>,
    /// A sign witness: `rank(S . sqrt(W))` yields `rootrank_upper`.
    pub witness: Option<&'a SignMatrix>,
    /// A nonnegative factorization: its term count yields `rank_plus_upper`.
    pub factorization: Option<&'a NonnegFactorization>,
}

/// Exact bound aggregation for one nonnegative matrix.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// Exact rank over the rationals.
    pub rank: usize,
    /// `ceil(sqrt(rank))`: the floor on PSD rank from the plain rank.
    pub prank_lower: usize,
    pub rootrank_upper: Option<usize>,
    pub rootrank_lower: Option<usize>,
    pub rank_plus_upper: Option<usize>,
}

/// Builds the report; refuses evidence that contradicts the bound chain,
/// which would signal an implementation bug rather than bad data.
pub fn bounds_report(
    w: &RationalMatrix,
    extras: BoundsExtras<'_>,
) -> Result<BoundsReport, OracleError> {
    let rank = w.rank();
    let prank_lower = ceil_sqrt(rank);

    let rootrank_upper = match extras.witness {
        Some(signs) => {
            let (sqrt_w, _) = entrywise_sqrt(w)?;
            Some(sqrt_w.apply_signs(signs)?.rank())
        }
        None => None,
    };
    let rootrank_lower = match extras.certificate {
        Some(cert) => {
            if cert.n != w.rows() || cert.n != w.cols() {
                return Err(OracleError::InconsistentEvidence(format!(
                    "certificate is for dimension {}, matrix is {}x{}",
                    cert.n,
                    w.rows(),
                    w.cols()
                )));
            }
            Some(cert.bound)
        }
        None => None,
    };
    let rank_plus_upper = match extras.factorization {
        Some(f) => {
            if !verify_nonneg_factorization(f, w) {
                return Err(OracleError::InconsistentEvidence(
                    "nonnegative factorization does not reconstruct the matrix".into(),
                ));
            }
            Some(f.term_count())
        }
        None => None,
    };

    if let (Some(lo), Some(hi)) = (rootrank_lower, rootrank_upper) {
        if lo > hi {
            return Err(OracleError::InconsistentEvidence(format!(
                "rootrank bounds cross: {lo} > {hi}"
            )));
        }
    }
    if let Some(hi) = rootrank_upper {
        if prank_lower > hi {
            return Err(OracleError::InconsistentEvidence(format!(
                "prank floor {prank_lower} exceeds rootrank witness {hi}"
            )));
        }
    }
    if let Some(hi) = rank_plus_upper {
        if prank_lower > hi {
            return Err(OracleError::InconsistentEvidence(format!(
                "prank floor {prank_lower} exceeds nonnegative rank witness {hi}"
            )));
        }
    }
    Ok(BoundsReport {
        rank,
        prank_lower,
        rootrank_upper,
        rootrank_lower,
        rank_plus_upper,
    })
}

/// Smallest integer `r` with `r*r >= n`.
pub fn ceil_sqrt(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r >= 1 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}
