//! Lower bounds for decompositions into sums of entrywise squares.
//!
//! Given `W = sum_j (B_j . sqrt(W)) . (B_j . sqrt(W))` with rational `B_j`,
//! tensoring each `B_j . sqrt(W)` with an anticommuting sigma word and
//! summing produces one matrix `C` whose scaled form is again
//! `sqrt(p)*I + (subfield)`, so its rank is at least half its size. Since
//! `rank(C) <= k * d^2 * size(sigma)` with `k` the largest `rank(B_j . sqrt(W))`,
//! the decomposition must satisfy `k * d^2 >= ceil(N/2)`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{build_sigma, structural_certificate, CertifyError};
use crate::linalg::{entrywise_sqrt, FieldMatrix, RationalMatrix};

/// The checked outcome of [`extension_certify`].
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// Size of the certified matrix `W`.
    pub n: usize,
    /// The certifying prime.
    pub p: u64,
    /// Decomposition width: the input holds `d^2` matrices.
    pub d: usize,
    /// Size of each sigma word, `4^ceil(d^2/2)`.
    pub sigma_size: usize,
    /// Size of the assembled matrix `C`.
    pub assembled_dim: usize,
    /// `max_j rank(B_j . sqrt(W))`.
    pub k_max: usize,
    /// Exact rank of `C`, computed by elimination.
    pub rank_c: usize,
    /// The certified floor `ceil(N * sigma_size / 2)` on `rank(C)`.
    pub block_bound: usize,
    /// `k_max * d^2`.
    pub conclusion_lhs: usize,
    /// `ceil(N/2)`.
    pub conclusion_rhs: usize,
    pub conclusion_holds: bool,
}

/// Builds the `d^2` inner-product matrices `N_{k1,k2}(x,y) = <a_x^{k1}, b_y^{k2}>`
/// from per-row and per-column lists of `d` rational vectors of length `d`,
/// the spectral data of a PSD factorization. Each output has rank at most
/// `d`, and the entrywise squares sum to the factored matrix.
pub fn decomposition_from_psd_vectors(
    alphas: &[Vec<Vec<BigRational>>],
    betas: &[Vec<Vec<BigRational>>],
) -> Result<Vec<RationalMatrix>, CertifyError> {
    let d = alphas
        .first()
        .map(|vs| vs.len())
        .ok_or(CertifyError::NotSquare)?;
    let consistent = |side: &[Vec<Vec<BigRational>>]| {
        side.iter()
            .all(|vs| vs.len() == d && vs.iter().all(|v| v.len() == d))
    };
    if d == 0 || !consistent(alphas) || !consistent(betas) {
        return Err(CertifyError::Linalg(
            crate::linalg::LinalgError::DimensionMismatch(alphas.len(), d, betas.len(), d),
        ));
    }
    let rows = alphas.len();
    let cols = betas.len();
    let mut out = Vec::with_capacity(d * d);
    for k1 in 0..d {
        for k2 in 0..d {
            out.push(RationalMatrix::from_fn(rows, cols, |x, y| {
                let mut acc = BigRational::zero();
                for t in 0..d {
                    acc += &alphas[x][k1][t] * &betas[y][k2][t];
                }
                acc
            }));
        }
    }
    Ok(out)
}

/// Certifies the decomposition bound `k_max * d^2 >= ceil(N/2)` for
/// `W = sum_j (B_j . sqrt(W)) . (B_j . sqrt(W))`.
///
/// The decomposition identity is verified entrywise as
/// `sum_j B_j(x,y)^2 = 1` on the support of `W`, which avoids forming any
/// square roots. The assembled matrix `C = sum_j (B_j . sqrt(W)) (x) sigma_j`
/// is then checked against the structural form: a block-diagonal `D` built
/// from the same sigma words turns `DC` into `sqrt(p)*I` on the diagonal
/// blocks with all off-diagonal blocks inside the subfield without
/// `sqrt(p)`, and the exact rank of `C` is computed by elimination as a
/// cross-check of the certified floor.
pub fn extension_certify(
    bs: &[RationalMatrix],
    w: &RationalMatrix,
    p: u64,
) -> Result<ExtensionReport, CertifyError> {
    let cert = structural_certificate(w)?;
    if cert.p != p {
        return Err(CertifyError::WrongPrime {
            expected: cert.p,
            got: p,
        });
    }
    let ell = bs.len();
    let d = (ell as f64).sqrt().round() as usize;
    if d * d != ell || d == 0 {
        return Err(CertifyError::NotASquareCount(ell));
    }
    let n = w.rows();
    for b in bs {
        if b.rows() != n || b.cols() != n {
            return Err(CertifyError::Linalg(
                crate::linalg::LinalgError::DimensionMismatch(b.rows(), b.cols(), n, n),
            ));
        }
    }

    // Diagonal unit norms first, then the rest of the support.
    let one = BigRational::one();
    for i in 0..n {
        let mut acc = BigRational::zero();
        for b in bs {
            let v = b.get(i, i);
            acc += v * v;
        }
        if acc != one {
            return Err(CertifyError::DiagonalBlockNotUnit { index: i });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y || w.get(x, y).is_zero() {
                continue;
            }
            let mut acc = BigRational::zero();
            for b in bs {
                let v = b.get(x, y);
                acc += v * v;
            }
            if acc != one {
                return Err(CertifyError::DecompositionInvalid {
                    row: x,
                    col: y,
                    got: acc.to_string(),
                });
            }
        }
    }

    let sigma = build_sigma(ell)?;
    let sigma_size = sigma.size();
    let (sqrt_w, basis) = entrywise_sqrt(w)?;

    // B_j . sqrt(W), their ranks, and C = sum_j (B_j . sqrt(W)) (x) sigma_j.
    let mut k_max = 0usize;
    let mut c = FieldMatrix::zeros(&basis, n * sigma_size, n * sigma_size);
    for (b, s) in bs.iter().zip(&sigma.matrices) {
        let signed = FieldMatrix::from_fn(&basis, n, n, |i, j| {
            sqrt_w.get(i, j).scale(b.get(i, j))
        })?;
        k_max = k_max.max(signed.rank());
        let s_field = s.to_field(&basis);
        c = c.add(&signed.kronecker(&s_field)?)?;
    }

    // Block-diagonal D with block i = (1/sqrt(p-1)) sum_j B_j(i,i) sigma_j.
    let inv_scale = basis.sqrt_of_u64(p - 1)?.invert()?;
    let mut d_blocks = Vec::with_capacity(n);
    for i in 0..n {
        let mut block = FieldMatrix::zeros(&basis, sigma_size, sigma_size);
        for (b, s) in bs.iter().zip(&sigma.matrices) {
            let coeff = b.get(i, i);
            if coeff.is_zero() {
                continue;
            }
            let term = s.to_field(&basis).scale(&basis.from_rational(coeff.clone()))?;
            block = block.add(&term)?;
        }
        d_blocks.push(block.scale(&inv_scale)?);
    }

    // DC blockwise: diagonal blocks must equal sqrt(p)*I exactly, and every
    // off-diagonal block must stay free of sqrt(p).
    let sqrt_p = basis.sqrt_of_u64(p)?;
    let expected_diag = FieldMatrix::identity(&basis, sigma_size).scale(&sqrt_p)?;
    for bi in 0..n {
        for bj in 0..n {
            let c_block = c.block(bi, bj, sigma_size);
            let dc_block = d_blocks[bi].mul(&c_block)?;
            if bi == bj {
                if dc_block != expected_diag {
                    return Err(CertifyError::DiagonalBlockNotSqrtP { index: bi });
                }
            } else {
                for i in 0..sigma_size {
                    for j in 0..sigma_size {
                        if !dc_block.get(i, j).support_free_of(p) {
                            return Err(CertifyError::OffdiagBlockEscapes {
                                row: bi * sigma_size + i,
                                col: bj * sigma_size + j,
                                prime: p,
                            });
                        }
                    }
                }
            }
        }
    }

    let assembled_dim = n * sigma_size;
    let block_bound = assembled_dim.div_ceil(2);
    let rank_c = c.rank();
    assert!(
        rank_c >= block_bound,
        "computed rank {rank_c} fell below the certified floor {block_bound}"
    );
    let conclusion_lhs = k_max * d * d;
    let conclusion_rhs = n.div_ceil(2);
    Ok(ExtensionReport {
        n,
        p,
        d,
        sigma_size,
        assembled_dim,
        k_max,
        rank_c,
        block_bound,
        conclusion_lhs,
        conclusion_rhs,
        conclusion_holds: conclusion_lhs >= conclusion_rhs,
    })
}

/// The canonical single-term decomposition: `B_1` all ones, the remaining
/// `d^2 - 1` matrices zero.
pub fn canonical_decomposition(n: usize, d: usize) -> Vec<RationalMatrix> {
    let mut bs = vec![RationalMatrix::from_fn(n, n, |_, _| BigRational::one())];
    for _ in 1..d * d {
        bs.push(RationalMatrix::zeros(n, n));
    }
    bs
}
