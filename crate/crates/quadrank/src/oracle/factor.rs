//! Constructive factorizations: the recursive nonnegative factorization of
//! the `F_n` family and exact rank-one PSD factorizations from rational
//! sign witnesses.

use num_rational::BigRational;
use num_traits::Zero;

use super::OracleError;
use crate::linalg::{FieldMatrix, RationalMatrix};

/// A sum of nonnegative rank-one matrices `u v^T` reconstructing a target.
#[derive(Clone, Debug)]
pub struct NonnegFactorization {
    pub terms: Vec<(Vec<BigRational>, Vec<BigRational>)>,
}

impl NonnegFactorization {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

/// The recursive nonnegative factorization of `F_n(x,y) = x^T y (x^T y - 1)`
/// with `C(n,2)` terms.
///
/// `F_1` is the zero matrix. Ordering strings lexicographically, `F_{m+1}`
/// splits into four blocks `[[F_m, F_m], [F_m, F_m + D_m]]` with
/// `D_m = [2 x^T y]`; every existing term doubles up over both halves, and
/// `D_m` contributes one rank-one term per coordinate, supported on the
/// bottom-right block (rows and columns whose leading bit is 1).
pub fn nonneg_factorization_f(n: u32) -> Result<NonnegFactorization, OracleError> {
    if n < 1 || n > 10 {
        return Err(OracleError::DimensionCap(n));
    }
    let mut terms: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    for m in 1..n {
        let half = 1usize << m;
        // lift existing terms over the doubled index space
        for (u, v) in terms.iter_mut() {
            let mut u2 = u.clone();
            u2.extend_from_slice(u);
            let mut v2 = v.clone();
            v2.extend_from_slice(v);
            *u = u2;
            *v = v2;
        }
        // the m rank-one terms of D_m, zero outside the leading-bit-1 block
        for coord in 0..m {
            let mut u = vec![BigRational::zero(); 2 * half];
            let mut v = vec![BigRational::zero(); 2 * half];
            for tail in 0..half {
                // coordinate `coord` of the tail string, leftmost character first
                if (tail >> (m - 1 - coord)) & 1 == 1 {
                    u[half + tail] = BigRational::from_integer(2.into());
                    v[half + tail] = BigRational::from_integer(1.into());
                }
            }
            terms.push((u, v));
        }
    }
    Ok(NonnegFactorization { terms })
}

/// True iff every vector is entrywise nonnegative and the rank-one sum
/// reproduces the target exactly.
pub fn verify_nonneg_factorization(f: &NonnegFactorization, target: &RationalMatrix) -> bool {
    use num_traits::Signed;
    for (u, v) in &f.terms {
        if u.len() != target.rows() || v.len() != target.cols() {
            return false;
        }
        if u.iter().any(|x| x.is_negative()) || v.iter().any(|x| x.is_negative()) {
            return false;
        }
    }
    for i in 0..target.rows() {
        for j in 0..target.cols() {
            let mut acc = BigRational::zero();
            for (u, v) in &f.terms {
                acc += &u[i] * &v[j];
            }
            if &acc != target.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// A rank-one PSD factorization induced by a rank factorization
/// `B = U V^T`: row vectors `u_i` and column vectors `v_j` of ambient
/// dimension `r` with `<u_i, v_j>^2 = B(i,j)^2`, realizing the PSD pairs
/// `E_i = u_i u_i^T`, `F_j = v_j v_j^T` for the matrix `B . B`.
#[derive(Clone, Debug)]
pub struct RankOnePsdFactorization {
    pub row_vectors: Vec<Vec<BigRational>>,
    pub col_vectors: Vec<Vec<BigRational>>,
    pub ambient: usize,
}

/// Exact rank factorization of a rational sign witness.
///
/// The witness must be rational: a rank factorization over a radical field
/// is not needed for any of the named families (the low-rank `A_n` signings
/// are rational), so radical inputs are refused rather than widened.
pub fn rank_one_psd_from_sqrt(
    bsigned: &FieldMatrix,
) -> Result<RankOnePsdFactorization, OracleError> {
    let b = bsigned
        .to_rational()
        .ok_or(OracleError::NonRationalEntries)?;
    let (rref, pivots) = b.rref();
    let r = pivots.len();
    // B = B[:, pivots] * R[0..r, :]
    let row_vectors: Vec<Vec<BigRational>> = (0..b.rows())
        .map(|i| pivots.iter().map(|&pc| b.get(i, pc).clone()).collect())
        .collect();
    let col_vectors: Vec<Vec<BigRational>> = (0..b.cols())
        .map(|j| (0..r).map(|k| rref.get(k, j).clone()).collect())
        .collect();
    Ok(RankOnePsdFactorization {
        row_vectors,
        col_vectors,
        ambient: r,
    })
}

impl RankOnePsdFactorization {
    /// Checks `<u_i, v_j>^2 = W(i,j)` against a target entrywise-square.
    pub fn verify_against(&self, w: &RationalMatrix) -> bool {
        if self.row_vectors.len() != w.rows() || self.col_vectors.len() != w.cols() {
            return false;
        }
        for (i, u) in self.row_vectors.iter().enumerate() {
            for (j, v) in self.col_vectors.iter().enumerate() {
                let mut ip = BigRational::zero();
                for t in 0..self.ambient {
                    ip += &u[t] * &v[t];
                }
                if &(&ip * &ip) != w.get(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cor_slack, lowrank_a, CorVariant};
    use crate::field::PrimeBasis;
    use crate::linalg::entrywise_sqrt;

    #[test]
    fn f_factorization_counts_and_reconstruction() {
        let expected_counts = [0usize, 1, 3, 6, 10];
        for n in 1..=5u32 {
            let f = nonneg_factorization_f(n).unwrap();
            assert_eq!(f.term_count(), expected_counts[(n - 1) as usize]);
            let target = cor_slack(CorVariant::F, n).unwrap();
            assert!(verify_nonneg_factorization(&f, &target), "n = {n}");
        }
        assert!(matches!(
            nonneg_factorization_f(11),
            Err(OracleError::DimensionCap(11))
        ));
    }

    #[test]
    fn f2_single_term() {
        let f = nonneg_factorization_f(2).unwrap();
        assert_eq!(f.term_count(), 1);
        let target = cor_slack(CorVariant::F, 2).unwrap();
        assert!(verify_nonneg_factorization(&f, &target));
        // the single term hits only the (11,11) entry with value 2
        let (u, v) = &f.terms[0];
        assert_eq!(&u[3] * &v[3], BigRational::from_integer(2.into()));
    }

    #[test]
    fn verifier_rejects_tampering() {
        let f = nonneg_factorization_f(3).unwrap();
        let target = cor_slack(CorVariant::F, 3).unwrap();
        assert!(verify_nonneg_factorization(&f, &target));

        let mut negated = f.clone();
        negated.terms[0].0[7] = -negated.terms[0].0[7].clone();
        assert!(!verify_nonneg_factorization(&negated, &target));

        let empty = NonnegFactorization { terms: vec![] };
        assert!(!verify_nonneg_factorization(&empty, &target));
        assert!(verify_nonneg_factorization(
            &empty,
            &RationalMatrix::zeros(4, 4)
        ));
    }

    #[test]
    fn rank_one_psd_from_lowrank_a() {
        // A_3 signs corB(3); its rank factorization gives a PSD
        // factorization of corB(3) of size rank(A_3) <= 4
        let a = lowrank_a(3).unwrap();
        let b = cor_slack(CorVariant::B, 3).unwrap();
        let af = a.to_field(&PrimeBasis::rationals());
        let fact = rank_one_psd_from_sqrt(&af).unwrap();
        assert!(fact.ambient <= 4);
        assert!(fact.verify_against(&b));
    }

    #[test]
    fn rank_one_psd_simple_cases() {
        let q = PrimeBasis::rationals();
        let id = FieldMatrix::identity(&q, 3);
        let fact = rank_one_psd_from_sqrt(&id).unwrap();
        assert_eq!(fact.ambient, 3);
        assert!(fact.verify_against(&RationalMatrix::identity(3)));

        let ones = RationalMatrix::from_i64(2, 2, &[1, 1, 1, 1]).unwrap();
        let fact = rank_one_psd_from_sqrt(&ones.to_field(&q)).unwrap();
        assert_eq!(fact.ambient, 1);
        assert!(fact.verify_against(&ones));

        // radical witness is refused
        let b2 = PrimeBasis::new(&[2]).unwrap();
        let w = RationalMatrix::from_i64(1, 1, &[2]).unwrap();
        let (sq, _) = entrywise_sqrt(&w).unwrap();
        assert_eq!(sq.basis(), &b2);
        assert!(matches!(
            rank_one_psd_from_sqrt(&sq),
            Err(OracleError::NonRationalEntries)
        ));
    }
}
