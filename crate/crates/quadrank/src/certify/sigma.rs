//! Pairwise-anticommuting families built from real 4x4 versions of the
//! Pauli matrices.
//!
//! With `X`, `Y`, `Z` the real Paulis (`XY = -YX`, `XZ = -ZX`, `YZ = -ZY`,
//! squares the identity), the tensor words
//!
//! ```text
//! sigma_{2j+1} = Z^(x)j (x) Y (x) I4^(x)(m-j-1)
//! sigma_{2j+2} = Z^(x)j (x) X (x) I4^(x)(m-j-1)      j = 0..m-1, m = ceil(ell/2)
//! ```
//!
//! give `2m` matrices of size `4^m`, truncated to the first `ell`. Any real
//! combination satisfies `(sum a_j sigma_j)^2 = (sum a_j^2) I`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CertifyError;
use crate::linalg::RationalMatrix;

/// Families are capped at `ell = 10`, i.e. matrices of size `4^5 = 1024`.
pub const MAX_SIGMA_ELL: usize = 10;

const X: [[i64; 4]; 4] = [
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
];
const Y: [[i64; 4]; 4] = [
    [0, 0, 0, 1],
    [0, 0, -1, 0],
    [0, -1, 0, 0],
    [1, 0, 0, 0],
];
const Z: [[i64; 4]; 4] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
];

/// `ell` pairwise-anticommuting integer matrices of size `4^ceil(ell/2)`
/// with entries in `{-1, 0, 1}`, each squaring to the identity.
#[derive(Clone, Debug)]
pub struct SigmaFamily {
    pub ell: usize,
    /// `ceil(ell/2)`: the tensor word length.
    pub m: usize,
    pub matrices: Vec<RationalMatrix>,
}

impl SigmaFamily {
    pub fn size(&self) -> usize {
        4usize.pow(self.m as u32)
    }

    /// Exhaustive invariant check: entries in `{-1,0,1}`, every square is
    /// the identity, every distinct pair anticommutes.
    pub fn verify(&self) -> Result<(), String> {
        let n = self.size();
        let one = BigRational::one();
        for (k, s) in self.matrices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let v = s.get(i, j);
                    if !(v.is_zero() || v == &one || v == &-&one) {
                        return Err(format!("sigma_{k} entry ({i},{j}) = {v} not in -1,0,1"));
                    }
                }
            }
            let sq = s.mul(s).expect("square matrices");
            if sq != RationalMatrix::identity(n) {
                return Err(format!("sigma_{k} squared is not the identity"));
            }
        }
        for a in 0..self.matrices.len() {
            for b in a + 1..self.matrices.len() {
                let ab = self.matrices[a].mul(&self.matrices[b]).expect("sized");
                let ba = self.matrices[b].mul(&self.matrices[a]).expect("sized");
                if ab != ba.neg() {
                    return Err(format!("sigma_{a} and sigma_{b} do not anticommute"));
                }
            }
        }
        Ok(())
    }
}

fn pauli(m: &[[i64; 4]; 4]) -> RationalMatrix {
    RationalMatrix::from_fn(4, 4, |i, j| BigRational::from_integer(BigInt::from(m[i][j])))
}

/// Builds the anticommuting family of the requested length.
pub fn build_sigma(ell: usize) -> Result<SigmaFamily, CertifyError> {
    if ell < 1 || ell > MAX_SIGMA_ELL {
        return Err(CertifyError::CapExceeded(ell));
    }
    let m = ell.div_ceil(2);
    let x = pauli(&X);
    let y = pauli(&Y);
    let z = pauli(&Z);
    let i4 = RationalMatrix::identity(4);
    let mut matrices = Vec::with_capacity(2 * m);
    for j in 0..m {
        for middle in [&y, &x] {
            let mut word = RationalMatrix::identity(1);
            for _ in 0..j {
                word = kron_rational(&word, &z);
            }
            word = kron_rational(&word, middle);
            for _ in 0..m - j - 1 {
                word = kron_rational(&word, &i4);
            }
            matrices.push(word);
        }
    }
    matrices.truncate(ell);
    Ok(SigmaFamily { ell, m, matrices })
}

pub(crate) fn kron_rational(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    RationalMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    })
}
