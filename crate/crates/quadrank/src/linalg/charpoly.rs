//! Characteristic polynomials by the Faddeev-LeVerrier recurrence; the
//! integer divisions it performs are exact in characteristic zero.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FieldMatrix, LinalgError, DEFAULT_CHARPOLY_CAP};
use crate::field::FieldPolynomial;

impl FieldMatrix {
    /// The monic characteristic polynomial `det(xI - M)`, coefficients in
    /// the matrix field. Capped at dimension 16 by default — coefficient
    /// growth over number fields is severe, and the rank certificates use
    /// elimination instead; this exists to exercise the multiplicity
    /// machinery at small scale.
    pub fn charpoly(&self) -> Result<FieldPolynomial, LinalgError> {
        self.charpoly_with_cap(DEFAULT_CHARPOLY_CAP)
    }

    pub fn charpoly_with_cap(&self, cap: usize) -> Result<FieldPolynomial, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        if n > cap {
            return Err(LinalgError::DimensionCapExceeded { n, cap });
        }
        let basis = self.basis().clone();
        let mut coeffs = vec![basis.zero(); n + 1];
        coeffs[n] = basis.one();
        if n == 0 {
            return Ok(FieldPolynomial::new(basis, coeffs)?);
        }
        // M_0 = 0; M_k = A*M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A*M_k)/k.
        let mut a_prev = FieldMatrix::zeros(&basis, n, n); // A * M_{k-1}
        for k in 1..=n {
            let mk = a_prev.add_scalar_diag(&coeffs[n - k + 1])?;
            let a_mk = self.mul(&mk)?;
            let t = a_mk.trace()?;
            let c = t
                .scale(&BigRational::new(BigInt::from(-1), BigInt::from(k)));
            coeffs[n - k] = c;
            a_prev = a_mk;
        }
        Ok(FieldPolynomial::new(basis, coeffs)?)
    }
}
