//! Sign-independent square-root-rank certificates.
//!
//! A matrix whose diagonal is constantly `p(p-1)` for a prime `p` and whose
//! off-diagonal entries stay inside `Q(sqrt(q) : q prime < p)` after the
//! `1/sqrt(p-1)` scaling has square root rank at least `ceil(N/2)` no matter
//! how the entries of the square root are signed: any signing scales to
//! `sqrt(p)*I + A` with `A` over a field not containing `sqrt(p)`, and the
//! characteristic polynomial of `A` must carry `-sqrt(p)` and `+sqrt(p)`
//! with equal multiplicity, capping the nullity at `floor(N/2)`. The
//! certificate discharges the universal quantifier over signs structurally,
//! with `O(N^2)` integer factorizations and no enumeration.

mod extension;
mod sigma;

pub use extension::{
    canonical_decomposition, decomposition_from_psd_vectors, extension_certify, ExtensionReport,
};
pub use sigma::{build_sigma, SigmaFamily, MAX_SIGMA_ELL};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{is_prime, squarefree_prime_factors, FieldElement, FieldError, PrimeBasis};
use crate::linalg::{entrywise_sqrt, FieldMatrix, LinalgError, RationalMatrix, Side, SignMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry at ({row},{col}) is not an integer")]
    NotIntegerMatrix { row: usize, col: usize },
    #[error("entry at ({row},{col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("diagonal is not constant: entry ({row},{row}) differs from entry (0,0)")]
    DiagonalNotConstant { row: usize },
    #[error("diagonal value {value} is not p(p-1) for any prime p")]
    DiagonalNotPrimeForm { value: BigInt },
    #[error(
        "off-diagonal entry {value} at ({row},{col}) needs sqrt({needs}) with prime {needs} >= p"
    )]
    OffdiagEscapesSubfield {
        row: usize,
        col: usize,
        value: BigInt,
        needs: u64,
    },
    #[error("diagonal entry at row {row} is not +-sqrt(p(p-1))")]
    BadDiagonal { row: usize },
    #[error("sigma family size {0} is outside 1..=10")]
    CapExceeded(usize),
    #[error("decomposition identity fails at ({row},{col}): sum of B_j^2 is {got}, not 1")]
    DecompositionInvalid {
        row: usize,
        col: usize,
        got: String,
    },
    #[error("diagonal block {index}: sum of B_j(i,i)^2 is not 1")]
    DiagonalBlockNotUnit { index: usize },
    #[error("diagonal block {index} of DC is not sqrt(p) times the identity")]
    DiagonalBlockNotSqrtP { index: usize },
    #[error("off-diagonal block entry ({row},{col}) of DC involves sqrt({prime})")]
    OffdiagBlockEscapes { row: usize, col: usize, prime: u64 },
    #[error("certificate prime is {expected}, but {got} was requested")]
    WrongPrime { expected: u64, got: u64 },
    #[error("decomposition has {0} matrices, not a perfect square count")]
    NotASquareCount(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The structural verifications a certificate rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralChecks {
    pub diag_constant: bool,
    pub diag_value: bool,
    pub offdiag_subfield_membership: bool,
}

/// A machine-checkable record proving `rootrank(W) >= ceil(N/2)` for every
/// sign pattern simultaneously.
#[derive(Clone, Debug)]
pub struct SqrtRankCertificate {
    /// Matrix dimension.
    pub n: usize,
    /// The certifying prime: every diagonal entry equals `p(p-1)`.
    pub p: u64,
    /// The primes `< p` actually needed by off-diagonal entries.
    pub subfield: PrimeBasis,
    /// `ceil(N/2)`.
    pub bound: usize,
    pub checks: StructuralChecks,
    /// Always true on success: the bound holds for all sign choices.
    pub sign_independent: bool,
}

/// Certifies `rootrank(W) >= ceil(N/2)` for every signing of `sqrt(W)`.
///
/// Finds the unique prime `p` with every diagonal entry equal to `p(p-1)`,
/// then verifies that the squarefree part of `v*(p-1)` has only prime
/// factors `< p` for every off-diagonal entry `v` — equivalently, that
/// `sqrt(v/(p-1))` lies in the field without `sqrt(p)`.
pub fn structural_certificate(w: &RationalMatrix) -> Result<SqrtRankCertificate, CertifyError> {
    if !w.is_square() {
        return Err(CertifyError::NotSquare);
    }
    let n = w.rows();
    for i in 0..n {
        for j in 0..n {
            let v = w.get(i, j);
            if !v.is_integer() {
                return Err(CertifyError::NotIntegerMatrix { row: i, col: j });
            }
            if v.is_negative() {
                return Err(CertifyError::NegativeEntry { row: i, col: j });
            }
        }
    }
    let diag = w.get(0, 0).to_integer();
    for i in 1..n {
        if w.get(i, i).to_integer() != diag {
            return Err(CertifyError::DiagonalNotConstant { row: i });
        }
    }
    let p = prime_from_p_p_minus_1(&diag)
        .ok_or_else(|| CertifyError::DiagonalNotPrimeForm { value: diag.clone() })?;

    let mut needed: Vec<u64> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = w.get(i, j).to_integer();
            if v.is_zero() {
                continue;
            }
            let scaled = (&v * BigInt::from(p - 1))
                .to_u128()
                .expect("desk-scale integer entries");
            for q in squarefree_prime_factors(scaled) {
                if q >= p {
                    return Err(CertifyError::OffdiagEscapesSubfield {
                        row: i,
                        col: j,
                        value: v,
                        needs: q,
                    });
                }
                needed.push(q);
            }
        }
    }
    needed.sort_unstable();
    needed.dedup();
    let subfield = PrimeBasis::new(&needed)?;
    Ok(SqrtRankCertificate {
        n,
        p,
        subfield,
        bound: n.div_ceil(2),
        checks: StructuralChecks {
            diag_constant: true,
            diag_value: true,
            offdiag_subfield_membership: true,
        },
        sign_independent: true,
    })
}

/// Solves `p(p-1) = v` for a prime `p`.
fn prime_from_p_p_minus_1(v: &BigInt) -> Option<u64> {
    if v.is_negative() || v.is_zero() {
        return None;
    }
    let v = v.to_u128()?;
    // p = (1 + sqrt(1 + 4v)) / 2
    let disc = 1 + 4 * v;
    let r = disc.sqrt();
    if r * r != disc {
        return None;
    }
    let p = ((1 + r) / 2) as u64;
    if (p as u128) * (p as u128 - 1) != v {
        return None;
    }
    is_prime(p).then_some(p)
}

/// Left-multiplies a signed square root by the diagonal of `+-1/sqrt(p-1)`,
/// choosing signs so every diagonal entry of the result is exactly
/// `+sqrt(p)`. Rank is preserved.
pub fn scale_to_form(bsigned: &FieldMatrix, p: u64) -> Result<FieldMatrix, CertifyError> {
    if !bsigned.is_square() {
        return Err(CertifyError::NotSquare);
    }
    let basis = bsigned.basis();
    let expected = basis.sqrt_of_u64(p * (p - 1))?;
    let expected_neg = expected.neg();
    let inv = basis.sqrt_of_u64(p - 1)?.invert()?;
    let mut scalars: Vec<FieldElement> = Vec::with_capacity(bsigned.rows());
    for i in 0..bsigned.rows() {
        let d = bsigned.get(i, i);
        if *d == expected {
            scalars.push(inv.clone());
        } else if *d == expected_neg {
            scalars.push(inv.neg());
        } else {
            return Err(CertifyError::BadDiagonal { row: i });
        }
    }
    Ok(bsigned.diag_scale(&scalars, Side::Left)?)
}

/// Empirical check of one signing: builds `S . sqrt(W)` over the field
/// including `sqrt(p)`, scales to the `sqrt(p)*I + A` form, and returns the
/// exact rank. The caller compares against the certificate bound.
pub fn rank_crosscheck(
    w: &RationalMatrix,
    signs: &SignMatrix,
    p: u64,
) -> Result<usize, CertifyError> {
    let (sqrt_w, _basis) = entrywise_sqrt(w)?;
    let signed = sqrt_w.apply_signs(signs)?;
    let scaled = scale_to_form(&signed, p)?;
    Ok(scaled.rank())
}

/// Bounds the nullity of `sqrt(p)*I + A` through the characteristic
/// polynomial: returns `k`, the `(x^2 - p)` multiplicity of `charpoly(A)`,
/// which is at most `floor(N/2)` and dominates the geometric multiplicity
/// of `-sqrt(p)`.
pub fn charpoly_multiplicity_bound(a: &FieldMatrix, p: u64) -> Result<usize, CertifyError> {
    let q = a.charpoly()?;
    let k = q
        .sqrt_root_multiplicity(p)?
        .finite()
        .expect("characteristic polynomials are monic, never zero");
    assert!(
        2 * k <= a.rows(),
        "multiplicity {k} exceeds floor(N/2) for N = {}",
        a.rows()
    );
    Ok(k)
}

/// Exhaustively verifies the slack identity behind the `corM` family: for
/// all `x, y` in `{0,1}^n`,
/// `(x^T y - 1)(x^T y - 2) = Tr((x x^T - 3 diag(x)) y y^T) + 2 >= 0`,
/// with the right side evaluated literally as a trace of matrix products.
pub fn slack_verify(n: u32) -> bool {
    assert!(n <= 10, "slack_verify enumerates 4^n pairs; n <= 10 required");
    let n = n as usize;
    let size = 1usize << n;
    for xv in 0..size {
        // G = x x^T - 3 diag(x)
        let mut g = vec![vec![0i64; n]; n];
        for a in 0..n {
            let xa = ((xv >> (n - 1 - a)) & 1) as i64;
            for b in 0..n {
                let xb = ((xv >> (n - 1 - b)) & 1) as i64;
                g[a][b] = xa * xb;
            }
            g[a][a] -= 3 * xa;
        }
        for yv in 0..size {
            let y: Vec<i64> = (0..n).map(|a| ((yv >> (n - 1 - a)) & 1) as i64).collect();
            // Tr(G * y y^T) = y^T G y
            let mut tr = 0i64;
            for a in 0..n {
                for b in 0..n {
                    tr += g[a][b] * y[b] * y[a];
                }
            }
            let rhs = tr + 2;
            let s = (xv & yv).count_ones() as i64;
            let lhs = (s - 1) * (s - 2);
            if lhs != rhs || rhs < 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{matrix_p, MatrixSpec};
    use rand::SeedableRng;

    #[test]
    fn certificate_on_prime_matrices() {
        let (w, p) = matrix_p(6).unwrap();
        let cert = structural_certificate(&w).unwrap();
        assert_eq!(cert.p, p);
        assert_eq!(cert.p, 3);
        assert_eq!(cert.bound, 8);
        // off-diagonal values 0 and 2: sqrt(2/2) = 1 is rational
        assert!(cert.subfield.is_empty());
        assert!(cert.sign_independent);
        assert!(cert.checks.diag_constant && cert.checks.diag_value);

        let (w, _) = matrix_p(10).unwrap();
        let cert = structural_certificate(&w).unwrap();
        assert_eq!(cert.p, 5);
        assert_eq!(cert.bound, 105);
        assert_eq!(cert.subfield.primes(), &[2, 3]);
    }

    #[test]
    fn certificate_refusals() {
        // [[6,5],[5,6]]: sqrt(5/2) needs sqrt(10), prime 5 >= p = 3
        let w = RationalMatrix::from_i64(2, 2, &[6, 5, 5, 6]).unwrap();
        match structural_certificate(&w) {
            Err(CertifyError::OffdiagEscapesSubfield { needs, .. }) => assert_eq!(needs, 5),
            other => panic!("expected escape, got {other:?}"),
        }

        // corB(3): diagonal varies with Hamming weight
        let b = MatrixSpec::CorB(3).generate().unwrap().matrix;
        assert!(matches!(
            structural_certificate(&b),
            Err(CertifyError::DiagonalNotConstant { .. })
        ));

        // constant diagonal 4 is not p(p-1)
        let w = RationalMatrix::from_i64(2, 2, &[4, 0, 0, 4]).unwrap();
        assert!(matches!(
            structural_certificate(&w),
            Err(CertifyError::DiagonalNotPrimeForm { .. })
        ));

        let w = RationalMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(
            structural_certificate(&w),
            Err(CertifyError::NotSquare)
        ));
    }

    #[test]
    fn scale_to_form_examples() {
        let b = crate::field::PrimeBasis::new(&[2, 3]).unwrap();
        let root6 = b.sqrt_of_u64(6).unwrap();
        let root3 = b.sqrt_of_u64(3).unwrap();
        // diag(+sqrt(6), -sqrt(6)) with an off-diagonal sqrt(2) -> after
        // scaling: diagonal +sqrt(3), off-diagonal +-1
        let m = FieldMatrix::from_fn(&b, 2, 2, |i, j| match (i, j) {
            (0, 0) => root6.clone(),
            (1, 1) => root6.neg(),
            (0, 1) => b.sqrt_of_u64(2).unwrap(),
            _ => b.zero(),
        })
        .unwrap();
        let c = scale_to_form(&m, 3).unwrap();
        assert_eq!(c.get(0, 0), &root3);
        assert_eq!(c.get(1, 1), &root3);
        assert!(c.get(0, 1).is_rational());
        assert!(c.get(0, 1).is_one());
        assert_eq!(c.rank(), m.rank());

        let bad = FieldMatrix::identity(&b, 2);
        assert!(matches!(
            scale_to_form(&bad, 3),
            Err(CertifyError::BadDiagonal { row: 0 })
        ));
    }

    #[test]
    fn crosscheck_on_p4_and_p6() {
        let (w, p) = matrix_p(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let s = SignMatrix::random(4, 4, &mut rng);
            assert_eq!(rank_crosscheck(&w, &s, p).unwrap(), 4);
        }

        let (w, p) = matrix_p(6).unwrap();
        let cert = structural_certificate(&w).unwrap();
        let all_plus = SignMatrix::all_plus(15, 15);
        let r = rank_crosscheck(&w, &all_plus, p).unwrap();
        assert!(r >= cert.bound && r <= 15, "rank {r} outside [8, 15]");
    }

    #[test]
    fn multiplicity_bound_examples() {
        let q = crate::field::PrimeBasis::rationals();
        // A = 0 (1x1): charpoly x, no radical roots
        let a = FieldMatrix::zeros(&q, 1, 1);
        assert_eq!(charpoly_multiplicity_bound(&a, 2).unwrap(), 0);

        // A = [[0,2],[1,0]]: charpoly x^2 - 2
        let a = FieldMatrix::from_fn(&q, 2, 2, |i, j| match (i, j) {
            (0, 1) => q.from_integer(2),
            (1, 0) => q.from_integer(1),
            _ => q.zero(),
        })
        .unwrap();
        assert_eq!(charpoly_multiplicity_bound(&a, 2).unwrap(), 1);

        // random 8x8 over Q: k <= 4 always (asserted inside)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = FieldMatrix::from_fn(&q, 8, 8, |_, _| {
                use rand::Rng;
                q.from_integer(rng.random_range(-3i64..=3))
            })
            .unwrap();
            let k = charpoly_multiplicity_bound(&a, 3).unwrap();
            assert!(k <= 4);
        }
    }

    #[test]
    fn slack_identity_small() {
        assert!(slack_verify(1));
        assert!(slack_verify(2));
        assert!(slack_verify(3));
    }
}
