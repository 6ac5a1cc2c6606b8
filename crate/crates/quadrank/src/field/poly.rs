//! Univariate polynomials over a multiquadratic field, with the division
//! algorithm and the `(x^2 - p)`-multiplicity procedure used by the rank
//! certificates.

use std::fmt;

use super::basis::{is_prime, PrimeBasis};
use super::element::FieldElement;
use super::FieldError;

/// Coefficients lowest degree first; trailing zeros stripped, so the zero
/// polynomial has no coefficients and a nonzero one has a nonzero leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPolynomial {
    basis: PrimeBasis,
    coeffs: Vec<FieldElement>,
}

/// Multiplicity of `(x^2 - p)` in a polynomial; `Infinite` for the zero
/// polynomial, which every power divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Infinite => None,
        }
    }
}

impl FieldPolynomial {
    pub fn new(basis: PrimeBasis, mut coeffs: Vec<FieldElement>) -> Result<Self, FieldError> {
        for c in &coeffs {
            if c.basis() != &basis {
                return Err(FieldError::BasisMismatch);
            }
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(FieldPolynomial { basis, coeffs })
    }

    pub fn zero(basis: PrimeBasis) -> Self {
        FieldPolynomial {
            basis,
            coeffs: Vec::new(),
        }
    }

    /// `x^2 - p` over the given basis.
    pub fn x_squared_minus(basis: &PrimeBasis, p: u64) -> Self {
        FieldPolynomial {
            basis: basis.clone(),
            coeffs: vec![
                basis.from_integer(-(p as i64)),
                basis.zero(),
                basis.one(),
            ],
        }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_integers(basis: &PrimeBasis, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| basis.from_integer(c)).collect();
        FieldPolynomial::new(basis.clone(), coeffs).expect("same basis by construction")
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn coefficient(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.basis.zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        if self.basis != other.basis {
            return Err(FieldError::BasisMismatch);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coefficient(k).add(&other.coefficient(k))?);
        }
        FieldPolynomial::new(self.basis.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FieldPolynomial {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.basis != other.basis {
            return Err(FieldError::BasisMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(FieldPolynomial::zero(self.basis.clone()));
        }
        let mut coeffs = vec![self.basis.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        FieldPolynomial::new(self.basis.clone(), coeffs)
    }

    pub fn pow(&self, e: usize) -> Result<Self, FieldError> {
        let mut out = FieldPolynomial::new(self.basis.clone(), vec![self.basis.one()])?;
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Horner evaluation at a point of the same basis.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if x.basis() != &self.basis {
            return Err(FieldError::BasisMismatch);
        }
        let mut acc = self.basis.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// Re-keys every coefficient over a larger basis.
    pub fn embed(&self, larger: &PrimeBasis) -> Result<Self, FieldError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(larger))
            .collect::<Result<Vec<_>, _>>()?;
        FieldPolynomial::new(larger.clone(), coeffs)
    }

    /// Exact division with remainder: `self = g*q + r` with `deg r < deg g`
    /// or `r = 0`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), FieldError> {
        if self.basis != g.basis {
            return Err(FieldError::BasisMismatch);
        }
        if g.is_zero() {
            return Err(FieldError::DivisionByZeroPolynomial);
        }
        let dg = g.degree().unwrap();
        let lead_inv = g.leading().unwrap().invert()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.basis.zero(); self.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg {
            let k = rem.len() - 1 - dg; // quotient degree of this step
            let factor = rem.last().unwrap().mul(&lead_inv)?;
            if !factor.is_zero() {
                for (i, gc) in g.coeffs.iter().enumerate() {
                    let t = factor.mul(gc)?;
                    rem[k + i] = rem[k + i].sub(&t)?;
                }
                quot[k] = factor;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        Ok((
            FieldPolynomial::new(self.basis.clone(), quot)?,
            FieldPolynomial::new(self.basis.clone(), rem)?,
        ))
    }

    /// The largest `k` with `(x^2 - p)^k` dividing the polynomial over its
    /// coefficient field, which equals the multiplicity of both `sqrt(p)` and
    /// `-sqrt(p)` as real roots. Requires `p` prime and outside the basis, so
    /// that `sqrt(p)` does not lie in the coefficient field.
    pub fn sqrt_root_multiplicity(&self, p: u64) -> Result<Multiplicity, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeGenerator(p));
        }
        if self.basis.contains(p) {
            return Err(FieldError::PrimeInsideField(p));
        }
        if self.is_zero() {
            return Ok(Multiplicity::Infinite);
        }
        let m = FieldPolynomial::x_squared_minus(&self.basis, p);
        let mut k = 0usize;
        let mut q = self.clone();
        while q.degree().map_or(false, |d| d >= 2) {
            let (quot, rem) = q.divmod(&m)?;
            if !rem.is_zero() {
                break;
            }
            k += 1;
            q = quot;
        }
        Ok(Multiplicity::Finite(k))
    }
}

impl fmt::Display for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if k < self.coeffs.len() - 1 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(ps: &[u64]) -> PrimeBasis {
        PrimeBasis::new(ps).unwrap()
    }

    #[test]
    fn divmod_examples() {
        let q = basis(&[]);
        // x^2 - 2 by x - 1: quotient x + 1, remainder -1
        let f = FieldPolynomial::from_integers(&q, &[-2, 0, 1]);
        let g = FieldPolynomial::from_integers(&q, &[-1, 1]);
        let (quot, rem) = f.divmod(&g).unwrap();
        assert_eq!(quot, FieldPolynomial::from_integers(&q, &[1, 1]));
        assert_eq!(rem, FieldPolynomial::from_integers(&q, &[-1]));

        // (x^2 - 3)(x + 5) by x^2 - 3 divides exactly
        let m = FieldPolynomial::from_integers(&q, &[-3, 0, 1]);
        let h = FieldPolynomial::from_integers(&q, &[5, 1]);
        let f = m.mul(&h).unwrap();
        let (quot, rem) = f.divmod(&m).unwrap();
        assert_eq!(quot, h);
        assert!(rem.is_zero());

        // x^3 by x^2 - 3: quotient x, remainder 3x
        let f = FieldPolynomial::from_integers(&q, &[0, 0, 0, 1]);
        let (quot, rem) = f.divmod(&m).unwrap();
        assert_eq!(quot, FieldPolynomial::from_integers(&q, &[0, 1]));
        assert_eq!(rem, FieldPolynomial::from_integers(&q, &[0, 3]));

        assert!(matches!(
            f.divmod(&FieldPolynomial::zero(q.clone())),
            Err(FieldError::DivisionByZeroPolynomial)
        ));
    }

    #[test]
    fn divmod_round_trip_over_radical_field() {
        let b = basis(&[2, 3]);
        let root2 = b.sqrt_of_u64(2).unwrap();
        let root6 = b.sqrt_of_u64(6).unwrap();
        let f = FieldPolynomial::new(
            b.clone(),
            vec![root6.clone(), b.from_integer(2), root2.clone(), b.one()],
        )
        .unwrap();
        let g = FieldPolynomial::new(b.clone(), vec![root2, b.one()]).unwrap();
        let (q, r) = f.divmod(&g).unwrap();
        let back = g.mul(&q).unwrap().add(&r).unwrap();
        assert_eq!(back, f);
        assert!(r.degree().map_or(true, |d| d < g.degree().unwrap()));
    }

    #[test]
    fn multiplicity_examples() {
        let q = basis(&[]);
        // (x^2 - 3)^2 (x + 1): multiplicity 2 at p = 3
        let m3 = FieldPolynomial::from_integers(&q, &[-3, 0, 1]);
        let f = m3
            .pow(2)
            .unwrap()
            .mul(&FieldPolynomial::from_integers(&q, &[1, 1]))
            .unwrap();
        assert_eq!(
            f.sqrt_root_multiplicity(3).unwrap(),
            Multiplicity::Finite(2)
        );

        // x - 5 has no radical roots
        let f = FieldPolynomial::from_integers(&q, &[-5, 1]);
        assert_eq!(
            f.sqrt_root_multiplicity(2).unwrap(),
            Multiplicity::Finite(0)
        );

        // x^2 - 2 over basis (3): multiplicity 1 at p = 2
        let b3 = basis(&[3]);
        let f = FieldPolynomial::from_integers(&b3, &[-2, 0, 1]);
        assert_eq!(
            f.sqrt_root_multiplicity(2).unwrap(),
            Multiplicity::Finite(1)
        );

        // refusal when p generates the coefficient field
        let b2 = basis(&[2]);
        let f = FieldPolynomial::from_integers(&b2, &[-2, 0, 1]);
        assert!(matches!(
            f.sqrt_root_multiplicity(2),
            Err(FieldError::PrimeInsideField(2))
        ));
        assert!(matches!(
            f.sqrt_root_multiplicity(4),
            Err(FieldError::NonPrimeGenerator(4))
        ));

        // zero polynomial: infinite multiplicity
        assert_eq!(
            FieldPolynomial::zero(q).sqrt_root_multiplicity(2).unwrap(),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn eval_detects_planted_roots() {
        let q = basis(&[]);
        let m2 = FieldPolynomial::x_squared_minus(&q, 2);
        let h = FieldPolynomial::from_integers(&q, &[7, 1]);
        let f = m2.pow(3).unwrap().mul(&h).unwrap();
        let b2 = basis(&[2]);
        let root2 = b2.sqrt_of_u64(2).unwrap();
        let lifted = f.embed(&b2).unwrap();
        assert!(lifted.eval(&root2).unwrap().is_zero());
        assert!(lifted.eval(&root2.neg()).unwrap().is_zero());
        assert!(!lifted.eval(&b2.from_integer(1)).unwrap().is_zero());
    }
}
