//! Prime bases for multiquadratic extensions of the rationals.

use std::fmt;
use std::sync::Arc;

use super::FieldError;

/// Configured ceiling on the number of generators; the field dimension is
/// `2^t`, so anything past this is out of desk range anyway.
pub const MAX_GENERATORS: usize = 16;

/// The list of primes `p1 < p2 < ... < pt` generating `Q(sqrt(p1), ..., sqrt(pt))`.
///
/// An empty basis denotes the rationals. Bases are immutable and cheap to
/// clone; elements hold a handle to the basis they live in.
#[derive(Clone, Debug)]
pub struct PrimeBasis {
    primes: Arc<[u64]>,
}

impl PrimeBasis {
    /// Builds the canonical sorted basis from a list of generator primes.
    ///
    /// Input order does not matter; duplicates and non-primes are rejected.
    pub fn new(primes: &[u64]) -> Result<Self, FieldError> {
        let mut sorted: Vec<u64> = primes.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(FieldError::DuplicateGenerator(pair[0]));
            }
        }
        for &p in &sorted {
            if !is_prime(p) {
                return Err(FieldError::NonPrimeGenerator(p));
            }
        }
        if sorted.len() > MAX_GENERATORS {
            return Err(FieldError::TooManyGenerators(sorted.len()));
        }
        // Support keys are stored as the integer product of the primes in the
        // support, so the full product must be representable.
        let mut product: u128 = 1;
        for &p in &sorted {
            product = product
                .checked_mul(p as u128)
                .ok_or(FieldError::GeneratorProductOverflow)?;
        }
        Ok(PrimeBasis {
            primes: sorted.into(),
        })
    }

    /// The basis of the rational field (no generators).
    pub fn rationals() -> Self {
        PrimeBasis {
            primes: Vec::new().into(),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// True iff every generator of `self` is a generator of `larger`.
    pub fn is_subfield_of(&self, larger: &PrimeBasis) -> bool {
        self.primes.iter().all(|&p| larger.contains(p))
    }

    /// The smallest basis containing the generators of both operands.
    pub fn union(&self, other: &PrimeBasis) -> Result<PrimeBasis, FieldError> {
        let mut primes: Vec<u64> = self.primes.to_vec();
        primes.extend(other.primes.iter().copied());
        primes.sort_unstable();
        primes.dedup();
        PrimeBasis::new(&primes)
    }

    /// Checks that `s` is a product of distinct basis primes (1 for the
    /// empty product).
    pub fn is_valid_support(&self, s: u128) -> bool {
        let mut rest = s;
        for &p in self.primes.iter() {
            let p = p as u128;
            if rest % p == 0 {
                rest /= p;
                if rest % p == 0 {
                    return false; // not squarefree
                }
            }
        }
        rest == 1
    }
}

impl PartialEq for PrimeBasis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.primes, &other.primes) || self.primes == other.primes
    }
}

impl Eq for PrimeBasis {}

impl fmt::Display for PrimeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q(")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "sqrt({p})")?;
        }
        write!(f, ")")
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factors `n >= 1` as `m^2 * s` with `s` squarefree; returns `(m, s)`.
pub fn factor_squarefree(n: u128) -> (u128, u128) {
    assert!(n >= 1, "factor_squarefree needs a positive integer");
    let mut rest = n;
    let mut m: u128 = 1;
    let mut s: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            for _ in 0..e / 2 {
                m *= d;
            }
            if e % 2 == 1 {
                s *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        s *= rest;
    }
    (m, s)
}

/// The distinct primes dividing the squarefree part of `n >= 1`, ascending.
pub fn squarefree_prime_factors(n: u128) -> Vec<u64> {
    let (_, s) = factor_squarefree(n);
    let mut primes = Vec::new();
    let mut rest = s;
    let mut d: u128 = 2;
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d as u64);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push(rest as u64);
    }
    primes
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_canonical_basis() {
        let b = PrimeBasis::new(&[3, 2]).unwrap();
        assert_eq!(b.primes(), &[2, 3]);
        let again = PrimeBasis::new(b.primes()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn empty_basis_is_q() {
        let b = PrimeBasis::new(&[]).unwrap();
        assert!(b.is_empty());
        assert_eq!(b, PrimeBasis::rationals());
        assert_eq!(b.to_string(), "Q");
    }

    #[test]
    fn rejects_composites_and_duplicates() {
        assert!(matches!(
            PrimeBasis::new(&[4]),
            Err(FieldError::NonPrimeGenerator(4))
        ));
        assert!(matches!(
            PrimeBasis::new(&[0]),
            Err(FieldError::NonPrimeGenerator(0))
        ));
        assert!(matches!(
            PrimeBasis::new(&[1]),
            Err(FieldError::NonPrimeGenerator(1))
        ));
        assert!(matches!(
            PrimeBasis::new(&[2, 2]),
            Err(FieldError::DuplicateGenerator(2))
        ));
    }

    #[test]
    fn squarefree_factorization() {
        assert_eq!(factor_squarefree(1), (1, 1));
        assert_eq!(factor_squarefree(8), (2, 2));
        assert_eq!(factor_squarefree(6), (1, 6));
        assert_eq!(factor_squarefree(36), (6, 1));
        assert_eq!(factor_squarefree(360), (6, 10));
        assert_eq!(squarefree_prime_factors(360), vec![2, 5]);
        assert_eq!(squarefree_prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn support_validation() {
        let b = PrimeBasis::new(&[2, 3]).unwrap();
        assert!(b.is_valid_support(1));
        assert!(b.is_valid_support(2));
        assert!(b.is_valid_support(6));
        assert!(!b.is_valid_support(4));
        assert!(!b.is_valid_support(5));
        assert!(!b.is_valid_support(12));
    }
}
