//! Generators for the named matrix families, plus the prime-selection and
//! size-bound combinatorics behind the `P_n` construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::is_prime;
use crate::linalg::RationalMatrix;

/// Full `2^n x 2^n` families are capped here; the `P_n` slices are what
/// scale, not the dense slack matrices.
pub const MAX_FULL_DIMENSION: u32 = 14;

/// Generated square matrices are refused past this many rows.
pub const MAX_SLICE_SIZE: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("n = {0} exceeds the generation cap of {MAX_FULL_DIMENSION} (or n < 1)")]
    DimensionCap(u32),
    #[error("n = {0} is below the smallest supported dimension 4")]
    DomainTooSmall(u32),
    #[error("weight p+1 = {weight} exceeds the string length n = {n}")]
    WeightExceedsN { n: u32, weight: u64 },
    #[error("sequence is not strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("2n-1 = {value} is not prime at index {index}")]
    TwoNMinusOneComposite { index: usize, value: u64 },
    #[error("unrecognized matrix spec \"{0}\"")]
    ParseSpec(String),
}

/// An index into `{0,1}^n`, ordered lexicographically on the bitstring
/// (which matches numeric order with the leftmost character most
/// significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BitIndex {
    n: u32,
    value: u32,
    weight: u32,
}

impl BitIndex {
    pub fn new(n: u32, value: u32) -> Self {
        debug_assert!(n <= 31 && value < (1 << n));
        BitIndex {
            n,
            value,
            weight: value.count_ones(),
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `x^T y` for 0/1 strings: the size of the overlap.
    pub fn overlap(&self, other: &BitIndex) -> u32 {
        (self.value & other.value).count_ones()
    }

    /// All of `{0,1}^n` in lexicographic order.
    pub fn all(n: u32) -> impl Iterator<Item = BitIndex> {
        (0u32..1 << n).map(move |v| BitIndex::new(n, v))
    }

    /// The strings of the given Hamming weight, in lexicographic order.
    pub fn weight_slice(n: u32, weight: u32) -> Vec<BitIndex> {
        BitIndex::all(n).filter(|b| b.weight == weight).collect()
    }
}

impl fmt::Display for BitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..self.n).rev() {
            write!(f, "{}", (self.value >> k) & 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorVariant {
    /// `(x^T y - 1)^2`
    B,
    /// `(x^T y - 1)(x^T y - 2)`
    M,
    /// `x^T y (x^T y - 1)`
    F,
}

impl CorVariant {
    fn value(&self, s: i64) -> i64 {
        match self {
            CorVariant::B => (s - 1) * (s - 1),
            CorVariant::M => (s - 1) * (s - 2),
            CorVariant::F => s * (s - 1),
        }
    }
}

fn check_full_dim(n: u32) -> Result<(), GenError> {
    if n < 1 || n > MAX_FULL_DIMENSION {
        Err(GenError::DimensionCap(n))
    } else {
        Ok(())
    }
}

/// The `2^n x 2^n` correlation slack families, rows and columns in
/// lexicographic order over `{0,1}^n`.
pub fn cor_slack(variant: CorVariant, n: u32) -> Result<RationalMatrix, GenError> {
    check_full_dim(n)?;
    let idx: Vec<BitIndex> = BitIndex::all(n).collect();
    Ok(RationalMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        let s = idx[i].overlap(&idx[j]) as i64;
        BigRational::from_integer(BigInt::from(variant.value(s)))
    }))
}

/// The prime minimizing `|p - n/2|`, ties broken toward the smaller prime.
/// Distances are compared as the integers `|2p - n|`.
pub fn nearest_prime(n: u32) -> Result<u64, GenError> {
    if n < 4 {
        return Err(GenError::DomainTooSmall(n));
    }
    let mut best: Option<(u64, u64)> = None; // (distance, prime)
    for p in 2..=n as u64 {
        if !is_prime(p) {
            continue;
        }
        let dist = (2 * p).abs_diff(n as u64);
        match best {
            Some((d, _)) if d <= dist => {}
            _ => best = Some((dist, p)),
        }
    }
    Ok(best.expect("a prime <= n exists for n >= 4").1)
}

/// The matrix `P_n`: the `corM` values restricted to strings of Hamming
/// weight `p + 1` for `p` the prime nearest `n/2`. Returns the matrix and
/// the prime.
pub fn matrix_p(n: u32) -> Result<(RationalMatrix, u64), GenError> {
    if n < 4 {
        return Err(GenError::DomainTooSmall(n));
    }
    let p = nearest_prime(n)?;
    let weight = p + 1;
    if weight > n as u64 {
        return Err(GenError::WeightExceedsN { n, weight });
    }
    if binomial(n as u64, weight) > BigUint::from(MAX_SLICE_SIZE) {
        return Err(GenError::DimensionCap(n));
    }
    let idx = BitIndex::weight_slice(n, weight as u32);
    let m = RationalMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        let s = idx[i].overlap(&idx[j]) as i64;
        BigRational::from_integer(BigInt::from(CorVariant::M.value(s)))
    });
    Ok((m, p))
}

/// The inner product matrix `IP_n(x,y) = x^T y mod 2`; its entrywise square
/// root equals itself.
pub fn ip_matrix(n: u32) -> Result<RationalMatrix, GenError> {
    check_full_dim(n)?;
    let idx: Vec<BitIndex> = BitIndex::all(n).collect();
    Ok(RationalMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        BigRational::from_integer(BigInt::from((idx[i].overlap(&idx[j]) % 2) as i64))
    }))
}

/// The Fawzi et al. separation family `Q(i,j) = n_i + n_j - 1` over a
/// strictly increasing sequence with every `2n_i - 1` prime. Symmetric,
/// rank 2, but full square root rank.
pub fn fawzi_q(ns: &[u64]) -> Result<RationalMatrix, GenError> {
    for (i, w) in ns.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(GenError::NotIncreasing(i + 1));
        }
    }
    for (i, &v) in ns.iter().enumerate() {
        let q = 2 * v - 1;
        if !is_prime(q) {
            return Err(GenError::TwoNMinusOneComposite { index: i, value: q });
        }
    }
    Ok(RationalMatrix::from_fn(ns.len(), ns.len(), |i, j| {
        BigRational::from_integer(BigInt::from((ns[i] + ns[j] - 1) as i64))
    }))
}

/// The low-rank signing `A_n(x,y) = x^T y - 1`; its entrywise square is
/// `corB(n)` and its rank is at most `n + 1`.
pub fn lowrank_a(n: u32) -> Result<RationalMatrix, GenError> {
    check_full_dim(n)?;
    let idx: Vec<BitIndex> = BitIndex::all(n).collect();
    Ok(RationalMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        BigRational::from_integer(BigInt::from(idx[i].overlap(&idx[j]) as i64 - 1))
    }))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// The size and lower-bound combinatorics around `P_n`, in exact integer
/// arithmetic:
/// `size = C(n, p+1)`, the Bertrand-range floor `C(n, ceil(n/3))`, and the
/// exponential target `3^(n/3 - 1)` compared cubed to avoid fractional
/// powers.
#[derive(Clone, Debug)]
pub struct SizeBoundCheck {
    pub n: u32,
    pub p: u64,
    pub size: BigUint,
    pub bertrand_lower: BigUint,
    pub half_size: BigUint,
    /// `floor(3^((n-3)/3))`, for display.
    pub exp_lower_floor: BigUint,
    /// `size >= C(n, ceil(n/3))`
    pub size_ok: bool,
    /// `ceil(size/2) >= 3^(n/3 - 1)`, checked as `half^3 >= 3^(n-3)`.
    pub half_ok: bool,
}

pub fn size_bound_check(n: u32) -> Result<SizeBoundCheck, GenError> {
    if n < 4 {
        return Err(GenError::DomainTooSmall(n));
    }
    let p = nearest_prime(n)?;
    let size = binomial(n as u64, p + 1);
    let bertrand_lower = binomial(n as u64, (n as u64).div_ceil(3));
    let half_size = (&size + BigUint::one()) / BigUint::from(2u32);
    let pow3 = BigUint::from(3u32).pow(n - 3);
    let half_ok = half_size.pow(3) >= pow3;
    let exp_lower_floor = pow3.cbrt();
    let size_ok = size >= bertrand_lower;
    Ok(SizeBoundCheck {
        n,
        p,
        size,
        bertrand_lower,
        half_size,
        exp_lower_floor,
        size_ok,
        half_ok,
    })
}

/// A parsed CLI-facing family spec such as `corM:5`, `P:10`,
/// `fawziQ:2,3,4`, `IP:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixSpec {
    CorB(u32),
    CorM(u32),
    CorF(u32),
    P(u32),
    Ip(u32),
    FawziQ(Vec<u64>),
    LowrankA(u32),
}

/// A generated matrix with its display label and, for `P_n`, the prime.
#[derive(Clone, Debug)]
pub struct Generated {
    pub matrix: RationalMatrix,
    pub label: String,
    pub prime: Option<u64>,
}

impl MatrixSpec {
    pub fn generate(&self) -> Result<Generated, GenError> {
        match self {
            MatrixSpec::CorB(n) => Ok(Generated {
                matrix: cor_slack(CorVariant::B, *n)?,
                label: format!("corB_{n}"),
                prime: None,
            }),
            MatrixSpec::CorM(n) => Ok(Generated {
                matrix: cor_slack(CorVariant::M, *n)?,
                label: format!("corM_{n}"),
                prime: None,
            }),
            MatrixSpec::CorF(n) => Ok(Generated {
                matrix: cor_slack(CorVariant::F, *n)?,
                label: format!("corF_{n}"),
                prime: None,
            }),
            MatrixSpec::P(n) => {
                let (matrix, p) = matrix_p(*n)?;
                Ok(Generated {
                    matrix,
                    label: format!("P_{n}"),
                    prime: Some(p),
                })
            }
            MatrixSpec::Ip(n) => Ok(Generated {
                matrix: ip_matrix(*n)?,
                label: format!("IP_{n}"),
                prime: None,
            }),
            MatrixSpec::FawziQ(ns) => {
                let labels: Vec<String> = ns.iter().map(|v| v.to_string()).collect();
                Ok(Generated {
                    matrix: fawzi_q(ns)?,
                    label: format!("fawziQ[{}]", labels.join(",")),
                    prime: None,
                })
            }
            MatrixSpec::LowrankA(n) => Ok(Generated {
                matrix: lowrank_a(*n)?,
                label: format!("lowrankA_{n}"),
                prime: None,
            }),
        }
    }

    /// The `n` parameter for families that have one.
    pub fn n(&self) -> Option<u32> {
        match self {
            MatrixSpec::CorB(n)
            | MatrixSpec::CorM(n)
            | MatrixSpec::CorF(n)
            | MatrixSpec::P(n)
            | MatrixSpec::Ip(n)
            | MatrixSpec::LowrankA(n) => Some(*n),
            MatrixSpec::FawziQ(_) => None,
        }
    }
}

impl FromStr for MatrixSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenError::ParseSpec(s.to_string());
        let (family, args) = s.split_once(':').ok_or_else(bad)?;
        let parse_n = || -> Result<u32, GenError> { args.trim().parse().map_err(|_| bad()) };
        match family.trim() {
            "corB" => Ok(MatrixSpec::CorB(parse_n()?)),
            "corM" => Ok(MatrixSpec::CorM(parse_n()?)),
            "corF" => Ok(MatrixSpec::CorF(parse_n()?)),
            "P" => Ok(MatrixSpec::P(parse_n()?)),
            "IP" => Ok(MatrixSpec::Ip(parse_n()?)),
            "lowrankA" => Ok(MatrixSpec::LowrankA(parse_n()?)),
            "fawziQ" => {
                let ns: Vec<u64> = args
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                if ns.is_empty() {
                    return Err(bad());
                }
                Ok(MatrixSpec::FawziQ(ns))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpec::CorB(n) => write!(f, "corB:{n}"),
            MatrixSpec::CorM(n) => write!(f, "corM:{n}"),
            MatrixSpec::CorF(n) => write!(f, "corF:{n}"),
            MatrixSpec::P(n) => write!(f, "P:{n}"),
            MatrixSpec::Ip(n) => write!(f, "IP:{n}"),
            MatrixSpec::FawziQ(ns) => {
                let labels: Vec<String> = ns.iter().map(|v| v.to_string()).collect();
                write!(f, "fawziQ:{}", labels.join(","))
            }
            MatrixSpec::LowrankA(n) => write!(f, "lowrankA:{n}"),
        }
    }
}
