//! Elements of a multiquadratic field, stored as maps from squarefree
//! supports to rational coefficients.

use std::fmt;

use num_bigint::{BigInt, BigUint, ToBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::basis::{factor_squarefree, gcd_u128, PrimeBasis};
use super::FieldError;

/// A term list: `(support, coefficient)` pairs sorted by support with no zero
/// coefficients. The element's value is `sum c * sqrt(support)`.
pub(crate) type Terms = Vec<(u128, BigRational)>;

/// An exact element of `Q(sqrt(p1), ..., sqrt(pt))`.
///
/// Supports are encoded as the integer product of the primes they contain
/// (1 for the empty set), so `{6 -> 1}` is `sqrt(6)` over a basis holding
/// 2 and 3. The zero element has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    basis: PrimeBasis,
    terms: Terms,
}

impl FieldElement {
    pub(crate) fn from_terms(basis: PrimeBasis, mut terms: Terms) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        FieldElement { basis, terms }
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    /// The `(support, coefficient)` pairs, ascending by support.
    pub fn terms(&self) -> impl Iterator<Item = (u128, &BigRational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    /// True iff the element lies in `Q` (only the empty support appears).
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(s, _)| *s == 1)
    }

    /// The value as a rational, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 if self.terms[0].0 == 1 => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, support: u128) -> BigRational {
        match self.terms.binary_search_by(|(s, _)| s.cmp(&support)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    fn check_same_basis(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(FieldError::BasisMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same_basis(other)?;
        Ok(FieldElement::from_terms(
            self.basis.clone(),
            add_terms(&self.terms, &other.terms),
        ))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same_basis(other)?;
        Ok(FieldElement::from_terms(
            self.basis.clone(),
            sub_terms(&self.terms, &other.terms),
        ))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same_basis(other)?;
        Ok(FieldElement::from_terms(
            self.basis.clone(),
            mul_terms(&self.terms, &other.terms),
        ))
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> FieldElement {
        if r.is_zero() {
            return FieldElement {
                basis: self.basis.clone(),
                terms: Vec::new(),
            };
        }
        FieldElement {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(s, c)| (*s, c * r)).collect(),
        }
    }

    /// The exact multiplicative inverse, by recursive conjugation: write
    /// `a = x + y*sqrt(pt)` with `x`, `y` over the smaller basis, then
    /// `a^-1 = (x - y*sqrt(pt)) / (x^2 - pt*y^2)` and recurse on the
    /// denominator. The denominator cannot vanish for nonzero `a` because
    /// the generators are linearly disjoint.
    pub fn invert(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement::from_terms(
            self.basis.clone(),
            invert_terms(&self.terms, self.basis.primes()),
        ))
    }

    /// Re-keys the element over a larger basis; the real value is unchanged.
    pub fn embed(&self, larger: &PrimeBasis) -> Result<FieldElement, FieldError> {
        if !self.basis.is_subfield_of(larger) {
            return Err(FieldError::NotASubfield);
        }
        Ok(FieldElement {
            basis: larger.clone(),
            terms: self.terms.clone(),
        })
    }

    /// True iff every support uses only primes of `sub`.
    pub fn is_in_subfield(&self, sub: &PrimeBasis) -> bool {
        self.terms.iter().all(|(s, _)| sub.is_valid_support(*s))
    }

    /// True iff no support is divisible by `p`, i.e. the element lies in the
    /// field generated by the other basis primes.
    pub fn support_free_of(&self, p: u64) -> bool {
        let p = p as u128;
        self.terms.iter().all(|(s, _)| s % p != 0)
    }

    /// Decimal expansion of the real value, truncated toward zero after the
    /// requested number of significant digits. The digits returned are exact:
    /// radicals are bracketed by integer-square-root intervals that are
    /// narrowed until the printed digits are pinned down.
    pub fn approximate(&self, digits: usize) -> String {
        assert!(digits >= 1, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut prec: u32 = digits as u32 + 8;
        loop {
            let (lo, hi) = self.value_interval(prec);
            let negative = if lo.is_positive() {
                false
            } else if hi.is_negative() {
                true
            } else {
                prec *= 2;
                continue;
            };
            let (alo, ahi) = if negative { (-&hi, -&lo) } else { (lo, hi) };
            if let (Some(a), Some(b)) = (
                format_truncated(&alo, digits),
                format_truncated(&ahi, digits),
            ) {
                if a == b {
                    return if negative { format!("-{a}") } else { a };
                }
            }
            prec *= 2;
        }
    }

    /// Rational bounds `lo <= value <= hi` using `prec` decimal digits for
    /// each radical.
    fn value_interval(&self, prec: u32) -> (BigRational, BigRational) {
        let scale = BigUint::from(10u32).pow(prec);
        let scale_sq = &scale * &scale;
        let denom = BigInt::from(scale.clone());
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (s, c) in &self.terms {
            if *s == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let m = (BigUint::from(*s) * &scale_sq).sqrt();
            let root_lo = BigRational::new(m.to_bigint().unwrap(), denom.clone());
            let root_hi =
                BigRational::new((m + BigUint::one()).to_bigint().unwrap(), denom.clone());
            if c.is_positive() {
                lo += c * &root_lo;
                hi += c * &root_hi;
            } else {
                lo += c * &root_hi;
                hi += c * &root_lo;
            }
        }
        (lo, hi)
    }
}

/// Truncates a positive rational to `digits` significant digits; `None` when
/// the leading digit position cannot be determined yet (value too close to 0).
fn format_truncated(a: &BigRational, digits: usize) -> Option<String> {
    if !a.is_positive() {
        return None;
    }
    // e = floor(log10(a)): position of the leading digit.
    let mut e: i64 = 0;
    let one = BigRational::one();
    let ten = BigRational::from_integer(BigInt::from(10));
    if *a >= one {
        let mut t = a / &ten;
        while t >= one {
            t /= &ten;
            e += 1;
        }
    } else {
        let mut t = a * &ten;
        e = -1;
        while t < one {
            t *= &ten;
            e -= 1;
            if e < -10_000 {
                return None;
            }
        }
    }
    // First `digits` significant digits, truncated toward zero.
    let shift = digits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        a * BigRational::from_integer(BigInt::from(10).pow(shift as u32))
    } else {
        a / BigRational::from_integer(BigInt::from(10).pow((-shift) as u32))
    };
    let d = scaled.floor().to_integer().to_string();
    if d.len() != digits {
        return None; // boundary case such as 9.99 -> 10.0; retry with more precision
    }
    let mut out = String::new();
    if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= digits {
            out.push_str(&d);
            for _ in 0..int_len - digits {
                out.push('0');
            }
        } else {
            out.push_str(&d[..int_len]);
            out.push('.');
            out.push_str(&d[int_len..]);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-e - 1) as usize {
            out.push('0');
        }
        out.push_str(&d);
    }
    Some(out)
}

impl PrimeBasis {
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            basis: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        if r.is_zero() {
            return self.zero();
        }
        FieldElement {
            basis: self.clone(),
            terms: vec![(1, r)],
        }
    }

    /// The square root of a nonnegative integer `n = m^2 * s` as the element
    /// `m * sqrt(s)`, provided every prime of the squarefree part `s` is a
    /// basis prime. The returned element squares to `n` exactly.
    pub fn sqrt_of_integer(&self, n: &BigUint) -> Result<FieldElement, FieldError> {
        if n.is_zero() {
            return Ok(self.zero());
        }
        let n128 = n
            .to_u128()
            .ok_or_else(|| FieldError::IntegerTooLarge(n.to_string()))?;
        let (m, s) = factor_squarefree(n128);
        if !self.is_valid_support(s) {
            let missing: Vec<u64> = super::basis::squarefree_prime_factors(s)
                .into_iter()
                .filter(|&p| !self.contains(p))
                .collect();
            return Err(FieldError::OutsideField { missing });
        }
        Ok(FieldElement {
            basis: self.clone(),
            terms: vec![(s, BigRational::from_integer(BigInt::from(m)))],
        })
    }

    /// Convenience wrapper for small integers.
    pub fn sqrt_of_u64(&self, n: u64) -> Result<FieldElement, FieldError> {
        self.sqrt_of_integer(&BigUint::from(n))
    }
}

pub(crate) fn add_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn sub_terms(a: &Terms, b: &Terms) -> Terms {
    let neg: Terms = b.iter().map(|(s, c)| (*s, -c)).collect();
    add_terms(a, &neg)
}

/// `sqrt(S) * sqrt(T) = prod(S /\ T) * sqrt(prod(S xor T))`; with supports
/// stored as products, the shared part is the gcd.
pub(crate) fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::with_capacity(a.len() * b.len());
    for (sa, ca) in a {
        for (sb, cb) in b {
            let g = gcd_u128(*sa, *sb);
            let s = (*sa / g) * (*sb / g);
            let mut c = ca * cb;
            if g != 1 {
                c *= BigRational::from_integer(BigInt::from(g));
            }
            match out.binary_search_by(|(s2, _)| s2.cmp(&s)) {
                Ok(k) => out[k].1 += c,
                Err(k) => out.insert(k, (s, c)),
            }
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Recursive-conjugation inverse over the tower `Q(sqrt(p1)) ⊂ ... ⊂ F`.
fn invert_terms(terms: &Terms, primes: &[u64]) -> Terms {
    debug_assert!(!terms.is_empty());
    if primes.is_empty() {
        debug_assert!(terms.len() == 1 && terms[0].0 == 1);
        return vec![(1, terms[0].1.recip())];
    }
    let (rest, p) = primes.split_at(primes.len() - 1);
    let p = p[0] as u128;
    let mut x = Terms::new();
    let mut y = Terms::new();
    for (s, c) in terms {
        if s % p == 0 {
            y.push((s / p, c.clone()));
        } else {
            x.push((*s, c.clone()));
        }
    }
    if y.is_empty() {
        return invert_terms(&x, rest);
    }
    let x2 = mul_terms(&x, &x);
    let mut py2 = mul_terms(&y, &y);
    let pr = BigRational::from_integer(BigInt::from(p));
    for t in &mut py2 {
        t.1 *= &pr;
    }
    let denom = sub_terms(&x2, &py2);
    assert!(
        !denom.is_empty(),
        "conjugation denominator vanished for a nonzero element"
    );
    let dinv = invert_terms(&denom, rest);
    let a = mul_terms(&x, &dinv);
    let b = mul_terms(&y, &dinv);
    let lifted: Terms = b.into_iter().map(|(s, c)| (s * p, -c)).collect();
    add_terms(&a, &lifted)
}

impl fmt::Display for FieldElement {
    /// Canonical text form: terms `num/den*sqrt(s)` joined by " + " with
    /// supports ascending; the zero element prints as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}/{}*sqrt({})", c.numer(), c.denom(), s)?;
        }
        Ok(())
    }
}

impl PrimeBasis {
    /// Parses the text form emitted by `Display`; whitespace-insensitive.
    /// Accepts bare rationals (`-1/3`, `5`) as `sqrt(1)` terms.
    pub fn parse_element(&self, input: &str) -> Result<FieldElement, FieldError> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(FieldError::ParseElement("empty element".into()));
        }
        let mut terms = Terms::new();
        for part in compact.split('+') {
            if part.is_empty() {
                return Err(FieldError::ParseElement(format!(
                    "empty term in \"{input}\""
                )));
            }
            let (coeff_str, support) = match part.find("*sqrt(") {
                Some(at) => {
                    let rest = &part[at + 6..];
                    let close = rest.find(')').ok_or_else(|| {
                        FieldError::ParseElement(format!("missing ')' in \"{part}\""))
                    })?;
                    if close + 1 != rest.len() {
                        return Err(FieldError::ParseElement(format!(
                            "trailing input after ')' in \"{part}\""
                        )));
                    }
                    let s: u128 = rest[..close].parse().map_err(|_| {
                        FieldError::ParseElement(format!("bad support in \"{part}\""))
                    })?;
                    (&part[..at], s)
                }
                None => (part, 1u128),
            };
            if support < 1 || !self.is_valid_support(support) {
                return Err(FieldError::ParseElement(format!(
                    "support {support} is not a squarefree product of basis primes"
                )));
            }
            let coeff = parse_rational(coeff_str)
                .ok_or_else(|| FieldError::ParseElement(format!("bad rational \"{coeff_str}\"")))?;
            if coeff.is_zero() {
                continue;
            }
            match terms.binary_search_by(|(s2, _)| s2.cmp(&support)) {
                Ok(k) => terms[k].1 += coeff,
                Err(k) => terms.insert(k, (support, coeff)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(FieldElement {
            basis: self.clone(),
            terms,
        })
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(ps: &[u64]) -> PrimeBasis {
        PrimeBasis::new(ps).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_of_integer_examples() {
        let b23 = basis(&[2, 3]);
        let e = b23.sqrt_of_u64(6).unwrap();
        assert_eq!(e.to_string(), "1/1*sqrt(6)");

        let b2 = basis(&[2]);
        let e = b2.sqrt_of_u64(8).unwrap();
        assert_eq!(e.to_string(), "2/1*sqrt(2)");

        match b2.sqrt_of_u64(3) {
            Err(FieldError::OutsideField { missing }) => assert_eq!(missing, vec![3]),
            other => panic!("expected OutsideField, got {other:?}"),
        }

        // The square-root contract: the result squares back to n.
        for n in [0u64, 1, 2, 12, 48, 360] {
            let b = basis(&[2, 3, 5]);
            let e = b.sqrt_of_u64(n).unwrap();
            let sq = e.mul(&e).unwrap();
            assert_eq!(sq.as_rational().unwrap(), rat(n as i64, 1));
        }
    }

    #[test]
    fn difference_of_squares() {
        let b = basis(&[2]);
        let one = b.one();
        let root2 = b.sqrt_of_u64(2).unwrap();
        let a = one.add(&root2).unwrap();
        let c = one.sub(&root2).unwrap();
        let prod = a.mul(&c).unwrap();
        assert_eq!(prod.as_rational().unwrap(), rat(-1, 1));
    }

    #[test]
    fn product_with_shared_support() {
        let b = basis(&[2, 3]);
        let root6 = b.sqrt_of_u64(6).unwrap();
        let root2 = b.sqrt_of_u64(2).unwrap();
        let root3 = b.sqrt_of_u64(3).unwrap();
        // sqrt(6)*sqrt(2) = 2*sqrt(3)
        assert_eq!(
            root6.mul(&root2).unwrap(),
            root3.scale(&rat(2, 1))
        );
        // disjoint supports: sqrt(2)*sqrt(3) = sqrt(6)
        assert_eq!(root2.mul(&root3).unwrap(), root6);
    }

    #[test]
    fn basis_mismatch_is_reported() {
        let a = basis(&[2]).one();
        let b = basis(&[3]).one();
        assert!(matches!(a.mul(&b), Err(FieldError::BasisMismatch)));
        assert!(matches!(a.add(&b), Err(FieldError::BasisMismatch)));
    }

    #[test]
    fn invert_single_radical_and_rational() {
        let b = basis(&[2]);
        let root2 = b.sqrt_of_u64(2).unwrap();
        let inv = root2.invert().unwrap();
        assert_eq!(inv, root2.scale(&rat(1, 2))); // sqrt(2)/2
        let two = b.from_integer(2);
        assert_eq!(two.invert().unwrap(), b.from_rational(rat(1, 2)));
        assert!(matches!(
            b.zero().invert(),
            Err(FieldError::DivisionByZero)
        ));
    }

    #[test]
    fn invert_dense_element() {
        let b = basis(&[2, 3]);
        let e = b
            .one()
            .add(&b.sqrt_of_u64(2).unwrap())
            .unwrap()
            .add(&b.sqrt_of_u64(3).unwrap())
            .unwrap();
        let inv = e.invert().unwrap();
        assert!(e.mul(&inv).unwrap().is_one());
        // numeric sanity at 14 digits
        let x: f64 = e.approximate(14).parse().unwrap();
        let y: f64 = inv.approximate(14).parse().unwrap();
        assert!((x * y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embed_and_subfield() {
        let b2 = basis(&[2]);
        let b23 = basis(&[2, 3]);
        let b235 = basis(&[2, 3, 5]);
        let e = b2.sqrt_of_u64(2).unwrap();
        let lifted = e.embed(&b23).unwrap();
        assert_eq!(lifted.to_string(), "1/1*sqrt(2)");
        // embedding only goes up the tower
        assert!(matches!(lifted.embed(&b2), Err(FieldError::NotASubfield)));
        let five = b235.from_integer(5);
        assert_eq!(five.embed(&b235).unwrap(), five);
        // sqrt(6)+1 over (2,3,5) lies in the (2,3) subfield
        let s = b235
            .sqrt_of_u64(6)
            .unwrap()
            .add(&b235.one())
            .unwrap();
        assert!(s.is_in_subfield(&b23));
        assert!(!b235.sqrt_of_u64(5).unwrap().is_in_subfield(&b23));
        let b3 = basis(&[3]);
        assert!(matches!(
            b235.sqrt_of_u64(5).unwrap().embed(&b3),
            Err(FieldError::NotASubfield)
        ));
    }

    #[test]
    fn approximate_known_constants() {
        let b = basis(&[2]);
        let root2 = b.sqrt_of_u64(2).unwrap();
        assert_eq!(root2.approximate(5), "1.4142");
        let e = root2.sub(&b.one()).unwrap();
        assert_eq!(e.approximate(3), "0.414");
        assert_eq!(b.zero().approximate(7), "0");
        assert_eq!(b.from_integer(-2).approximate(4), "-2.000");
        assert_eq!(b.from_integer(1234).approximate(2), "1200");
        assert_eq!(b.from_rational(rat(1, 2)).approximate(3), "0.500");
    }

    #[test]
    fn parse_round_trip() {
        let b = basis(&[2, 3]);
        let e = b
            .parse_element("3/2*sqrt(6) + -1/3*sqrt(1)")
            .unwrap();
        assert_eq!(e.to_string(), "-1/3*sqrt(1) + 3/2*sqrt(6)");
        let again = b.parse_element(&e.to_string()).unwrap();
        assert_eq!(e, again);
        assert_eq!(b.parse_element(" 0 ").unwrap(), b.zero());
        assert_eq!(b.parse_element("5").unwrap(), b.from_integer(5));
        assert!(b.parse_element("1*sqrt(5)").is_err());
        assert!(b.parse_element("1*sqrt(4)").is_err());
    }
}
