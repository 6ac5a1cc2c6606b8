//! Exact dense linear algebra over a multiquadratic field: rank by
//! elimination, characteristic polynomials, Kronecker and block assembly,
//! entrywise square roots of rational matrices, and sign application.

mod charpoly;
mod fileio;
mod rational;
mod sign;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use fileio::{parse_matrix, ParsedMatrix};
pub use rational::RationalMatrix;
pub use sign::SignMatrix;

use crate::field::{FieldElement, FieldError, PrimeBasis};

pub const DEFAULT_CHARPOLY_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {n} exceeds the characteristic polynomial cap {cap}")]
    DimensionCapExceeded { n: usize, cap: usize },
    #[error("negative entry at ({row},{col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("scaling vector length {got} does not match dimension {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("block grid is ragged at block ({row},{col})")]
    RaggedBlocks { row: usize, col: usize },
    #[error("matrix entries belong to different bases")]
    BasisMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("matrix parse error: {0}")]
    Parse(String),
}

/// Which side a diagonal scaling acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A dense row-major matrix of field elements sharing one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    basis: PrimeBasis,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn from_fn(
        basis: &PrimeBasis,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                if e.basis() != basis {
                    return Err(LinalgError::BasisMismatch);
                }
                entries.push(e);
            }
        }
        Ok(FieldMatrix {
            basis: basis.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_entries(
        basis: &PrimeBasis,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(rows, cols, entries.len(), 1));
        }
        if entries.iter().any(|e| e.basis() != basis) {
            return Err(LinalgError::BasisMismatch);
        }
        Ok(FieldMatrix {
            basis: basis.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(basis: &PrimeBasis, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            basis: basis.clone(),
            rows,
            cols,
            entries: vec![basis.zero(); rows * cols],
        }
    }

    pub fn identity(basis: &PrimeBasis, n: usize) -> Self {
        let mut m = Self::zeros(basis, n, n);
        for i in 0..n {
            m.entries[i * n + i] = basis.one();
        }
        m
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: FieldElement) {
        assert!(e.basis() == &self.basis, "entry basis differs from matrix");
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Result<FieldElement, LinalgError> {
        self.require_square()?;
        let mut t = self.basis.zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i))?;
        }
        Ok(t)
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        if self.basis != other.basis {
            return Err(LinalgError::BasisMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix {
            basis: self.basis.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        if self.basis != other.basis {
            return Err(LinalgError::BasisMismatch);
        }
        let mut out = Self::zeros(&self.basis, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b)?;
                    let cur = out.get(i, j).add(&t)?;
                    out.entries[i * out.cols + j] = cur;
                }
            }
        }
        Ok(out)
    }

    /// Adds `c` to every diagonal entry.
    pub fn add_scalar_diag(&self, c: &FieldElement) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            let e = out.get(i, i).add(c)?;
            out.entries[i * out.cols + i] = e;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self, LinalgError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix {
            basis: self.basis.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Self {
        FieldMatrix {
            basis: self.basis.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        FieldMatrix {
            basis: self.basis.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Re-keys every entry over a larger basis.
    pub fn embed(&self, larger: &PrimeBasis) -> Result<Self, LinalgError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(larger))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix {
            basis: larger.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise product with a sign matrix; applying the same signs twice
    /// is the identity.
    pub fn apply_signs(&self, signs: &SignMatrix) -> Result<Self, LinalgError> {
        if self.rows != signs.rows() || self.cols != signs.cols() {
            return Err(LinalgError::DimensionMismatch(
                self.rows,
                self.cols,
                signs.rows(),
                signs.cols(),
            ));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if signs.get(i, j) < 0 {
                    let e = out.get(i, j).neg();
                    out.entries[i * out.cols + j] = e;
                }
            }
        }
        Ok(out)
    }

    /// Scales rows (left) or columns (right) by the given field elements.
    pub fn diag_scale(&self, d: &[FieldElement], side: Side) -> Result<Self, LinalgError> {
        let want = match side {
            Side::Left => self.rows,
            Side::Right => self.cols,
        };
        if d.len() != want {
            return Err(LinalgError::LengthMismatch {
                got: d.len(),
                want,
            });
        }
        if d.iter().any(|e| e.basis() != &self.basis) {
            return Err(LinalgError::BasisMismatch);
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = match side {
                    Side::Left => &d[i],
                    Side::Right => &d[j],
                };
                let e = out.get(i, j).mul(s)?;
                out.entries[i * out.cols + j] = e;
            }
        }
        Ok(out)
    }

    /// Kronecker product; dimensions multiply.
    pub fn kronecker(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.basis != other.basis {
            return Err(LinalgError::BasisMismatch);
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(&self.basis, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let e = a.mul(b)?;
                        out.entries[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] = e;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Assembles a grid of conformal blocks into one dense matrix.
    pub fn block_assemble(blocks: &[Vec<FieldMatrix>]) -> Result<Self, LinalgError> {
        assert!(
            !blocks.is_empty() && !blocks[0].is_empty(),
            "block grid must be nonempty"
        );
        let basis = blocks[0][0].basis.clone();
        let grid_cols = blocks[0].len();
        let mut row_heights = Vec::with_capacity(blocks.len());
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != grid_cols {
                return Err(LinalgError::RaggedBlocks { row: bi, col: row.len() });
            }
            let h = row[0].rows;
            for (bj, b) in row.iter().enumerate() {
                if b.rows != h || b.cols != col_widths[bj] {
                    return Err(LinalgError::RaggedBlocks { row: bi, col: bj });
                }
                if b.basis != basis {
                    return Err(LinalgError::BasisMismatch);
                }
            }
            row_heights.push(h);
        }
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut out = Self::zeros(&basis, rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for b in row {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.entries[(r0 + i) * cols + (c0 + j)] = b.get(i, j).clone();
                    }
                }
                c0 += b.cols;
            }
            r0 += row_heights[bi];
        }
        Ok(out)
    }

    /// Extracts the square block of size `size` at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> FieldMatrix {
        let mut out = Self::zeros(&self.basis, size, size);
        for i in 0..size {
            for j in 0..size {
                out.entries[i * size + j] = self.get(bi * size + i, bj * size + j).clone();
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination in primitive fraction-free form.
    ///
    /// Pivots take the first nonzero entry scanning down the column. For a
    /// pivot `d` with conjugate chain `d * R = N` (`N` rational), each row
    /// below with a nonzero entry `v` in the pivot column is replaced by
    /// `N * row - (v * R) * pivot_row` — the Gaussian update scaled by `N` —
    /// and then divided by the rational gcd of all its coefficients. Every
    /// working entry keeps integer coefficients, the inner loop is pure
    /// integer multiplication, the content step removes the `N` scaling
    /// again, and entries stay at minor-quotient size. Rows with a zero in
    /// the pivot column are untouched. Fully deterministic.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<ITerms>> = (0..self.rows)
            .map(|i| int_terms_row(&self.entries[i * self.cols..(i + 1) * self.cols]))
            .collect();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| !work[r][col].is_empty()) else {
                continue;
            };
            work.swap(rank, pivot_row);
            let (chain, norm) = conjugate_chain(&work[rank][col], self.basis.primes());
            for r in rank + 1..self.rows {
                let val = std::mem::take(&mut work[r][col]);
                if val.is_empty() {
                    continue;
                }
                let factor = imul_terms(&val, &chain);
                let (pivot_slice, row_slice) = {
                    let (a, b) = work.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for j in col + 1..self.cols {
                    let scaled = iscale_terms(&row_slice[j], &norm);
                    row_slice[j] = if pivot_slice[j].is_empty() {
                        scaled
                    } else {
                        isub_terms(&scaled, &imul_terms(&factor, &pivot_slice[j]))
                    };
                }
                inormalize_row(row_slice);
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Entrywise product with itself, recovering the squared matrix.
    pub fn entrywise_square(&self) -> Result<Self, LinalgError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix {
            basis: self.basis.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Converts to a rational matrix if every entry lies in `Q`.
    pub fn to_rational(&self) -> Option<RationalMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.as_rational())
            .collect::<Option<Vec<_>>>()?;
        Some(RationalMatrix::from_entries(self.rows, self.cols, entries).expect("sized"))
    }
}

/// Elimination-internal representation: sorted `(support, coefficient)`
/// pairs with plain integer coefficients and no zeros.
type ITerms = Vec<(u128, BigInt)>;

/// Clears denominators across a whole row (row scaling is rank-neutral;
/// per-entry scaling would not be) and lands on integer terms.
fn int_terms_row(row: &[FieldElement]) -> Vec<ITerms> {
    let mut den_lcm = BigInt::one();
    for e in row {
        for (_, c) in e.terms() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    row.iter()
        .map(|e| {
            e.terms()
                .map(|(s, c)| (s, c.numer() * (&den_lcm / c.denom())))
                .collect()
        })
        .collect()
}

fn iscale_terms(a: &ITerms, c: &BigInt) -> ITerms {
    a.iter().map(|(s, v)| (*s, v * c)).collect()
}

fn isub_terms(a: &ITerms, b: &ITerms) -> ITerms {
    let mut out = ITerms::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, -&b[j].1));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 - &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(s, v)| (*s, -v)));
    out
}

fn imul_terms(a: &ITerms, b: &ITerms) -> ITerms {
    let mut out = ITerms::with_capacity(a.len() * b.len());
    for (sa, ca) in a {
        for (sb, cb) in b {
            let g = crate::field::gcd_u128(*sa, *sb);
            let s = (*sa / g) * (*sb / g);
            let mut c = ca * cb;
            if g != 1 {
                c *= BigInt::from(g);
            }
            match out.binary_search_by(|(s2, _)| s2.cmp(&s)) {
                Ok(k) => {
                    out[k].1 += c;
                    if out[k].1.is_zero() {
                        out.remove(k);
                    }
                }
                Err(k) => out.insert(k, (s, c)),
            }
        }
    }
    out
}

/// Divides a row by the gcd of all its integer coefficients.
fn inormalize_row(row: &mut [ITerms]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        for (_, c) in e.iter() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        for term in e.iter_mut() {
            term.1 = &term.1 / &g;
        }
    }
}

/// Multiplies `d` by Galois conjugates until the product is rational:
/// returns `(R, N)` with `d * R = N` an integer, one conjugation per basis
/// prime appearing in `d`.
fn conjugate_chain(d: &ITerms, primes: &[u64]) -> (ITerms, BigInt) {
    let mut chain: ITerms = vec![(1u128, BigInt::one())];
    let mut cur = d.clone();
    for &p in primes {
        let p = p as u128;
        if cur.iter().any(|(s, _)| s % p == 0) {
            let conj: ITerms = cur
                .iter()
                .map(|(s, c)| (*s, if s % p == 0 { -c } else { c.clone() }))
                .collect();
            chain = imul_terms(&chain, &conj);
            cur = imul_terms(&cur, &conj);
        }
    }
    debug_assert!(
        cur.len() == 1 && cur[0].0 == 1,
        "norm chain did not land in Q"
    );
    (chain, cur[0].1.clone())
}

/// Square root of a nonnegative rational matrix: the minimal basis holding
/// the squarefree parts of every entry (numerator times denominator), and
/// the matrix of positive square roots over it. Squaring the result entry
/// by entry recovers the input exactly.
pub fn entrywise_sqrt(w: &RationalMatrix) -> Result<(FieldMatrix, PrimeBasis), LinalgError> {
    use num_traits::ToPrimitive;
    let mut primes: Vec<u64> = Vec::new();
    for i in 0..w.rows() {
        for j in 0..w.cols() {
            let v = w.get(i, j);
            if v.is_negative() {
                return Err(LinalgError::NegativeEntry { row: i, col: j });
            }
            if v.is_zero() {
                continue;
            }
            let nd = (v.numer() * v.denom())
                .to_u128()
                .ok_or_else(|| FieldError::IntegerTooLarge(v.to_string()))?;
            primes.extend(crate::field::squarefree_prime_factors(nd));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let basis = PrimeBasis::new(&primes)?;
    let m = FieldMatrix::from_fn(&basis, w.rows(), w.cols(), |i, j| {
        let v = w.get(i, j);
        if v.is_zero() {
            return basis.zero();
        }
        let nd = (v.numer() * v.denom()).to_u128().expect("checked above");
        let (m, s) = crate::field::factor_squarefree(nd);
        // sqrt(a/b) = sqrt(a*b)/b = (m/b) * sqrt(s)
        let coeff = BigRational::new(BigInt::from(m), v.denom().clone());
        basis
            .sqrt_of_integer(&s.into())
            .expect("s factors over the collected basis")
            .scale(&coeff)
    })?;
    Ok((m, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn basis(ps: &[u64]) -> PrimeBasis {
        PrimeBasis::new(ps).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_examples() {
        // sqrt(3)*I2 + [[0,1],[1,0]] has rank 2
        let b = basis(&[3]);
        let root3 = b.sqrt_of_u64(3).unwrap();
        let m = FieldMatrix::from_fn(&b, 2, 2, |i, j| {
            if i == j {
                root3.clone()
            } else {
                b.one()
            }
        })
        .unwrap();
        assert_eq!(m.rank(), 2);

        // zero 4x4
        let z = FieldMatrix::zeros(&basis(&[]), 4, 4);
        assert_eq!(z.rank(), 0);

        // [[1, sqrt(2)], [sqrt(2), 2]] has rank 1
        let b2 = basis(&[2]);
        let root2 = b2.sqrt_of_u64(2).unwrap();
        let m = FieldMatrix::from_entries(
            &b2,
            2,
            2,
            vec![b2.one(), root2.clone(), root2.clone(), b2.from_integer(2)],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    /// Independent oracle: rank as the largest k with a nonzero k x k minor,
    /// determinants by cofactor expansion.
    fn det_cofactor(m: &FieldMatrix, rows: &[usize], cols: &[usize]) -> FieldElement {
        let b = m.basis();
        if rows.is_empty() {
            return b.one();
        }
        let mut acc = b.zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = m.get(rows[0], c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&x| x != c)
                .collect();
            let minor = det_cofactor(m, &rows[1..], &sub_cols);
            let term = e.mul(&minor).unwrap();
            acc = if k % 2 == 0 {
                acc.add(&term).unwrap()
            } else {
                acc.sub(&term).unwrap()
            };
        }
        acc
    }

    fn rank_by_minors(m: &FieldMatrix) -> usize {
        let n = m.rows().min(m.cols());
        for k in (1..=n).rev() {
            let row_sets = subsets(m.rows(), k);
            let col_sets = subsets(m.cols(), k);
            for rs in &row_sets {
                for cs in &col_sets {
                    if !det_cofactor(m, rs, cs).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn rank_matches_minor_oracle_on_small_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let b = basis(&[2, 3]);
        let root2 = b.sqrt_of_u64(2).unwrap();
        for _ in 0..15 {
            let m = FieldMatrix::from_fn(&b, 3, 4, |_, _| {
                let c = rng.random_range(-2i64..=2);
                let d = rng.random_range(-1i64..=1);
                b.from_integer(c)
                    .add(&root2.scale(&rat(d, 1)))
                    .unwrap()
            })
            .unwrap();
            assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }

    #[test]
    fn entrywise_sqrt_examples() {
        let w = RationalMatrix::from_i64(1, 1, &[4]).unwrap();
        let (m, b) = entrywise_sqrt(&w).unwrap();
        assert!(b.is_empty());
        assert_eq!(m.get(0, 0).as_rational().unwrap(), rat(2, 1));

        let w = RationalMatrix::from_i64(2, 2, &[6, 2, 2, 6]).unwrap();
        let (m, b) = entrywise_sqrt(&w).unwrap();
        assert_eq!(b.primes(), &[2, 3]);
        assert_eq!(m.get(0, 0), &b.sqrt_of_u64(6).unwrap());
        assert_eq!(m.get(0, 1), &b.sqrt_of_u64(2).unwrap());

        // [[1/2]] -> sqrt(2)/2
        let w =
            RationalMatrix::from_entries(1, 1, vec![rat(1, 2)]).unwrap();
        let (m, b) = entrywise_sqrt(&w).unwrap();
        assert_eq!(b.primes(), &[2]);
        assert_eq!(m.get(0, 0), &b.sqrt_of_u64(2).unwrap().scale(&rat(1, 2)));
        let sq = m.entrywise_square().unwrap();
        assert_eq!(sq.get(0, 0).as_rational().unwrap(), rat(1, 2));

        let w = RationalMatrix::from_i64(1, 2, &[1, -3]).unwrap();
        assert!(matches!(
            entrywise_sqrt(&w),
            Err(LinalgError::NegativeEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn kronecker_examples() {
        let q = basis(&[]);
        let i2 = FieldMatrix::identity(&q, 2);
        let i4 = FieldMatrix::identity(&q, 4);
        assert_eq!(i2.kronecker(&i2).unwrap(), i4);

        let col = FieldMatrix::from_fn(&q, 2, 1, |_, _| q.one()).unwrap();
        let row = FieldMatrix::from_fn(&q, 1, 2, |_, _| q.one()).unwrap();
        let ones = col.kronecker(&row).unwrap();
        assert_eq!(ones.rows(), 2);
        assert_eq!(ones.cols(), 2);
        assert!(ones.entries.iter().all(|e| e.is_one()));
        assert_eq!(ones.rank(), 1);
    }

    #[test]
    fn diag_scale_examples() {
        let b = basis(&[2, 3]);
        let root6 = b.sqrt_of_u64(6).unwrap();
        let root3 = b.sqrt_of_u64(3).unwrap();
        let m = FieldMatrix::from_fn(&b, 2, 2, |i, j| {
            if i == j {
                root6.clone()
            } else {
                b.zero()
            }
        })
        .unwrap();
        let inv_root2 = b.sqrt_of_u64(2).unwrap().invert().unwrap();
        let scaled = m
            .diag_scale(&[inv_root2.clone(), inv_root2], Side::Left)
            .unwrap();
        assert_eq!(scaled.get(0, 0), &root3);
        assert_eq!(scaled.get(1, 1), &root3);
        assert_eq!(scaled.rank(), 2);

        // scaling with a zero entry may drop rank
        let i2 = FieldMatrix::identity(&b, 2);
        let dropped = i2.diag_scale(&[b.one(), b.zero()], Side::Left).unwrap();
        assert_eq!(dropped.rank(), 1);

        assert!(matches!(
            i2.diag_scale(&[b.one()], Side::Left),
            Err(LinalgError::LengthMismatch { got: 1, want: 2 })
        ));
    }

    #[test]
    fn block_assembly() {
        let q = basis(&[]);
        let a = FieldMatrix::from_fn(&q, 1, 1, |_, _| q.from_integer(1)).unwrap();
        let b = FieldMatrix::from_fn(&q, 1, 1, |_, _| q.from_integer(2)).unwrap();
        let c = FieldMatrix::from_fn(&q, 1, 1, |_, _| q.from_integer(3)).unwrap();
        let d = FieldMatrix::from_fn(&q, 1, 1, |_, _| q.from_integer(4)).unwrap();
        let m = FieldMatrix::block_assemble(&[vec![a, b], vec![c, d]]).unwrap();
        assert_eq!(m.get(0, 0).as_rational().unwrap(), rat(1, 1));
        assert_eq!(m.get(1, 1).as_rational().unwrap(), rat(4, 1));

        let i2 = FieldMatrix::identity(&q, 2);
        let z2 = FieldMatrix::zeros(&q, 2, 2);
        let m = FieldMatrix::block_assemble(&[
            vec![i2.clone(), z2.clone()],
            vec![z2, i2],
        ])
        .unwrap();
        assert_eq!(m, FieldMatrix::identity(&q, 4));
    }

    #[test]
    fn apply_signs_involution_and_rank_invariance() {
        use rand::SeedableRng;
        let b = basis(&[2, 3]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&b, 4, 4, &mut rng);
        let all_plus = SignMatrix::all_plus(4, 4);
        assert_eq!(m.apply_signs(&all_plus).unwrap(), m);

        let all_minus = SignMatrix::from_fn(4, 4, |_, _| -1).unwrap();
        let negated = m.apply_signs(&all_minus).unwrap();
        assert_eq!(negated, m.neg());
        assert_eq!(negated.rank(), m.rank());

        // flipping one row of signs leaves rank unchanged
        let row_flip = SignMatrix::from_fn(4, 4, |i, _| if i == 2 { -1 } else { 1 }).unwrap();
        assert_eq!(m.apply_signs(&row_flip).unwrap().rank(), m.rank());

        let twice = m
            .apply_signs(&row_flip)
            .unwrap()
            .apply_signs(&row_flip)
            .unwrap();
        assert_eq!(twice, m);
    }

    pub(crate) fn random_matrix(
        b: &PrimeBasis,
        rows: usize,
        cols: usize,
        rng: &mut impl rand::Rng,
    ) -> FieldMatrix {
        let root2 = b.sqrt_of_u64(2).unwrap();
        FieldMatrix::from_fn(b, rows, cols, |_, _| {
            let c = rng.random_range(-3i64..=3);
            let d = rng.random_range(-2i64..=2);
            b.from_integer(c).add(&root2.scale(&rat(d, 1))).unwrap()
        })
        .unwrap()
    }
}
