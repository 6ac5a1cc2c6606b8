//! Sign matrices: the entrywise ±1 freedom of a square root factorization.

use rand::Rng;

use super::{LinalgError, RationalMatrix};

/// A matrix with entries in {+1, -1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    signs: Vec<i8>,
}

impl SignMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i8,
    ) -> Result<Self, LinalgError> {
        let mut signs = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if s != 1 && s != -1 {
                    return Err(LinalgError::Parse(format!(
                        "sign entry at ({i},{j}) must be +1 or -1, got {s}"
                    )));
                }
                signs.push(s);
            }
        }
        Ok(SignMatrix { rows, cols, signs })
    }

    pub fn all_plus(rows: usize, cols: usize) -> Self {
        SignMatrix {
            rows,
            cols,
            signs: vec![1; rows * cols],
        }
    }

    pub fn random(rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        SignMatrix {
            rows,
            cols,
            signs: (0..rows * cols)
                .map(|_| if rng.random::<bool>() { 1 } else { -1 })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: i8) {
        assert!(s == 1 || s == -1, "sign must be +1 or -1");
        self.signs[i * self.cols + j] = s;
    }

    /// Witness text: one row per line, "+"/"-" per signed entry and "." where
    /// the reference matrix is zero (no sign freedom there).
    pub fn render_witness(&self, reference: &RationalMatrix) -> String {
        use num_traits::Zero;
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if reference.get(i, j).is_zero() {
                    out.push('.');
                } else if self.get(i, j) > 0 {
                    out.push('+');
                } else {
                    out.push('-');
                }
            }
            out.push('\n');
        }
        out
    }
}
