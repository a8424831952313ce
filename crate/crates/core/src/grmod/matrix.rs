use num::Zero;

use super::linalg::Q;
use crate::{Error, Result};

/// A homogeneous matrix between free graded modules.
///
/// Row `i` is a basis element of weight `rows[i]`, column `j` one of weight `cols[j]`.
/// The entry `(i, j)` stands for `c[i][j] · x^(rows[i] - cols[j])`, so only the
/// coefficient is stored; it must vanish whenever that exponent is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMatrix {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub c: Vec<Vec<Q>>,
}

impl HMatrix {
    pub fn zeros(rows: Vec<i64>, cols: Vec<i64>) -> Self {
        let c = vec![vec![Q::zero(); cols.len()]; rows.len()];
        Self { rows, cols, c }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.rows[i] - self.cols[j]
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() && self.exponent(i, j) < 0 {
                    return Err(Error::NonHomogeneous {
                        row: i,
                        col: j,
                        msg: format!(
                            "weight {} cannot map to weight {}",
                            self.cols[j], self.rows[i]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        self.c.iter().map(|r| r[j].clone()).collect()
    }

    /// Build from homogeneous column vectors `(weight, coefficients)`.
    pub fn from_columns(rows: Vec<i64>, cols: &[(i64, Vec<Q>)]) -> Self {
        let mut m = Self::zeros(rows, cols.iter().map(|c| c.0).collect());
        for (j, (_, v)) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.c[i][j] = x.clone();
            }
        }
        m
    }

    /// Horizontal concatenation; both sides must have the same row weights.
    pub fn hcat(&self, other: &HMatrix) -> HMatrix {
        assert_eq!(self.rows, other.rows, "hcat: row weights differ");
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        HMatrix { rows: self.rows.clone(), cols, c }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &HMatrix) -> HMatrix {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        let mut m = HMatrix::zeros(rows, cols);
        for (i, r) in self.c.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.c[i][j] = v.clone();
            }
        }
        let (r0, c0) = (self.nrows(), self.ncols());
        for (i, r) in other.c.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.c[r0 + i][c0 + j] = v.clone();
            }
        }
        m
    }

    /// Product `self · other`; exponents add, so only coefficients multiply.
    pub fn mul(&self, other: &HMatrix) -> HMatrix {
        assert_eq!(self.cols, other.rows, "mul: inner weights differ");
        let mut m = HMatrix::zeros(self.rows.clone(), other.cols.clone());
        for i in 0..self.nrows() {
            for t in 0..self.ncols() {
                if self.c[i][t].is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    if !other.c[t][j].is_zero() {
                        let p = &self.c[i][t] * &other.c[t][j];
                        m.c[i][j] += p;
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: &Q) -> HMatrix {
        let mut m = self.clone();
        for r in m.c.iter_mut() {
            for v in r.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Zero::is_zero)
    }
}
