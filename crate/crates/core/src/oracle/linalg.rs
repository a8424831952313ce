//! Dense exact linear algebra, written separately from the fast paths on purpose.

use num::{BigRational, One, Zero};

pub type Q = BigRational;

/// A dense matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Q>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, a: vec![vec![Q::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = Q::one();
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.a[i][j] = v.clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        self.a.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                if self.a[i][t].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.a[t][j].is_zero() {
                        let p = &self.a[i][t] * &o.a[t][j];
                        m.a[i][j] += p;
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (x, y) in self.a[i].iter().zip(v) {
                    if !x.is_zero() && !y.is_zero() {
                        s += x * y;
                    }
                }
                s
            })
            .collect()
    }
}

/// Row echelon form by elimination below and above each pivot; returns pivot columns.
fn echelon(a: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut().filter(|x| !x.is_zero()) {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        piv.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    piv
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.a.clone();
    echelon(&mut a, m.cols).len()
}

/// Rank of the span of some vectors of length `n`.
pub fn span_rank(vs: &[Vec<Q>], n: usize) -> usize {
    let mut a = vs.to_vec();
    echelon(&mut a, n).len()
}

/// Basis of `{v : m v = 0}`.
pub fn null_space(m: &Mat) -> Vec<Vec<Q>> {
    let mut a = m.a.clone();
    let piv = echelon(&mut a, m.cols);
    (0..m.cols)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates `z` with `Σ z_j cols_j = v`, if `v` lies in the span.
pub fn solve(cols: &[Vec<Q>], n: usize, v: &[Q]) -> Option<Vec<Q>> {
    let k = cols.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let piv = echelon(&mut a, k + 1);
    if piv.contains(&k) {
        return None;
    }
    let mut z = vec![Q::zero(); k];
    for (r, &pc) in piv.iter().enumerate() {
        z[pc] = a[r][k].clone();
    }
    Some(z)
}

/// Extend `base` greedily by candidates not already in the span; returns the chosen
/// candidates.
pub fn complement(base: &[Vec<Q>], candidates: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut span = base.to_vec();
    let mut r = span_rank(&span, n);
    let mut out = Vec::new();
    for c in candidates {
        span.push(c.clone());
        let r2 = span_rank(&span, n);
        if r2 > r {
            r = r2;
            out.push(c.clone());
        } else {
            span.pop();
        }
    }
    out
}
