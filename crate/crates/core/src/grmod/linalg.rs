use num::{BigRational, One, Zero};

pub type Q = BigRational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>], ncols: usize) -> usize {
    let mut w = m.to_vec();
    rref(&mut w, ncols).len()
}

/// Basis of the right kernel of an `nrows x ncols` matrix.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Whether `v` lies in the span of `basis` (all vectors of equal length).
pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let n = v.len();
    let r0 = rank(basis, n);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext, n) == r0
}
