//! Modules materialized on a finite weight window.
//!
//! A window module stores the weight spaces `M_u` for `lo ≤ u ≤ hi` and the matrices of
//! `x : M_u → M_{u-1}`. Free summands are cut off below `lo`, so everything here is
//! exact only for weights far enough inside the window; callers pad accordingly.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use super::linalg::{complement, solve, span_rank, Mat, Q};
use crate::grmod::{GradedMap, GradedModule, Presentation, Summand};
use crate::{Error, Result};

/// An inclusive weight range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightWindow {
    pub lo: i64,
    pub hi: i64,
}

impl WeightWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, other: WeightWindow) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn union(self, o: WeightWindow) -> Self {
        Self { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn pad(self, by: i64) -> Self {
        Self { lo: self.lo - by, hi: self.hi + by }
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Occupied weights of a summand, with free summands standing in by their top.
fn summand_span(s: &Summand) -> WeightWindow {
    WeightWindow::new(s.socle().unwrap_or(s.top()), s.top())
}

/// The least window holding every top and socle of the given modules, padded by 2.
pub fn window_for<'a>(ms: impl IntoIterator<Item = &'a GradedModule>) -> WeightWindow {
    let mut w: Option<WeightWindow> = None;
    for m in ms {
        for s in m.summands() {
            let sp = summand_span(s);
            w = Some(w.map_or(sp, |w| w.union(sp)));
        }
    }
    w.unwrap_or(WeightWindow::new(0, 0)).pad(2)
}

/// Require that `inner` is at least two weights inside `outer` at both ends.
pub fn require_window(outer: WeightWindow, inner: WeightWindow) -> Result<()> {
    if outer.pad(-2).contains(inner) {
        Ok(())
    } else {
        Err(Error::Window(format!(
            "[{}, {}] does not cover [{}, {}] with padding 2",
            outer.lo, outer.hi, inner.lo, inner.hi
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowModule {
    pub win: WeightWindow,
    dims: Vec<usize>,
    /// `x[u - lo] : M_u → M_{u-1}`; for `u = lo` the target is empty.
    x: Vec<Mat>,
}

impl WindowModule {
    pub fn dim(&self, u: i64) -> usize {
        if u < self.win.lo || u > self.win.hi {
            0
        } else {
            self.dims[(u - self.win.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `x : M_u → M_{u-1}`.
    pub fn x(&self, u: i64) -> Mat {
        if u <= self.win.lo || u > self.win.hi {
            Mat::zeros(self.dim(u - 1), self.dim(u))
        } else {
            self.x[(u - self.win.lo) as usize].clone()
        }
    }

    /// `x^j : M_u → M_{u-j}`.
    pub fn xpow(&self, u: i64, j: i64) -> Mat {
        let mut m = Mat::identity(self.dim(u));
        for t in 0..j {
            m = self.x(u - t).mul(&m);
        }
        m
    }

    /// A canonical module, one basis vector per occupied weight of each summand.
    pub fn of_module(m: &GradedModule, win: WeightWindow) -> Self {
        let index: Vec<BTreeMap<i64, usize>> = win
            .weights()
            .map(|u| {
                let mut at = BTreeMap::new();
                for (i, s) in m.summands().iter().enumerate() {
                    if s.occupies(u) {
                        let k = at.len();
                        at.insert(i as i64, k);
                    }
                }
                at
            })
            .collect();
        let dims: Vec<usize> = index.iter().map(|a| a.len()).collect();
        let x = win
            .weights()
            .map(|u| {
                let i = (u - win.lo) as usize;
                if i == 0 {
                    return Mat::zeros(0, dims[0]);
                }
                let mut mat = Mat::zeros(dims[i - 1], dims[i]);
                for (s, &c) in &index[i] {
                    if let Some(&r) = index[i - 1].get(s) {
                        mat.a[r][c] = Q::one();
                    }
                }
                mat
            })
            .collect();
        Self { win, dims, x }
    }

    /// The module presented by `p`: at weight `u`, generators of weight `≥ u` modulo the
    /// relations of weight `≥ u`, as vectors of generator coefficients.
    pub fn of_presentation(p: &Presentation, win: WeightWindow) -> Self {
        let ng = p.gens.len();
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); ng];
            v[i] = Q::one();
            v
        };
        let mut rels = Vec::new();
        let mut basis = Vec::new();
        for u in win.weights() {
            let r: Vec<Vec<Q>> =
                (0..p.rels.ncols()).filter(|&j| p.rels.cols[j] >= u).map(|j| p.rels.column(j)).collect();
            let cands: Vec<Vec<Q>> = (0..ng).filter(|&i| p.gens[i] >= u).map(unit).collect();
            basis.push(complement(&r, &cands, ng));
            rels.push(r);
        }
        Self::from_quotients(win, ng, &basis, &rels, |_, v| v.to_vec())
    }

    /// Subquotient `A/B` of `self`, given bases of `A_u ⊇ B_u` in coordinates of `M_u`.
    /// Both families must be stable under `x`.
    pub fn subquotient(&self, a: &[Vec<Vec<Q>>], b: &[Vec<Vec<Q>>]) -> Self {
        let basis: Vec<Vec<Vec<Q>>> = self
            .win
            .weights()
            .map(|u| {
                let i = (u - self.win.lo) as usize;
                complement(&b[i], &a[i], self.dim(u))
            })
            .collect();
        Self::from_quotients(self.win, 0, &basis, b, |u, v| self.x(u).apply(v))
    }

    /// Shared assembly: `basis[i]` spans a complement of `rels[i]` at weight `lo + i`, and
    /// `push(u, v)` carries a vector at weight `u` to weight `u - 1`. `ambient` is the
    /// fixed vector length, or 0 to read it from the current weight space.
    fn from_quotients(
        win: WeightWindow,
        ambient: usize,
        basis: &[Vec<Vec<Q>>],
        rels: &[Vec<Vec<Q>>],
        push: impl Fn(i64, &[Q]) -> Vec<Q>,
    ) -> Self {
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let x = win
            .weights()
            .map(|u| {
                let i = (u - win.lo) as usize;
                if i == 0 {
                    return Mat::zeros(0, dims[0]);
                }
                let mut cols: Vec<Vec<Q>> = basis[i - 1].clone();
                cols.extend(rels[i - 1].iter().cloned());
                let mut mat = Mat::zeros(dims[i - 1], dims[i]);
                for (c, v) in basis[i].iter().enumerate() {
                    let image = push(u, v);
                    let n = if ambient > 0 { ambient } else { image.len() };
                    let z = solve(&cols, n, &image).expect("x preserves the subquotient");
                    for r in 0..dims[i - 1] {
                        mat.a[r][c] = z[r].clone();
                    }
                }
                mat
            })
            .collect();
        Self { win, dims, x }
    }

    /// The twist `M(s)`, whose weight `u` space is `M_{u-s}`.
    pub fn twist(&self, s: i64) -> Self {
        Self { win: WeightWindow::new(self.win.lo + s, self.win.hi + s), dims: self.dims.clone(), x: self.x.clone() }
    }

    /// Restrict or zero-extend to another window.
    pub fn rewindow(&self, win: WeightWindow) -> Self {
        let dims: Vec<usize> = win.weights().map(|u| self.dim(u)).collect();
        let x = win
            .weights()
            .map(|u| if u == win.lo { Mat::zeros(0, self.dim(u)) } else { self.x(u) })
            .collect();
        Self { win, dims, x }
    }

    pub fn profile(&self, range: WeightWindow) -> Profile {
        let mut p = Profile { range, dims: BTreeMap::new(), ranks: BTreeMap::new() };
        for u in range.weights() {
            p.dims.insert(u, self.dim(u));
            let mut m = Mat::identity(self.dim(u));
            for j in 1..=(u - range.lo) {
                m = self.x(u - j + 1).mul(&m);
                let r = super::linalg::rank(&m);
                if r > 0 {
                    p.ranks.insert((u, j), r);
                }
            }
        }
        p
    }
}

/// The per-weight matrices of a canonical map, in the bases of [`WindowModule::of_module`].
pub fn map_matrices(f: &GradedMap, win: WeightWindow) -> Vec<Mat> {
    let pos = |m: &GradedModule, u: i64| -> BTreeMap<usize, usize> {
        let mut at = BTreeMap::new();
        for (i, s) in m.summands().iter().enumerate() {
            if s.occupies(u) {
                let k = at.len();
                at.insert(i, k);
            }
        }
        at
    };
    win.weights()
        .map(|u| {
            let src = pos(f.source(), u);
            let tgt = pos(f.target(), u);
            let mut mat = Mat::zeros(tgt.len(), src.len());
            for (&i, &r) in &tgt {
                for (&j, &c) in &src {
                    mat.a[r][c] = f.coeffs()[i][j].clone();
                }
            }
            mat
        })
        .collect()
}

/// Dimensions and the ranks of every power of `x` inside a weight range; for modules
/// that are direct sums of intervals these determine the module up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub range: WeightWindow,
    pub dims: BTreeMap<i64, usize>,
    /// `(u, j) ↦ rank(x^j : M_u → M_{u-j})`, zeros omitted.
    pub ranks: BTreeMap<(i64, i64), usize>,
}

impl Profile {
    pub fn zero(range: WeightWindow) -> Self {
        Self { range, dims: range.weights().map(|u| (u, 0)).collect(), ranks: BTreeMap::new() }
    }

    /// The profile of a direct sum.
    pub fn add(&mut self, o: &Profile) {
        for (u, d) in &o.dims {
            *self.dims.entry(*u).or_default() += d;
        }
        for (k, r) in &o.ranks {
            *self.ranks.entry(*k).or_default() += r;
        }
    }

    /// First weight where the two profiles differ, for diagnostics.
    pub fn first_difference(&self, o: &Profile) -> Option<String> {
        for u in self.range.weights() {
            let (a, b) = (self.dims.get(&u).copied().unwrap_or(0), o.dims.get(&u).copied().unwrap_or(0));
            if a != b {
                return Some(format!("dim at weight {u}: {a} vs {b}"));
            }
        }
        let keys: std::collections::BTreeSet<_> = self.ranks.keys().chain(o.ranks.keys()).collect();
        for k in keys {
            let (a, b) = (self.ranks.get(k).copied().unwrap_or(0), o.ranks.get(k).copied().unwrap_or(0));
            if a != b {
                return Some(format!("rank of x^{} at weight {}: {a} vs {b}", k.1, k.0));
            }
        }
        None
    }
}

/// Rank of the span of vectors, re-exported for the checks.
pub(crate) fn dim_span(vs: &[Vec<Q>], n: usize) -> usize {
    span_rank(vs, n)
}

impl WindowModule {
    pub(crate) fn from_parts(win: WeightWindow, dims: Vec<usize>, x: Vec<Mat>) -> Self {
        Self { win, dims, x }
    }
}

impl Profile {
    /// Read the module back as a sum of intervals. An interval reaching the bottom of the
    /// range is taken to be a truncated free summand, which is right whenever the range
    /// sits at least two weights below every socle.
    pub fn to_module(&self) -> GradedModule {
        let (lo, hi) = (self.range.lo, self.range.hi);
        let r = |u: i64, v: i64| -> i64 {
            if u > hi || v < lo || v > u {
                0
            } else if u == v {
                self.dims.get(&u).copied().unwrap_or(0) as i64
            } else {
                self.ranks.get(&(u, u - v)).copied().unwrap_or(0) as i64
            }
        };
        let mut out = Vec::new();
        for u in lo..=hi {
            for v in lo..=u {
                let mult = r(u, v) - r(u + 1, v) - r(u, v - 1) + r(u + 1, v - 1);
                let s = if v == lo { Summand::Free(u) } else { Summand::Torsion { g: u, n: u - v + 1 } };
                for _ in 0..mult.max(0) {
                    out.push(s);
                }
            }
        }
        GradedModule::new(out)
    }
}
