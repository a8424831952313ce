//! Hom and Ext¹ between window modules.
//!
//! Over `A = Q[x]` the sequence `0 → A ⊗ M(x) → A ⊗ M → M → 0` resolves `M`, so
//! `RHom(M, N)` is computed by `Φ : h ↦ x_N h - h x_M` from the weight-preserving linear
//! maps `⊕_u Hom(M_u, N_u)` to `⊕_u Hom(M_u, N_{u-1})`: Hom is its kernel, Ext¹ its
//! cokernel.

use num::Zero;

use super::linalg::{complement, null_space, rank, solve, Mat, Q};
use super::window::{require_window, window_for, WeightWindow, WindowModule};
use crate::grmod::GradedModule;
use crate::Result;

struct Phi<'a> {
    m: &'a WindowModule,
    n: &'a WindowModule,
    /// Offset of the block `Hom(M_u, N_u)` in the source.
    h_off: Vec<usize>,
    /// Offset of the block `Hom(M_u, N_{u-1})` in the target.
    e_off: Vec<usize>,
    h_dim: usize,
    e_dim: usize,
}

impl<'a> Phi<'a> {
    fn new(m: &'a WindowModule, n: &'a WindowModule) -> Self {
        assert_eq!(m.win, n.win, "hom needs a common window");
        let (mut h_off, mut e_off, mut h, mut e) = (Vec::new(), Vec::new(), 0, 0);
        for u in m.win.weights() {
            h_off.push(h);
            h += n.dim(u) * m.dim(u);
            e_off.push(e);
            e += n.dim(u - 1) * m.dim(u);
        }
        Self { m, n, h_off, e_off, h_dim: h, e_dim: e }
    }

    fn idx(&self, u: i64) -> usize {
        (u - self.m.win.lo) as usize
    }

    fn matrix(&self) -> Mat {
        let mut phi = Mat::zeros(self.e_dim, self.h_dim);
        for u in self.m.win.weights() {
            let (dm, dn) = (self.m.dim(u), self.n.dim(u));
            let xn = self.n.x(u);
            for r in 0..dn {
                for c in 0..dm {
                    let col = self.h_off[self.idx(u)] + r * dm + c;
                    // x_N h_u lands in block u.
                    for r2 in 0..self.n.dim(u - 1) {
                        let v = &xn.a[r2][r];
                        if !v.is_zero() {
                            phi.a[self.e_off[self.idx(u)] + r2 * dm + c][col] += v;
                        }
                    }
                    // -h_u x_M lands in block u + 1.
                    if u < self.m.win.hi {
                        let dm1 = self.m.dim(u + 1);
                        let xm1 = self.m.x(u + 1);
                        for c2 in 0..dm1 {
                            let v = &xm1.a[c][c2];
                            if !v.is_zero() {
                                phi.a[self.e_off[self.idx(u + 1)] + r * dm1 + c2][col] -= v;
                            }
                        }
                    }
                }
            }
        }
        phi
    }

    /// Postcompose a Hom-side vector with `g_u : N_u → N'_u`.
    fn post_h(&self, n2: &WindowModule, g: &dyn Fn(i64) -> Mat, h: &[Q]) -> Vec<Q> {
        let mut out = Vec::new();
        for u in self.m.win.weights() {
            let dm = self.m.dim(u);
            let gu = g(u);
            let off = self.h_off[self.idx(u)];
            for r2 in 0..n2.dim(u) {
                for c in 0..dm {
                    let mut s = Q::zero();
                    for r in 0..self.n.dim(u) {
                        let a = &gu.a[r2][r];
                        if !a.is_zero() {
                            s += a * &h[off + r * dm + c];
                        }
                    }
                    out.push(s);
                }
            }
        }
        out
    }

    /// Postcompose an Ext-side vector; block `u` maps into `N_{u-1}`.
    fn post_e(&self, n2: &WindowModule, g: &dyn Fn(i64) -> Mat, e: &[Q]) -> Vec<Q> {
        let mut out = Vec::new();
        for u in self.m.win.weights() {
            let dm = self.m.dim(u);
            let gu = g(u - 1);
            let off = self.e_off[self.idx(u)];
            for r2 in 0..n2.dim(u - 1) {
                for c in 0..dm {
                    let mut s = Q::zero();
                    for r in 0..self.n.dim(u - 1) {
                        let a = &gu.a[r2][r];
                        if !a.is_zero() {
                            s += a * &e[off + r * dm + c];
                        }
                    }
                    out.push(s);
                }
            }
        }
        out
    }
}

/// `(dim Hom, dim Ext¹)` of two modules materialized on the same window.
pub fn hom_ext_windowed(m: &WindowModule, n: &WindowModule) -> (usize, usize) {
    let phi = Phi::new(m, n);
    let r = rank(&phi.matrix());
    (phi.h_dim - r, phi.e_dim - r)
}

/// `(dim Hom, dim Ext¹)` computed on an explicit window, which must hold both modules
/// with two weights to spare.
pub fn oracle_hom_ext(m: &GradedModule, n: &GradedModule, window: WeightWindow) -> Result<(usize, usize)> {
    require_window(window, window_for([m, n]).pad(-2))?;
    Ok(hom_ext_windowed(&WindowModule::of_module(m, window), &WindowModule::of_module(n, window)))
}

/// `(dim Hom, dim Ext¹)`, one pair of summands at a time on the least adequate window.
pub fn oracle_hom_ext_auto(m: &GradedModule, n: &GradedModule) -> (usize, usize) {
    let (mut h, mut e) = (0, 0);
    for s in m.summands() {
        for t in n.summands() {
            let (ms, nt) = (GradedModule::new(vec![*s]), GradedModule::new(vec![*t]));
            let win = window_for([&ms, &nt]);
            let (a, b) = hom_ext_windowed(&WindowModule::of_module(&ms, win), &WindowModule::of_module(&nt, win));
            h += a;
            e += b;
        }
    }
    (h, e)
}

/// The graded space `w ↦ Hom(M, N(-w))` (or `Ext¹` when `ext`) over `range`, with `x`
/// acting by postcomposition with `x : N(-w) → N(-w+1)`.
pub fn hom_into_twists(m: &GradedModule, n: &GradedModule, range: WeightWindow, ext: bool) -> WindowModule {
    let win = window_for([m, &n.twist(-range.lo), &n.twist(-range.hi)]);
    let big = WeightWindow::new(win.lo + range.lo - 2, win.hi + range.hi + 2);
    let nbig = WindowModule::of_module(n, big);
    let mw = WindowModule::of_module(m, win);
    let twisted: Vec<WindowModule> = range.weights().map(|w| nbig.twist(-w).rewindow(win)).collect();

    // For each w: a basis of the space, and what is needed to take coordinates in it.
    struct Space {
        basis: Vec<Vec<Q>>,
        /// Vectors spanning the part that is divided out (empty for Hom).
        killed: Vec<Vec<Q>>,
        ambient: usize,
    }
    let spaces: Vec<Space> = twisted
        .iter()
        .map(|nw| {
            let phi = Phi::new(&mw, nw);
            let mat = phi.matrix();
            if ext {
                let killed: Vec<Vec<Q>> = (0..mat.cols).map(|j| mat.col(j)).collect();
                let units: Vec<Vec<Q>> = (0..phi.e_dim)
                    .map(|i| {
                        let mut v = vec![Q::zero(); phi.e_dim];
                        v[i] = num::One::one();
                        v
                    })
                    .collect();
                let basis = complement(&killed, &units, phi.e_dim);
                Space { basis, killed, ambient: phi.e_dim }
            } else {
                Space { basis: null_space(&mat), killed: vec![], ambient: phi.h_dim }
            }
        })
        .collect();

    let dims: Vec<usize> = spaces.iter().map(|s| s.basis.len()).collect();
    let mut xs = vec![Mat::zeros(0, dims[0])];
    for (i, w) in range.weights().enumerate().skip(1) {
        let (from, to) = (&spaces[i], &spaces[i - 1]);
        let phi = Phi::new(&mw, &twisted[i]);
        // N(-w)_u = N_{u+w}, and x carries it to N_{u+w-1} = N(-w+1)_u.
        let g = |u: i64| nbig.x(u + w);
        let mut cols = to.basis.clone();
        cols.extend(to.killed.iter().cloned());
        let mut mat = Mat::zeros(dims[i - 1], dims[i]);
        for (c, v) in from.basis.iter().enumerate() {
            let image =
                if ext { phi.post_e(&twisted[i - 1], &g, v) } else { phi.post_h(&twisted[i - 1], &g, v) };
            let z = solve(&cols, to.ambient, &image).expect("postcomposition lands in the space");
            for r in 0..dims[i - 1] {
                mat.a[r][c] = z[r].clone();
            }
        }
        xs.push(mat);
    }
    WindowModule::from_parts(range, dims, xs)
}
