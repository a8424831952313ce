//! Slow reference versions of the module and derived operations, each reduced to
//! kernels and cokernels of explicit matrices on a weight window.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::homext::hom_into_twists;
use super::linalg::{null_space, Mat, Q};
use super::window::{map_matrices, window_for, Profile, WeightWindow, WindowModule};
use crate::derived::FormalObject;
use crate::grmod::{GradedMap, GradedModule, Presentation, Summand};

fn units(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect()
}

fn cols(m: &Mat) -> Vec<Vec<Q>> {
    (0..m.cols).map(|j| m.col(j)).collect()
}

/// The profile of a canonical module over `range`.
pub fn profile_of(m: &GradedModule, range: WeightWindow) -> Profile {
    WindowModule::of_module(m, range.union(window_for([m]))).profile(range)
}

/// Per-degree profiles of a bounded object.
pub fn profiles_of(f: &FormalObject, range: WeightWindow) -> BTreeMap<i64, Profile> {
    f.components().iter().map(|(&k, m)| (k, profile_of(m, range))).collect()
}

/// Compare per-degree profiles, treating missing degrees as zero.
pub fn compare_profiles(a: &BTreeMap<i64, Profile>, b: &BTreeMap<i64, Profile>, range: WeightWindow) -> Option<String> {
    let zero = Profile::zero(range);
    let degrees: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    for k in degrees {
        let (x, y) = (a.get(&k).unwrap_or(&zero), b.get(&k).unwrap_or(&zero));
        if let Some(d) = x.first_difference(y) {
            return Some(format!("degree {k}: {d}"));
        }
    }
    None
}

fn summand_bottom(s: &Summand) -> i64 {
    s.socle().unwrap_or(s.top())
}

/// A window for a presentation: every generator and relation weight, padded by 2.
pub fn presentation_window(p: &Presentation) -> WeightWindow {
    let ws: Vec<i64> = p.gens.iter().chain(p.rels.cols.iter()).copied().collect();
    let lo = ws.iter().copied().min().unwrap_or(0);
    let hi = ws.iter().copied().max().unwrap_or(0);
    WeightWindow::new(lo - 2, hi + 2)
}

/// The presented module, materialized directly from generators and relations.
pub fn oracle_decompose(p: &Presentation) -> Profile {
    let win = presentation_window(p);
    WindowModule::of_presentation(p, win).profile(win)
}

/// `M ⊗ N` through the product presentation: generators `e_i ⊗ f_j`, relations
/// `r ⊗ f_j` and `e_i ⊗ s` for relations `r` of `M` and `s` of `N`.
pub fn tensor_presentation(m: &GradedModule, n: &GradedModule) -> Presentation {
    let rels_of = |a: &GradedModule| -> Vec<(usize, i64)> {
        a.summands()
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Summand::Torsion { g, n } => Some((i, g - n)),
                Summand::Free(_) => None,
            })
            .collect()
    };
    let (gm, gn): (Vec<i64>, Vec<i64>) = (m.generator_weights().collect(), n.generator_weights().collect());
    let gens: Vec<i64> = gm.iter().flat_map(|a| gn.iter().map(move |b| a + b)).collect();
    let idx = |i: usize, j: usize| i * gn.len() + j;
    let mut columns = Vec::new();
    for (i, w) in rels_of(m) {
        for (j, b) in gn.iter().enumerate() {
            let mut v = vec![Q::zero(); gens.len()];
            v[idx(i, j)] = Q::one();
            columns.push((w + b, v));
        }
    }
    for (j, w) in rels_of(n) {
        for (i, a) in gm.iter().enumerate() {
            let mut v = vec![Q::zero(); gens.len()];
            v[idx(i, j)] = Q::one();
            columns.push((w + a, v));
        }
    }
    Presentation { rels: crate::grmod::HMatrix::from_columns(gens.clone(), &columns), gens }
}

pub fn oracle_tensor(m: &GradedModule, n: &GradedModule) -> (WeightWindow, Profile) {
    let p = tensor_presentation(m, n);
    let win = presentation_window(&p);
    (win, WindowModule::of_presentation(&p, win).profile(win))
}

/// The weights where `Hom(M, N)` is compared.
pub fn internal_hom_range(m: &GradedModule, n: &GradedModule) -> WeightWindow {
    let mut lo = 0;
    let mut hi = 0;
    let mut first = true;
    for s in m.summands() {
        for t in n.summands() {
            let (a, b) = (summand_bottom(t) - s.top(), t.top() - summand_bottom(s));
            if first {
                (lo, hi, first) = (a, b, false);
            } else {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
    }
    WeightWindow::new(lo - 2, hi + 2)
}

/// The internal Hom: at weight `w` it is `Hom(M, N(-w))`, with `x` acting through `N`.
pub fn oracle_internal_hom(m: &GradedModule, n: &GradedModule) -> (WeightWindow, Profile) {
    let range = internal_hom_range(m, n);
    let mut p = Profile::zero(range);
    for s in m.summands() {
        for t in n.summands() {
            let (ms, nt) = (GradedModule::new(vec![*s]), GradedModule::new(vec![*t]));
            p.add(&hom_into_twists(&ms, &nt, range, false).profile(range));
        }
    }
    (range, p)
}

/// Kernel, image and cokernel of a map, weight by weight.
pub fn oracle_kic(f: &GradedMap) -> (WeightWindow, [Profile; 3]) {
    let win = window_for([f.source(), f.target()]);
    let mw = WindowModule::of_module(f.source(), win);
    let nw = WindowModule::of_module(f.target(), win);
    let fs = map_matrices(f, win);
    let (mut ker, mut img, mut all_n, mut none_m, mut none_n) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, u) in win.weights().enumerate() {
        ker.push(null_space(&fs[i]));
        img.push(cols(&fs[i]));
        all_n.push(units(nw.dim(u)));
        none_m.push(vec![]);
        none_n.push(vec![]);
    }
    let k = mw.subquotient(&ker, &none_m).profile(win);
    let i = nw.subquotient(&img, &none_n).profile(win);
    let c = nw.subquotient(&all_n, &img).profile(win);
    (win, [k, i, c])
}

/// The window holding every component of a bounded object.
fn formal_window(f: &FormalObject) -> WeightWindow {
    window_for(f.components().values())
}

/// Cokernel and kernel of `x^n` on one component, on the window `wb`.
fn xn_pieces(m: &GradedModule, n: i64, wb: WeightWindow) -> (WindowModule, WindowModule) {
    let mw = WindowModule::of_module(m, wb);
    let (mut all, mut image, mut ker, mut none) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for u in wb.weights() {
        all.push(units(mw.dim(u)));
        image.push(cols(&mw.xpow(u + n, n)));
        ker.push(null_space(&mw.xpow(u, n)));
        none.push(vec![]);
    }
    (mw.subquotient(&all, &image), mw.subquotient(&ker, &none))
}

/// `Li*_n` as the cohomology of `M(-n) --x^n--> M` componentwise: the cokernel stays in
/// degree `k`, the kernel moves to degree `k - 1` twisted by `-n`.
pub fn oracle_li_star(f: &FormalObject, n: i64) -> (WeightWindow, BTreeMap<i64, Profile>) {
    let base = formal_window(f);
    let range = WeightWindow::new(base.lo - n, base.hi);
    let wb = WeightWindow::new(base.lo - 2 * n - 2, base.hi);
    let mut out: BTreeMap<i64, Profile> = BTreeMap::new();
    for (&k, m) in f.components() {
        let (coker, ker) = xn_pieces(m, n, wb);
        out.entry(k).or_insert_with(|| Profile::zero(range)).add(&coker.profile(range));
        out.entry(k - 1).or_insert_with(|| Profile::zero(range)).add(&ker.twist(-n).profile(range));
    }
    (range, out)
}

/// `Ri♭_n` as the cohomology of `M --x^n--> M(n)`: the kernel stays in degree `k`, the
/// cokernel moves to degree `k + 1` twisted by `n`.
pub fn oracle_ri_flat(f: &FormalObject, n: i64) -> (WeightWindow, BTreeMap<i64, Profile>) {
    let base = formal_window(f);
    let range = WeightWindow::new(base.lo, base.hi + n);
    let wb = WeightWindow::new(base.lo - n - 2, base.hi + n);
    let mut out: BTreeMap<i64, Profile> = BTreeMap::new();
    for (&k, m) in f.components() {
        let (coker, ker) = xn_pieces(m, n, wb);
        out.entry(k).or_insert_with(|| Profile::zero(range)).add(&ker.profile(range));
        out.entry(k + 1).or_insert_with(|| Profile::zero(range)).add(&coker.twist(n).profile(range));
    }
    (range, out)
}

/// Dimensions of `RΓ_Z` by degree and weight over a window, read off `Ri♭_n` for an `n`
/// large enough that every weight in the window has stabilized.
pub fn oracle_gamma_dims(f: &FormalObject) -> (WeightWindow, BTreeMap<(i64, i64), usize>) {
    let base = formal_window(f);
    let range = WeightWindow::new(base.lo, base.hi + 4);
    let len = f.components().values().map(|m| m.max_torsion_length()).max().unwrap_or(0);
    let n = (range.hi - range.lo) + len + 4;
    let (_, prof) = oracle_ri_flat(f, n);
    let mut out = BTreeMap::new();
    for (k, p) in prof {
        for u in range.weights() {
            let d = p.dims.get(&u).copied().unwrap_or(0);
            if d > 0 {
                out.insert((k, u), d);
            }
        }
    }
    (range, out)
}

/// `𝔻F = RHom(F, F(0))`: `H^k(𝔻F)_w = Hom(F, F(-w)[k])`, a sum of `Hom` and `Ext¹` of
/// the pieces of `F`, with `x` acting through `F(-w) → F(-w+1)`.
pub fn oracle_dualize(f: &FormalObject) -> (WeightWindow, BTreeMap<i64, Profile>) {
    let pieces: Vec<(i64, Summand)> = f.pieces().collect();
    let hi = pieces.iter().map(|(_, s)| -summand_bottom(s)).max().unwrap_or(0) + 3;
    let lo = pieces.iter().map(|(_, s)| -s.top()).min().unwrap_or(0) - 3;
    let range = WeightWindow::new(lo, hi);
    let omega = GradedModule::free(0);
    let mut out: BTreeMap<i64, Profile> = BTreeMap::new();
    for (a, s) in pieces {
        let ms = GradedModule::new(vec![s]);
        out.entry(-a).or_insert_with(|| Profile::zero(range)).add(&hom_into_twists(&ms, &omega, range, false).profile(range));
        out.entry(1 - a).or_insert_with(|| Profile::zero(range)).add(&hom_into_twists(&ms, &omega, range, true).profile(range));
    }
    (range, out)
}
