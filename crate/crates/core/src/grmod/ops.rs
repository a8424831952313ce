use num::{One, Zero};

use super::linalg::Q;
use super::map::GradedMap;
use super::matrix::HMatrix;
use super::module::{GradedModule, Summand};
use super::presentation::{canonical_decompose, kernel_basis, subquotient, Presentation};
use crate::Result;

use Summand::{Free, Torsion};

/// `dim Hom(s, t)` for indecomposables; always 0 or 1.
pub fn summand_hom(s: &Summand, t: &Summand) -> usize {
    let ok = match (*s, *t) {
        (Free(a), Free(b)) => a <= b,
        (Free(a), Torsion { g, n }) => g - n < a && a <= g,
        (Torsion { .. }, Free(_)) => false,
        (Torsion { g, n }, Torsion { g: h, n: m }) => {
            let e = h - g;
            (m - n).max(0) <= e && e < m
        }
    };
    ok as usize
}

/// `dim Ext¹(s, t)` from `0 → F(g-n) → F(g) → T(g,n) → 0`: the cokernel of
/// `x^n : t_g → t_(g-n)`.
pub fn summand_ext1(s: &Summand, t: &Summand) -> usize {
    let ok = match (*s, *t) {
        (Free(_), _) => false,
        (Torsion { g, n }, Free(b)) => g - n <= b && b < g,
        (Torsion { g, n }, Torsion { g: h, n: m }) => g - n <= h && h < g && g - n > h - m,
    };
    ok as usize
}

/// Dimension and a basis of the degree-0 Hom space.
pub fn hom_group(m: &GradedModule, n: &GradedModule) -> (usize, Vec<GradedMap>) {
    let mut basis = Vec::new();
    for (j, s) in m.summands().iter().enumerate() {
        for (i, t) in n.summands().iter().enumerate() {
            if summand_hom(s, t) == 1 {
                let mut c = vec![vec![Q::zero(); m.len()]; n.len()];
                c[i][j] = Q::one();
                basis.push(
                    GradedMap::new(m.clone(), n.clone(), c).expect("elementary map is well defined"),
                );
            }
        }
    }
    (basis.len(), basis)
}

pub fn ext1_group(m: &GradedModule, n: &GradedModule) -> usize {
    m.summands()
        .iter()
        .map(|s| n.summands().iter().map(|t| summand_ext1(s, t)).sum::<usize>())
        .sum()
}

pub fn tensor(m: &GradedModule, n: &GradedModule) -> GradedModule {
    let mut out = Vec::new();
    for s in m.summands() {
        for t in n.summands() {
            out.push(match (*s, *t) {
                (Free(a), Free(b)) => Free(a + b),
                (Free(a), Torsion { g, n }) | (Torsion { g, n }, Free(a)) => Torsion { g: g + a, n },
                (Torsion { g, n }, Torsion { g: h, n: m }) => Torsion { g: g + h, n: n.min(m) },
            });
        }
    }
    GradedModule::new(out)
}

/// Internal Hom: the module of maps of every degree, graded by weight shift.
pub fn internal_hom(m: &GradedModule, n: &GradedModule) -> GradedModule {
    let mut out = Vec::new();
    for s in m.summands() {
        for t in n.summands() {
            match (*s, *t) {
                (Free(a), Free(b)) => out.push(Free(b - a)),
                (Free(a), Torsion { g, n }) => out.push(Torsion { g: g - a, n }),
                (Torsion { .. }, Free(_)) => {}
                // maps A/x^n → A/x^m land in the x^n-torsion of A/x^m
                (Torsion { g, n }, Torsion { g: h, n: m }) => {
                    out.push(Torsion { g: h - (m - n).max(0) - g, n: n.min(m) })
                }
            }
        }
    }
    GradedModule::new(out)
}

/// Kernel, image and cokernel of a map given on generators of two presentations.
pub fn kic_presented(
    src: &Presentation,
    tgt: &Presentation,
    f: &HMatrix,
) -> Result<(GradedModule, GradedModule, GradedModule)> {
    let coker = canonical_decompose(&Presentation { gens: tgt.gens.clone(), rels: tgt.rels.hcat(f) })?;
    let k = src.gens.len();
    let v: Vec<(i64, Vec<Q>)> = kernel_basis(&f.hcat(&tgt.rels))
        .into_iter()
        .map(|(w, x)| (w, x[..k].to_vec()))
        .collect();
    let image = canonical_decompose(&Presentation {
        gens: src.gens.clone(),
        rels: HMatrix::from_columns(src.gens.clone(), &v),
    })?;
    let ker = subquotient(&src.gens, &v, &src.rels)?;
    Ok((ker, image, coker))
}

pub fn kernel_image_cokernel(f: &GradedMap) -> (GradedModule, GradedModule, GradedModule) {
    let src = Presentation::of_module(f.source());
    let tgt = Presentation::of_module(f.target());
    kic_presented(&src, &tgt, &f.matrix()).expect("canonical presentations are homogeneous")
}
