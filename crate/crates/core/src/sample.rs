//! Seeded random instances: ranks ≤ 3, torsion lengths ≤ 4, weights in [−6, 6].

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derived::FormalObject;
use crate::grmod::{hom_group, q, GradedMap, GradedModule, HMatrix, Presentation, Q, Summand};
use crate::sstruct::Site;

pub const W_LO: i64 = -6;
pub const W_HI: i64 = 6;
pub const MAX_RANK: usize = 3;
pub const MAX_LEN: i64 = 4;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// An independent stream for sample `index` of check `label`.
pub fn rng(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(mix(mix(seed ^ h) ^ index))
}

pub fn weight(r: &mut impl Rng) -> i64 {
    r.gen_range(W_LO..=W_HI)
}

pub fn module(r: &mut impl Rng) -> GradedModule {
    module_with(r, MAX_RANK, MAX_LEN)
}

pub fn module_with(r: &mut impl Rng, max_rank: usize, max_len: i64) -> GradedModule {
    let mut s = Vec::new();
    for _ in 0..r.gen_range(0..=max_rank) {
        s.push(Summand::Free(weight(r)));
    }
    for _ in 0..r.gen_range(0..=MAX_RANK) {
        s.push(Summand::Torsion { g: weight(r), n: r.gen_range(1..=max_len) });
    }
    GradedModule::new(s)
}

pub fn nonzero_module(r: &mut impl Rng) -> GradedModule {
    loop {
        let m = module(r);
        if !m.is_zero() {
            return m;
        }
    }
}

pub fn torsion_module(r: &mut impl Rng, max_len: i64) -> GradedModule {
    module_with(r, 0, max_len)
}

/// A random valid object on `site`.
pub fn module_on(r: &mut impl Rng, site: Site) -> GradedModule {
    match site {
        Site::X => module(r),
        Site::U => GradedModule::new((0..r.gen_range(0..=MAX_RANK)).map(|_| Summand::Free(weight(r))).collect()),
        Site::Z => torsion_module(r, 1),
        Site::Zn(n) => torsion_module(r, n),
    }
}

fn coeff(r: &mut impl Rng) -> Q {
    q(r.gen_range(-2..=2))
}

/// A random combination of the elementary Hom basis.
pub fn map(r: &mut impl Rng, m: &GradedModule, n: &GradedModule) -> GradedMap {
    let (_, basis) = hom_group(m, n);
    let mut f = GradedMap::zero(m.clone(), n.clone());
    for b in basis {
        let c = coeff(r);
        if c.is_zero() {
            continue;
        }
        let mut scaled = b.coeffs().to_vec();
        for row in scaled.iter_mut() {
            for v in row.iter_mut() {
                *v *= &c;
            }
        }
        let b = GradedMap::new(m.clone(), n.clone(), scaled).expect("scaled basis map");
        f = f.add(&b).expect("same endpoints");
    }
    f
}

/// A presentation of a random extension `0 → A → E → B → 0`: B's torsion relations
/// pick up a random tail in A.
pub fn extension(r: &mut impl Rng, a: &GradedModule, b: &GradedModule) -> Presentation {
    let pa = Presentation::of_module(a);
    let pb = Presentation::of_module(b);
    let mut p = pa.direct_sum(&pb);
    let na = pa.gens.len();
    let nra = pa.rels.ncols();
    for j in 0..pb.rels.ncols() {
        let wj = pb.rels.cols[j];
        for i in 0..na {
            if pa.gens[i] >= wj && r.gen_bool(0.6) {
                p.rels.c[i][nra + j] = coeff(r);
            }
        }
    }
    p
}

/// A random homogeneous presentation with redundant generators and relations.
pub fn presentation(r: &mut impl Rng) -> Presentation {
    let ng = r.gen_range(1..=4);
    let gens: Vec<i64> = (0..ng).map(|_| weight(r)).collect();
    let nr = r.gen_range(0..=4);
    let mut cols = Vec::new();
    for _ in 0..nr {
        let top = *gens.iter().max().unwrap();
        let w = top - r.gen_range(0..=4);
        let v: Vec<Q> = gens
            .iter()
            .map(|&g| if g >= w && r.gen_bool(0.7) { coeff(r) } else { Q::zero() })
            .collect();
        cols.push((w, v));
    }
    Presentation { rels: HMatrix::from_columns(gens.clone(), &cols), gens }
}

/// A random bounded object with components in degrees [−3, 3].
pub fn formal(r: &mut impl Rng) -> FormalObject {
    let mut parts = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let k = r.gen_range(-3..=3);
        let m = module_with(r, 2, MAX_LEN);
        parts.push((k, m));
    }
    FormalObject::from_parts(parts)
}

/// A random bounded object whose components are `x^n`-torsion.
pub fn formal_torsion(r: &mut impl Rng, n: i64) -> FormalObject {
    let mut parts = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        parts.push((r.gen_range(-3..=3), torsion_module(r, n)));
    }
    FormalObject::from_parts(parts)
}
