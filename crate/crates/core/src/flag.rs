//! The Borel-equivariant projective line.
//!
//! `A = C[x, y]` with both variables of degree 1; the diagonal torus acts on `x` with
//! weight −1 and on `y` with weight +1, so `x^a y^b` has degree `a + b` and weight
//! `b − a`. The closed orbit is the point `Z = {y = 0}`; its complement `U` is
//! `Spec C[t]` with `t = x/y` of weight −2.
//!
//! Only the computations that single out the s-structure are done here: the torus
//! representations of `i*` on `Z` and of the fibre at the base point of `U`, the
//! dualizing complex of `Z` from the Koszul resolution of `A/(y)`, and the resulting
//! altitudes. The Z-side s-structure uses the flipped convention `V ∈ C≤w` iff `V`
//! has no summand `V_n` with `n < −w`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::grmod::linalg::rank;
use crate::grmod::{GradedModule, Q, Summand};
use crate::sstruct::{member, Dir, SConfig, Site};
use crate::stag::Perversity;
use crate::{Error, Result};

/// `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub a: i64,
    pub b: i64,
}

impl Monomial {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b
    }

    pub fn weight(&self) -> i64 {
        self.b - self.a
    }

    pub fn times(&self, o: Monomial) -> Monomial {
        Monomial::new(self.a + o.a, self.b + o.b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "x^{a}"),
            (0, b) => write!(f, "y^{b}"),
            (a, b) => write!(f, "x^{a}y^{b}"),
        }
    }
}

/// One term `c · x^a y^b · e_gen` of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
    pub mono: Monomial,
    pub gen: usize,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

/// A finitely presented bigraded `A`-module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiGradedModule {
    /// `(internal degree, torus weight)` of each generator.
    pub generators: Vec<(i64, i64)>,
    pub relations: Vec<Vec<Term>>,
}

impl BiGradedModule {
    /// `O(n) = A(n)`: one generator, the unit, in degree `−n` and weight 0.
    pub fn twist(n: i64) -> Self {
        Self { generators: vec![(-n, 0)], relations: vec![] }
    }

    /// The ideal sheaf `I = (y)` of the closed orbit.
    pub fn ideal() -> Self {
        Self::ideal_twist(0)
    }

    /// `I · O(n)`, generated by `y` in degree `1 − n` and weight 1.
    pub fn ideal_twist(n: i64) -> Self {
        Self { generators: vec![(1 - n, 1)], relations: vec![] }
    }

    /// Generators multiply, relations are extended from each side.
    pub fn tensor(&self, o: &BiGradedModule) -> Self {
        let k = o.generators.len();
        let generators =
            self.generators.iter().flat_map(|&(d, w)| o.generators.iter().map(move |&(e, v)| (d + e, w + v))).collect();
        let mut relations = Vec::new();
        for rel in &self.relations {
            for j in 0..k {
                relations.push(rel.iter().map(|t| Term { gen: t.gen * k + j, ..t.clone() }).collect());
            }
        }
        for rel in &o.relations {
            for i in 0..self.generators.len() {
                relations.push(rel.iter().map(|t| Term { gen: i * k + t.gen, ..t.clone() }).collect());
            }
        }
        Self { generators, relations }
    }

    fn check_homogeneous(&self) -> Result<()> {
        for rel in &self.relations {
            let bidegrees: Vec<(i64, i64)> = rel
                .iter()
                .map(|t| {
                    let (d, w) = self.generators[t.gen];
                    (d + t.mono.degree(), w + t.mono.weight())
                })
                .collect();
            if bidegrees.windows(2).any(|p| p[0] != p[1]) {
                return Err(Error::Input(format!("relation is not bihomogeneous: {bidegrees:?}")));
            }
        }
        Ok(())
    }

    /// Monomial multiples `x^a y^b e_i` of total degree `d`.
    fn basis(&self, d: i64) -> Vec<(Monomial, usize)> {
        let mut out = Vec::new();
        for (i, &(di, _)) in self.generators.iter().enumerate() {
            let s = d - di;
            for a in 0..=s.max(-1) {
                out.push((Monomial::new(a, s - a), i));
            }
        }
        out
    }

    /// `dim_C` of the degree-`d` component.
    pub fn dim_at(&self, d: i64) -> usize {
        let basis = self.basis(d);
        let index: BTreeMap<(Monomial, usize), usize> = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut rows = Vec::new();
        for rel in &self.relations {
            let Some(t0) = rel.first() else { continue };
            let s = d - self.generators[t0.gen].0 - t0.mono.degree();
            for a in 0..=s.max(-1) {
                let m = Monomial::new(a, s - a);
                let mut row = vec![Q::zero(); basis.len()];
                for t in rel {
                    if let Some(&j) = index.get(&(t.mono.times(m), t.gen)) {
                        row[j] += &t.c;
                    }
                }
                rows.push(row);
            }
        }
        basis.len() - rank(&rows, basis.len())
    }
}

/// Torus weights of `i*M` on the closed orbit, read off `M/yM` near `Z` (where `x` is
/// invertible) in the degree equal to each generator's weight: degree `n` of `A/I` for
/// `O(n)`, the generator `y` itself for `I`. Supported shapes: generators with
/// relations that are pure powers of `y` times a generator.
pub fn flag_restrict_z(m: &BiGradedModule) -> Result<Vec<i64>> {
    m.check_homogeneous()?;
    let mut killed = vec![false; m.generators.len()];
    for rel in &m.relations {
        match rel.as_slice() {
            [t] if t.mono.a == 0 && !t.c.is_zero() => {
                if t.mono.b == 0 {
                    killed[t.gen] = true;
                }
            }
            _ => return Err(Error::Unsupported("relations other than y^b·e = 0".into())),
        }
    }
    let mut out = Vec::new();
    for (i, &(d, w)) in m.generators.iter().enumerate() {
        if killed[i] {
            continue;
        }
        // x^(w - d) e has degree w; x is a unit near Z, so negative powers are fine.
        let mono = Monomial::new(w - d, 0);
        out.push(w + mono.weight());
    }
    out.sort();
    Ok(out)
}

/// Restriction to the open orbit: the rank and the torus weights of `M/JM` at the base
/// point `(0:1)`, read off the degree-0 part after inverting `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagU {
    pub rank: usize,
    pub steps: Vec<i64>,
}

pub fn flag_restrict_u(m: &BiGradedModule) -> Result<FlagU> {
    m.check_homogeneous()?;
    if !m.relations.is_empty() {
        return Err(Error::Unsupported("restriction to U is implemented for free modules only".into()));
    }
    let mut steps: Vec<i64> = m
        .generators
        .iter()
        .map(|&(d, w)| {
            // y^(-d) e has degree 0.
            w + Monomial::new(0, -d).weight()
        })
        .collect();
    steps.sort();
    Ok(FlagU { rank: m.generators.len(), steps })
}

/// `V ∈ C_Z≤w` in the flipped convention: no summand `V_n` with `n < −w`.
pub fn flipped_le(w: i64, weights: &[i64]) -> bool {
    weights.iter().all(|&n| n >= -w)
}

/// `V ∈ C_Z≥w` in the flipped convention: no summand `V_n` with `n > −w`.
pub fn flipped_ge(w: i64, weights: &[i64]) -> bool {
    weights.iter().all(|&n| n <= -w)
}

/// The same representation in the line's convention (`V_n` pure of step `n`): negate.
pub fn to_line_convention(weights: &[i64]) -> GradedModule {
    weights.iter().map(|&n| Summand::v(-n)).collect()
}

pub fn from_line_convention(m: &GradedModule) -> Vec<i64> {
    let mut w: Vec<i64> = m.summands().iter().map(|s| -s.top()).collect();
    w.sort();
    w
}

/// Membership through the line convention; agrees with [`flipped_le`]/[`flipped_ge`].
pub fn flipped_member_via_line(dir: Dir, w: i64, weights: &[i64]) -> bool {
    member(Site::Z, SConfig::weight(), dir, w, &to_line_convention(weights)).expect("V modules live on Z")
}

/// `U` uses `V_n` pure of step `n`: `≤ w` iff every step is `≤ w`.
pub fn u_le(w: i64, steps: &[i64]) -> bool {
    steps.iter().all(|&n| n <= w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    pub z_weights: Vec<i64>,
    pub in_c_le_minus1: bool,
    pub in_c_le_0: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendCheck {
    pub n: i64,
    pub z_weights: Vec<i64>,
    pub in_c_le_n: bool,
    pub u_step: Vec<i64>,
    pub pure_of_step_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaZ {
    /// `dim H^0` in each degree of the checked range.
    pub h0_dims: BTreeMap<i64, usize>,
    pub h1: BiGradedModule,
    pub h1_weights: Vec<i64>,
    pub cod_z: i64,
    pub alt_z: i64,
    pub alt_u: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScodCheck {
    pub computed_u: i64,
    pub computed_z: i64,
    pub asserted_u: i64,
    pub asserted_z: i64,
    /// `p(Z) > p(U)` and `p̄(Z) > p̄(U)` for `p = (0, 1)` with the computed values.
    pub strict_with_computed: bool,
    pub strict_with_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub f1: IdealCheck,
    pub f2: Vec<ExtendCheck>,
    pub omega_z: OmegaZ,
    pub scod: ScodCheck,
    pub simples: Vec<String>,
    pub pass: bool,
}

/// Degrees in which `H^0(ω_Z)` is checked to vanish.
pub const OMEGA_DEGREES: std::ops::RangeInclusive<i64> = -3..=6;

/// `ω_Z = RHom(A/(y), A)` from `0 → yA → A → A/(y) → 0`: dualizing gives
/// `A → Hom(yA, A) = A·φ` with `φ(y) = 1` (degree −1, weight −1) and `1 ↦ yφ`.
pub fn omega_z() -> OmegaZ {
    let phi = BiGradedModule { generators: vec![(-1, -1)], relations: vec![] };
    let unit = BiGradedModule::twist(0);
    let mut h0_dims = BTreeMap::new();
    for d in OMEGA_DEGREES {
        let src = unit.basis(d);
        let tgt = phi.basis(d);
        let index: BTreeMap<(Monomial, usize), usize> = tgt.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        // Rows are the images of the source monomials under multiplication by y.
        let rows: Vec<Vec<Q>> = src
            .iter()
            .map(|(m, _)| {
                let mut row = vec![Q::zero(); tgt.len()];
                let j = index[&(m.times(Monomial::new(0, 1)), 0)];
                row[j] = Q::one();
                row
            })
            .collect();
        h0_dims.insert(d, src.len() - rank(&rows, tgt.len()));
    }
    let h1 = BiGradedModule {
        generators: phi.generators.clone(),
        relations: vec![vec![Term { c: Q::one(), mono: Monomial::new(0, 1), gen: 0 }]],
    };
    let h1_weights = flag_restrict_z(&h1).expect("supported shape");
    // alt Z: the largest w with H^1 in C≥w (flipped); alt U: the step of A|_U.
    let alt_z = (-10..=10).rev().find(|&w| flipped_ge(w, &h1_weights)).expect("bounded");
    let u = flag_restrict_u(&unit).expect("free");
    let alt_u = (-10..=10).rev().find(|&w| u.steps.iter().all(|&n| n >= w)).expect("bounded");
    OmegaZ { h0_dims, h1, h1_weights, cod_z: 1, alt_z, alt_u }
}

fn strict(p: Perversity, scod_u: i64, scod_z: i64) -> bool {
    p.pz > p.pu && (scod_z - p.pz) > (scod_u - p.pu)
}

/// Everything the example asserts, checked over twists `n` in `[lo, hi]`.
pub fn flag_verify_window(lo: i64, hi: i64) -> FlagReport {
    let iw = flag_restrict_z(&BiGradedModule::ideal()).expect("supported shape");
    let f1 = IdealCheck { in_c_le_minus1: flipped_le(-1, &iw), in_c_le_0: flipped_le(0, &iw), z_weights: iw };
    let f2: Vec<ExtendCheck> = (lo..=hi)
        .map(|n| {
            let o = BiGradedModule::twist(n);
            let z = flag_restrict_z(&o).expect("supported shape");
            let u = flag_restrict_u(&o).expect("free");
            ExtendCheck {
                n,
                in_c_le_n: flipped_le(n, &z),
                pure_of_step_n: u_le(n, &u.steps) && !u_le(n - 1, &u.steps),
                z_weights: z,
                u_step: u.steps,
            }
        })
        .collect();
    let omega = omega_z();
    let (su, sz) = (omega.alt_u, omega.cod_z + omega.alt_z);
    let p = Perversity::new(0, 1);
    let scod = ScodCheck {
        computed_u: su,
        computed_z: sz,
        asserted_u: 0,
        asserted_z: 3,
        strict_with_computed: strict(p, su, sz),
        strict_with_asserted: strict(p, 0, 3),
    };
    let simples = vec!["IC(X, O(n)|U)".to_string(), "IC(Z, V_n[-n-1])".to_string()];
    let pass = f1.in_c_le_0
        && f2.iter().all(|c| c.in_c_le_n && c.pure_of_step_n)
        && omega.h0_dims.values().all(|&d| d == 0)
        && omega.h1_weights == [-1]
        && omega.alt_z == 1
        && scod.strict_with_computed
        && scod.strict_with_asserted;
    FlagReport { f1, f2, omega_z: omega, scod, simples, pass }
}

/// [`flag_verify_window`] on twists `−4..=4`.
pub fn flag_verify() -> FlagReport {
    flag_verify_window(-4, 4)
}

impl FlagReport {
    pub fn to_text(&self) -> String {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        let mut s = String::new();
        s.push_str(&format!(
            "F1 i*I weights {:?}: in C≤-1 {}, in C≤0 {}\n",
            self.f1.z_weights,
            mark(self.f1.in_c_le_minus1),
            mark(self.f1.in_c_le_0)
        ));
        for c in &self.f2 {
            s.push_str(&format!(
                "F2 n={:>2}: i*O(n) weights {:?} in C≤n {}; O(n)|U steps {:?} pure of step n {}\n",
                c.n,
                c.z_weights,
                mark(c.in_c_le_n),
                c.u_step,
                mark(c.pure_of_step_n)
            ));
        }
        let o = &self.omega_z;
        s.push_str(&format!(
            "omega_Z: H^0 = 0 in degrees {}..{} {}; H^1 weights {:?}; alt U = {}, alt Z = {}\n",
            OMEGA_DEGREES.start(),
            OMEGA_DEGREES.end(),
            mark(o.h0_dims.values().all(|&d| d == 0)),
            o.h1_weights,
            o.alt_u,
            o.alt_z
        ));
        s.push_str(&format!(
            "scod: computed U = {}, Z = {}; asserted U = {}, Z = {}; p = (0,1) strict with computed {}, with asserted {}\n",
            self.scod.computed_u,
            self.scod.computed_z,
            self.scod.asserted_u,
            self.scod.asserted_z,
            mark(self.scod.strict_with_computed),
            mark(self.scod.strict_with_asserted)
        ));
        s.push_str(&format!("simples: {}\n", self.simples.join(", ")));
        s.push_str(&format!("overall: {}\n", mark(self.pass)));
        s
    }
}
