//! s-structures on the sites of the two-orbit line.
//!
//! `U` always carries the trivial s-structure. The closed orbit carries either the
//! weight s-structure (`V_n` pure of step `n`) or the trivial one, and `X` is glued:
//! `F ∈ C≤w` iff `F|U ∈ C_U≤w` and `i*F ∈ C_Z≤w`; `F ∈ C≥w` iff `F|U ∈ C_U≥w` and the
//! torsion submodule lies in `C≥w` on a thickening that contains it.

mod suite;

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::grmod::{GradedMap, GradedModule, Q, Summand};
use crate::{Error, Result};

pub use suite::{axiom_suite, axiom_suite_with, OffByOneSigma, SigmaRule, StandardSigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Site {
    /// The whole line.
    X,
    /// The open orbit.
    U,
    /// The reduced origin.
    Z,
    /// The `n`-th thickening of the origin, `Spec A/(x^n)`.
    Zn(i64),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::X => write!(f, "X"),
            Site::U => write!(f, "U"),
            Site::Z => write!(f, "Z"),
            Site::Zn(n) => write!(f, "Z{n}"),
        }
    }
}

impl FromStr for Site {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "X" | "x" => Ok(Site::X),
            "U" | "u" => Ok(Site::U),
            "Z" | "z" => Ok(Site::Z),
            _ => {
                let rest = t
                    .strip_prefix("Zn")
                    .or_else(|| t.strip_prefix('Z'))
                    .map(|r| r.trim_start_matches([':', '=']))
                    .ok_or_else(|| Error::Input(format!("unknown site {s:?}")))?;
                match rest.parse::<i64>() {
                    Ok(n) if n >= 1 => Ok(Site::Zn(n)),
                    _ => Err(Error::Input(format!("bad thickening in site {s:?}"))),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ZMode {
    #[default]
    Weight,
    Trivial,
}

impl FromStr for ZMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weight" => Ok(ZMode::Weight),
            "trivial" => Ok(ZMode::Trivial),
            _ => Err(Error::Input(format!("unknown z-mode {s:?}"))),
        }
    }
}

impl fmt::Display for ZMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZMode::Weight => "weight",
            ZMode::Trivial => "trivial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SConfig {
    pub z_mode: ZMode,
}

impl SConfig {
    pub fn weight() -> Self {
        Self { z_mode: ZMode::Weight }
    }

    pub fn trivial() -> Self {
        Self { z_mode: ZMode::Trivial }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Le,
    Ge,
}

/// `0 → sub → M → quotient → 0` with explicit maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaWitness {
    pub sub: GradedModule,
    pub quotient: GradedModule,
    pub inclusion: GradedMap,
    pub projection: GradedMap,
}

pub fn validate_object(site: Site, m: &GradedModule) -> Result<()> {
    let bad = |msg: &str| Err(Error::SiteMismatch { site: site.to_string(), msg: format!("{m}: {msg}") });
    match site {
        Site::X => Ok(()),
        Site::U if m.free_rank() != m.len() => bad("torsion does not live on U"),
        Site::U => Ok(()),
        Site::Z if m.free_rank() > 0 || m.max_torsion_length() > 1 => bad("not killed by x"),
        Site::Z => Ok(()),
        Site::Zn(n) if n < 1 => bad("thickening must be at least 1"),
        Site::Zn(n) if m.free_rank() > 0 || m.max_torsion_length() > n => {
            bad(&format!("not killed by x^{n}"))
        }
        Site::Zn(_) => Ok(()),
    }
}

fn is_trivial(site: Site, cfg: SConfig) -> bool {
    site == Site::U || cfg.z_mode == ZMode::Trivial
}

/// Membership without the site check.
pub(crate) fn member_raw(site: Site, cfg: SConfig, dir: Dir, w: i64, m: &GradedModule) -> bool {
    if is_trivial(site, cfg) {
        return match dir {
            Dir::Le => w >= 0 || m.is_zero(),
            Dir::Ge => w <= 0 || m.is_zero(),
        };
    }
    let tops_le = m.generator_weights().all(|g| g <= w);
    let socles_ge = m.socle_weights().all(|s| s >= w);
    match (site, dir) {
        (Site::X, Dir::Le) => tops_le && (w >= 0 || m.free_rank() == 0),
        (Site::X, Dir::Ge) => socles_ge && (w <= 0 || m.free_rank() == 0),
        (_, Dir::Le) => tops_le,
        (_, Dir::Ge) => socles_ge,
    }
}

pub fn member(site: Site, cfg: SConfig, dir: Dir, w: i64, m: &GradedModule) -> Result<bool> {
    validate_object(site, m)?;
    Ok(member_raw(site, cfg, dir, w, m))
}

/// The part of one summand lying in weights `≤ c`, and the rest.
fn cut(s: Summand, c: i64, keep_free: bool) -> (Option<Summand>, Option<Summand>) {
    match s {
        Summand::Free(_) if !keep_free => (None, Some(s)),
        Summand::Free(d) if d <= c => (Some(s), None),
        Summand::Free(d) => (Some(Summand::Free(c)), Some(Summand::Torsion { g: d, n: d - c })),
        Summand::Torsion { g, n } => {
            let socle = g - n + 1;
            if g <= c {
                (Some(s), None)
            } else if socle > c {
                (None, Some(s))
            } else {
                (Some(Summand::Torsion { g: c, n: c - socle + 1 }), Some(Summand::Torsion { g, n: g - c }))
            }
        }
    }
}

/// Assemble a witness from per-summand (sub, quotient) pieces; the inclusion and
/// projection send each piece's generator to the obvious monomial.
pub(crate) fn witness_from_pieces(
    m: &GradedModule,
    pieces: &[(Option<Summand>, Option<Summand>)],
) -> SigmaWitness {
    let mut subs: Vec<(Summand, usize)> =
        pieces.iter().enumerate().filter_map(|(i, p)| p.0.map(|s| (s, i))).collect();
    let mut quots: Vec<(Summand, usize)> =
        pieces.iter().enumerate().filter_map(|(i, p)| p.1.map(|s| (s, i))).collect();
    subs.sort();
    quots.sort();
    let sub = GradedModule::new(subs.iter().map(|p| p.0).collect());
    let quotient = GradedModule::new(quots.iter().map(|p| p.0).collect());
    let mut inc = vec![vec![Q::zero(); subs.len()]; m.len()];
    for (j, &(_, i)) in subs.iter().enumerate() {
        inc[i][j] = Q::one();
    }
    let mut proj = vec![vec![Q::zero(); m.len()]; quots.len()];
    for (j, &(_, i)) in quots.iter().enumerate() {
        proj[j][i] = Q::one();
    }
    SigmaWitness {
        inclusion: GradedMap::new(sub.clone(), m.clone(), inc).expect("piece inclusion"),
        projection: GradedMap::new(m.clone(), quotient.clone(), proj).expect("piece projection"),
        sub,
        quotient,
    }
}

/// `σ≤w` for `dir = Le`; for `dir = Ge` the same sequence read as `σ≤(w-1) → M → σ≥w`.
pub fn sigma(site: Site, cfg: SConfig, dir: Dir, w: i64, m: &GradedModule) -> Result<SigmaWitness> {
    validate_object(site, m)?;
    let w = match dir {
        Dir::Le => w,
        Dir::Ge => w - 1,
    };
    Ok(sigma_le(site, cfg, w, m))
}

pub(crate) fn sigma_le(site: Site, cfg: SConfig, w: i64, m: &GradedModule) -> SigmaWitness {
    let pieces: Vec<_> = if is_trivial(site, cfg) {
        m.summands().iter().map(|&s| if w >= 0 { (Some(s), None) } else { (None, Some(s)) }).collect()
    } else {
        let keep_free = site != Site::X || w >= 0;
        m.summands().iter().map(|&s| cut(s, w, keep_free)).collect()
    };
    witness_from_pieces(m, &pieces)
}

fn search_bound(m: &GradedModule) -> i64 {
    m.summands()
        .iter()
        .flat_map(|s| [s.top(), s.socle().unwrap_or(0)])
        .map(i64::abs)
        .max()
        .unwrap_or(0)
        + 2
}

/// Least `w` with `M ∈ C≤w`; `None` for the zero module.
pub fn le_threshold(site: Site, cfg: SConfig, m: &GradedModule) -> Option<i64> {
    if m.is_zero() {
        return None;
    }
    let b = search_bound(m);
    (-b..=b).find(|&w| member_raw(site, cfg, Dir::Le, w, m))
}

/// Greatest `w` with `M ∈ C≥w`; `None` for the zero module.
pub fn ge_threshold(site: Site, cfg: SConfig, m: &GradedModule) -> Option<i64> {
    if m.is_zero() {
        return None;
    }
    let b = search_bound(m);
    (-b..=b).rev().find(|&w| member_raw(site, cfg, Dir::Ge, w, m))
}

/// The step of a pure object, `None` if it is not pure (or zero).
pub fn step(site: Site, cfg: SConfig, m: &GradedModule) -> Result<Option<i64>> {
    validate_object(site, m)?;
    let Some(w) = le_threshold(site, cfg, m) else { return Ok(None) };
    Ok(sigma_le(site, cfg, w - 1, m).sub.is_zero().then_some(w))
}

/// `i*M` on the reduced origin: one `V` per generator.
pub fn restrict_to_point(m: &GradedModule) -> GradedModule {
    m.summands().iter().map(|s| Summand::v(s.top())).collect()
}
