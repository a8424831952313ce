use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{aisle_member, stag_truncate, validate_perversity, Aisle, Perversity, TriangleDecomp};
use crate::derived::{derived_hom, ChainComplex, ChainMap, FormalObject};
use crate::grmod::{GradedModule, HMatrix, Q, Summand};
use crate::sstruct::SConfig;
use crate::{Error, Result};

/// A simple object of the heart: the structure sheaf, or a torsion simple at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleLabel {
    /// `IC(X, O_U)`.
    OX,
    /// `IC(Z, V_n[...])`, the pushed-forward `V(n)` in the degree that puts it in the heart.
    SZ(i64),
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLabel::OX => write!(f, "OX"),
            SimpleLabel::SZ(n) => write!(f, "SZ({n})"),
        }
    }
}

impl Serialize for SimpleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An IC request: a rank on the open orbit, or an irreducible `V(n)` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcSpec {
    U { rank: usize },
    Z { n: i64 },
}

impl FromStr for IcSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("IC spec must be `U:<rank>` or `Z:<n>`, got {s:?}"));
        let (site, v) = s.trim().split_once(':').ok_or_else(bad)?;
        match site.trim() {
            "U" => Ok(IcSpec::U { rank: v.trim().parse().map_err(|_| bad())? }),
            "Z" => Ok(IcSpec::Z { n: v.trim().parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

fn require_strict(p: Perversity, cfg: SConfig) -> Result<()> {
    let r = validate_perversity(p, cfg);
    if !r.ok || !r.strict {
        return Err(Error::Unsupported(format!(
            "perversity {p} ({} mode) does not satisfy p(Z) > p(U) and p̄(Z) > p̄(U)",
            cfg.z_mode
        )));
    }
    Ok(())
}

pub fn is_in_heart(p: Perversity, cfg: SConfig, f: &FormalObject) -> bool {
    aisle_member(p, cfg, f, Aisle::Le0) && aisle_member(p, cfg, f, Aisle::Ge0)
}

/// `OX` is `F(0)` in degree `p(U)`; `SZ(n)` is `V(n)` in degree `p(Z) - n`.
pub fn simple(p: Perversity, cfg: SConfig, label: SimpleLabel) -> Result<FormalObject> {
    require_strict(p, cfg)?;
    Ok(simple_object(p, label))
}

fn simple_object(p: Perversity, label: SimpleLabel) -> FormalObject {
    match label {
        SimpleLabel::OX => FormalObject::at(p.pu, GradedModule::free(0)),
        SimpleLabel::SZ(n) => FormalObject::at(p.pz - n, GradedModule::v(n)),
    }
}

/// The simple objects with torsion index in `[a, b]`.
pub fn simples(p: Perversity, cfg: SConfig, a: i64, b: i64) -> Result<Vec<(SimpleLabel, FormalObject)>> {
    require_strict(p, cfg)?;
    let labels = std::iter::once(SimpleLabel::OX).chain((a..=b).map(SimpleLabel::SZ));
    Ok(labels.map(|l| (l, simple_object(p, l))).collect())
}

/// The intersection cohomology object of a local system on an orbit.
pub fn ic(p: Perversity, cfg: SConfig, spec: IcSpec) -> Result<FormalObject> {
    require_strict(p, cfg)?;
    Ok(match spec {
        IcSpec::U { rank } => {
            FormalObject::at(p.pu, GradedModule::new(vec![Summand::Free(0); rank]))
        }
        IcSpec::Z { n } => simple_object(p, SimpleLabel::SZ(n)),
    })
}

/// Kernel and cokernel in the heart of a chain map between heart objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeartKic {
    pub source: FormalObject,
    pub target: FormalObject,
    pub kernel: FormalObject,
    pub cokernel: FormalObject,
    pub cone: FormalObject,
    /// `len(source) - len(kernel) = len(target) - len(cokernel)` in composition length,
    /// when the perversity allows composition series.
    pub lengths_balance: Option<bool>,
    #[serde(skip)]
    pub triangle: TriangleDecomp,
}

/// The heart cohomology of the cone: `ker f` sits below the cut at `-1`, `coker f` above.
pub fn heart_kernel_cokernel(p: Perversity, cfg: SConfig, f: &ChainMap) -> Result<HeartKic> {
    let source = f.source().normal_form();
    let target = f.target().normal_form();
    for (name, x) in [("source", &source), ("target", &target)] {
        if !is_in_heart(p, cfg, x) {
            return Err(Error::NotInHeart(format!("{name} {x} is not in the heart for p = {p}")));
        }
    }
    let cone = f.cone().normal_form();
    let triangle = stag_truncate(p, cfg, -1, &cone)?;
    let kernel = triangle.below.shift(-1);
    let cokernel = triangle.above.clone();
    let strict = validate_perversity(p, cfg).strict;
    let lengths_balance = if strict {
        let len = |x: &FormalObject| jh_factors(p, cfg, x).map(|r| r.factors.len() as i64);
        Some(len(&source)? - len(&kernel)? == len(&target)? - len(&cokernel)?)
    } else {
        None
    };
    Ok(HeartKic { source, target, kernel, cokernel, cone, lengths_balance, triangle })
}

/// One step `F_i ↪ F_{i+1}` of a composition series, with quotient `factor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub object: FormalObject,
    pub factor: SimpleLabel,
    #[serde(skip)]
    pub map: ChainMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JhReport {
    pub object: FormalObject,
    /// The composition factors, sorted.
    pub factors: Vec<SimpleLabel>,
    /// `0 = F_0 ↪ F_1 ↪ ... ↪ F_r = F`.
    pub witness: Vec<FiltrationStep>,
}

impl JhReport {
    /// Every step is a heart monomorphism whose cokernel is the recorded simple, and the
    /// chain ends at the object.
    pub fn audit(&self, p: Perversity, cfg: SConfig) -> std::result::Result<(), String> {
        let mut prev = FormalObject::zero();
        for (i, st) in self.witness.iter().enumerate() {
            if st.map.source().normal_form() != prev || st.map.target().normal_form() != st.object {
                return Err(format!("step {i}: map endpoints do not match the filtration"));
            }
            let k = heart_kernel_cokernel(p, cfg, &st.map).map_err(|e| e.to_string())?;
            if !k.kernel.is_zero() {
                return Err(format!("step {i}: kernel {} is not zero", k.kernel));
            }
            if k.cokernel != simple_object(p, st.factor) {
                return Err(format!("step {i}: quotient {} is not {}", k.cokernel, st.factor));
            }
            prev = st.object.clone();
        }
        if prev != self.object {
            return Err(format!("filtration ends at {prev}, not {}", self.object));
        }
        Ok(())
    }
}

/// How one indecomposable heart piece is built: its successive stages and the simple
/// added at each step.
struct PiecePlan {
    stages: Vec<Vec<(i64, Summand)>>,
    factors: Vec<SimpleLabel>,
    /// Degrees in which the step map is `1`; `None` for the step out of zero.
    units: Vec<Option<i64>>,
    /// Position in the global order of the tie-breaking rule.
    phases: Vec<u8>,
}

fn plan(p: Perversity, k: i64, s: Summand) -> Option<PiecePlan> {
    let c = p.pz - p.pu - 1;
    let at = |d: i64| vec![(p.pu, Summand::Free(d))];
    match s {
        Summand::Torsion { g, n: 1 } if k == p.pz - g => Some(PiecePlan {
            stages: vec![vec![], vec![(k, s)]],
            factors: vec![SimpleLabel::SZ(g)],
            units: vec![None],
            phases: vec![0],
        }),
        Summand::Free(d) if k == p.pu && d == c - 1 => Some(PiecePlan {
            stages: vec![vec![], vec![(p.pz - c, Summand::v(c))], at(d)],
            factors: vec![SimpleLabel::SZ(c), SimpleLabel::OX],
            units: vec![None, Some(p.pu)],
            phases: vec![1, 2],
        }),
        Summand::Free(d) if k == p.pu && d == c => Some(PiecePlan {
            stages: vec![vec![], at(d)],
            factors: vec![SimpleLabel::OX],
            units: vec![None],
            phases: vec![3],
        }),
        Summand::Free(d) if k == p.pu && d == c + 1 => Some(PiecePlan {
            stages: vec![vec![], at(c), at(d)],
            factors: vec![SimpleLabel::OX, SimpleLabel::SZ(c + 1)],
            units: vec![None, Some(p.pu)],
            phases: vec![4, 5],
        }),
        _ => None,
    }
}

fn resolution(parts: &[(i64, Summand)]) -> ChainComplex {
    ChainComplex::resolution(&FormalObject::from_summands(parts.iter().copied()))
}

fn step_map(from: &[(i64, Summand)], to: &[(i64, Summand)], unit: Option<i64>) -> ChainMap {
    let (src, tgt) = (resolution(from), resolution(to));
    match unit {
        None => ChainMap::from_zero(&tgt),
        Some(k) => {
            let mut m = HMatrix::zeros(tgt.term(k).gens, src.term(k).gens);
            m.c[0][0] = Q::from_integer(1.into());
            ChainMap::new(src, tgt, [(k, m)].into_iter().collect()).expect("filtration step")
        }
    }
}

/// A composition series of a heart object.
///
/// Every indecomposable heart object is `F(c-1)`, `F(c)`, `F(c+1)` in degree `p(U)`
/// (with `c = p(Z) - p(U) - 1`) or a torsion simple. Torsion simples are split off
/// first, then the torsion simple inside `F(c-1)`, then the free parts, and last the
/// inclusions `F(c) ⊂ F(c+1)`.
pub fn jh_factors(p: Perversity, cfg: SConfig, f: &FormalObject) -> Result<JhReport> {
    require_strict(p, cfg)?;
    if !is_in_heart(p, cfg, f) {
        return Err(Error::NotInHeart(format!("{f} is not in the heart for p = {p}")));
    }
    let pieces: Vec<(i64, Summand)> = f.pieces().collect();
    let plans: Vec<PiecePlan> = pieces
        .iter()
        .map(|&(k, s)| {
            plan(p, k, s).ok_or_else(|| {
                Error::Unsupported(format!("heart piece {s} in degree {k} has no composition plan"))
            })
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<(u8, usize, usize)> = plans
        .iter()
        .enumerate()
        .flat_map(|(i, pl)| pl.phases.iter().enumerate().map(move |(j, &ph)| (ph, i, j)))
        .collect();
    order.sort();
    let mut stage = vec![0usize; plans.len()];
    let mut witness = Vec::new();
    let mut factors = Vec::new();
    for (_, i, j) in order {
        debug_assert_eq!(stage[i], j);
        let map = plans
            .iter()
            .enumerate()
            .map(|(t, pl)| {
                if t == i {
                    step_map(&pl.stages[j], &pl.stages[j + 1], pl.units[j])
                } else {
                    ChainMap::identity(&resolution(&pl.stages[stage[t]]))
                }
            })
            .reduce(|a, b| a.direct_sum(&b))
            .expect("at least one piece");
        stage[i] = j + 1;
        let object = FormalObject::sum(
            plans
                .iter()
                .zip(&stage)
                .map(|(pl, &st)| FormalObject::from_summands(pl.stages[st].iter().copied()))
                .collect::<Vec<_>>()
                .iter(),
        );
        factors.push(plans[i].factors[j]);
        witness.push(FiltrationStep { object, factor: plans[i].factors[j], map });
    }
    factors.sort();
    Ok(JhReport { object: f.clone(), factors, witness })
}

/// Schur check data: `dim Hom` between two objects in degree 0.
pub(crate) fn hom0(a: &FormalObject, b: &FormalObject) -> usize {
    derived_hom(a, b).get(&0).copied().unwrap_or(0)
}
