//! Seeded agreement runs between every fast path and its reference computation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::families::{oracle_aisle, oracle_max_sub, oracle_max_sub_quotient, oracle_member};
use super::homext::oracle_hom_ext_auto;
use super::ops::{
    compare_profiles, oracle_decompose, oracle_dualize, oracle_gamma_dims, oracle_internal_hom, oracle_kic,
    oracle_li_star, oracle_ri_flat, oracle_tensor, presentation_window, profile_of, profiles_of,
};
use crate::derived::{dualize, li_star, r_gamma_z, ri_flat, FormalObject};
use crate::grmod::{
    canonical_decompose, ext1_group, hom_group, internal_hom, kernel_image_cokernel, tensor, GradedMap, GradedModule,
    Presentation,
};
use crate::report::{Outcome, SuiteReport};
use crate::sample;
use crate::sstruct::{member, Dir, SConfig, SigmaRule, Site, StandardSigma};
use crate::stag::{aisle_member, Aisle, Perversity};
use crate::{Error, Result};

/// Every operation with a reference computation, in run order.
pub const OPERATIONS: [&str; 13] = [
    "decompose",
    "hom",
    "ext1",
    "tensor",
    "internal_hom",
    "kic",
    "sigma",
    "member",
    "li_star",
    "ri_flat",
    "dualize",
    "r_gamma_z",
    "aisle",
];

/// One input to an operation.
#[derive(Debug, Clone)]
pub enum Instance {
    Presentation(Presentation),
    Pair(GradedModule, GradedModule),
    Map(GradedMap),
    Sigma { site: Site, cfg: SConfig, w: i64, m: GradedModule },
    Formal { f: FormalObject, n: i64 },
    Aisle { p: Perversity, cfg: SConfig, f: FormalObject },
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Presentation(p) => {
                write!(f, "presentation {}", serde_json::to_string(&p.to_json()).expect("presentation serializes"))
            }
            Instance::Pair(m, n) => write!(f, "M = {m}, N = {n}"),
            Instance::Map(g) => {
                let rows: Vec<String> = g
                    .coeffs()
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                write!(f, "f: {} -> {} with coefficients [{}]", g.source(), g.target(), rows.join(", "))
            }
            Instance::Sigma { site, cfg, w, m } => write!(f, "site {site}, {} mode, w = {w}, M = {m}", cfg.z_mode),
            Instance::Formal { f: obj, n } => write!(f, "F = {obj}, n = {n}"),
            Instance::Aisle { p, cfg, f: obj } => write!(f, "p = ({p}), {} mode, F = {obj}", cfg.z_mode),
        }
    }
}

fn drop_summand(m: &GradedModule, i: usize) -> GradedModule {
    let mut s = m.summands().to_vec();
    s.remove(i);
    GradedModule::new(s)
}

fn drop_piece(f: &FormalObject, i: usize) -> FormalObject {
    let mut pieces: Vec<_> = f.pieces().collect();
    pieces.remove(i);
    FormalObject::from_summands(pieces)
}

impl Instance {
    /// Strictly smaller instances, for minimizing a counterexample.
    pub fn shrink(&self) -> Vec<Instance> {
        match self {
            Instance::Presentation(p) => {
                let mut out = Vec::new();
                for j in 0..p.rels.ncols() {
                    let cols: Vec<(i64, Vec<_>)> = (0..p.rels.ncols())
                        .filter(|&k| k != j)
                        .map(|k| (p.rels.cols[k], p.rels.column(k)))
                        .collect();
                    out.push(Instance::Presentation(Presentation {
                        gens: p.gens.clone(),
                        rels: crate::grmod::HMatrix::from_columns(p.gens.clone(), &cols),
                    }));
                }
                for i in 0..p.gens.len() {
                    let mut gens = p.gens.clone();
                    gens.remove(i);
                    let cols: Vec<(i64, Vec<_>)> = (0..p.rels.ncols())
                        .map(|k| {
                            let mut v = p.rels.column(k);
                            v.remove(i);
                            (p.rels.cols[k], v)
                        })
                        .collect();
                    out.push(Instance::Presentation(Presentation {
                        rels: crate::grmod::HMatrix::from_columns(gens.clone(), &cols),
                        gens,
                    }));
                }
                out
            }
            Instance::Pair(m, n) => {
                let mut out: Vec<Instance> =
                    (0..m.len()).map(|i| Instance::Pair(drop_summand(m, i), n.clone())).collect();
                out.extend((0..n.len()).map(|i| Instance::Pair(m.clone(), drop_summand(n, i))));
                out
            }
            Instance::Map(g) => {
                let mut out = Vec::new();
                let c = g.coeffs();
                for j in 0..g.source().len() {
                    let rows: Vec<Vec<_>> = c
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|e| e.0 != j).map(|e| e.1.clone()).collect())
                        .collect();
                    if let Ok(h) = GradedMap::new(drop_summand(g.source(), j), g.target().clone(), rows) {
                        out.push(Instance::Map(h));
                    }
                }
                for i in 0..g.target().len() {
                    let rows: Vec<Vec<_>> = c.iter().enumerate().filter(|e| e.0 != i).map(|e| e.1.clone()).collect();
                    if let Ok(h) = GradedMap::new(g.source().clone(), drop_summand(g.target(), i), rows) {
                        out.push(Instance::Map(h));
                    }
                }
                for i in 0..c.len() {
                    for j in 0..c[i].len() {
                        if !num::Zero::is_zero(&c[i][j]) {
                            let mut rows = c.to_vec();
                            rows[i][j] = num::Zero::zero();
                            if let Ok(h) = GradedMap::new(g.source().clone(), g.target().clone(), rows) {
                                out.push(Instance::Map(h));
                            }
                        }
                    }
                }
                out
            }
            Instance::Sigma { site, cfg, w, m } => (0..m.len())
                .map(|i| Instance::Sigma { site: *site, cfg: *cfg, w: *w, m: drop_summand(m, i) })
                .collect(),
            Instance::Formal { f, n } => {
                let k = f.pieces().count();
                let mut out: Vec<Instance> = (0..k).map(|i| Instance::Formal { f: drop_piece(f, i), n: *n }).collect();
                if *n > 1 {
                    out.push(Instance::Formal { f: f.clone(), n: n - 1 });
                }
                out
            }
            Instance::Aisle { p, cfg, f } => {
                (0..f.pieces().count()).map(|i| Instance::Aisle { p: *p, cfg: *cfg, f: drop_piece(f, i) }).collect()
            }
        }
    }
}

/// Shrink `inst` while `fails` keeps holding.
pub fn minimize(inst: Instance, fails: impl Fn(&Instance) -> bool) -> Instance {
    let mut cur = inst;
    'outer: for _ in 0..500 {
        for cand in cur.shrink() {
            if fails(&cand) {
                cur = cand;
                continue 'outer;
            }
        }
        break;
    }
    cur
}

fn sigma_instance(r: &mut impl Rng) -> Instance {
    let site = *[Site::X, Site::U, Site::Z, Site::Zn(2), Site::Zn(3)].choose(r).expect("nonempty");
    let cfg = if r.gen_bool(0.5) { SConfig::weight() } else { SConfig::trivial() };
    Instance::Sigma { site, cfg, w: sample::weight(r), m: sample::module_on(r, site) }
}

/// Perversities with a reference aisle test: strict ones in weight mode, every valid
/// one in trivial mode.
pub const WEIGHT_PERVERSITIES: [(i64, i64); 3] = [(0, 1), (-1, 0), (1, 2)];
pub const TRIVIAL_PERVERSITIES: [(i64, i64); 5] = [(0, 0), (0, 1), (1, 1), (1, 2), (-1, 0)];

/// A random instance for `op`.
pub fn instance(op: &str, r: &mut impl Rng) -> Result<Instance> {
    let small = |r: &mut _| sample::module_with(r, 2, 3);
    Ok(match op {
        "decompose" => Instance::Presentation(sample::presentation(r)),
        "hom" | "ext1" | "tensor" | "internal_hom" => Instance::Pair(small(r), small(r)),
        "kic" => {
            let (m, n) = (small(r), small(r));
            Instance::Map(sample::map(r, &m, &n))
        }
        "sigma" | "member" => sigma_instance(r),
        "li_star" | "ri_flat" => Instance::Formal { f: sample::formal(r), n: r.gen_range(1..=4) },
        "dualize" | "r_gamma_z" => Instance::Formal { f: sample::formal(r), n: 0 },
        "aisle" => {
            let (cfg, list): (SConfig, &[(i64, i64)]) = if r.gen_bool(0.5) {
                (SConfig::weight(), &WEIGHT_PERVERSITIES)
            } else {
                (SConfig::trivial(), &TRIVIAL_PERVERSITIES)
            };
            let (pu, pz) = *list.choose(r).expect("nonempty");
            Instance::Aisle { p: Perversity::new(pu, pz), cfg, f: sample::formal(r) }
        }
        _ => return Err(Error::Input(format!("no reference computation for {op:?}"))),
    })
}

fn differ<T: PartialEq + fmt::Debug>(what: &str, fast: T, slow: T) -> std::result::Result<(), String> {
    if fast == slow {
        Ok(())
    } else {
        Err(format!("{what}: fast {fast:?}, reference {slow:?}"))
    }
}

/// Run one operation on both paths; `Err` describes the first disagreement.
pub fn compare(op: &str, inst: &Instance, rule: &dyn SigmaRule) -> std::result::Result<(), String> {
    match (op, inst) {
        ("decompose", Instance::Presentation(p)) => {
            let fast = canonical_decompose(p).map_err(|e| e.to_string())?;
            let win = presentation_window(p);
            match profile_of(&fast, win).first_difference(&oracle_decompose(p)) {
                None => Ok(()),
                Some(d) => Err(format!("fast {fast}: {d}")),
            }
        }
        ("hom", Instance::Pair(m, n)) => differ("dim Hom", hom_group(m, n).0, oracle_hom_ext_auto(m, n).0),
        ("ext1", Instance::Pair(m, n)) => differ("dim Ext1", ext1_group(m, n), oracle_hom_ext_auto(m, n).1),
        ("tensor", Instance::Pair(m, n)) => {
            let fast = tensor(m, n);
            let (win, slow) = oracle_tensor(m, n);
            match profile_of(&fast, win).first_difference(&slow) {
                None => Ok(()),
                Some(d) => Err(format!("fast {fast}: {d}")),
            }
        }
        ("internal_hom", Instance::Pair(m, n)) => {
            let fast = internal_hom(m, n);
            let (range, slow) = oracle_internal_hom(m, n);
            match profile_of(&fast, range).first_difference(&slow) {
                None => Ok(()),
                Some(d) => Err(format!("fast {fast}: {d}")),
            }
        }
        ("kic", Instance::Map(f)) => {
            let fast = kernel_image_cokernel(f);
            let (win, slow) = oracle_kic(f);
            for (name, (m, p)) in ["kernel", "image", "cokernel"].iter().zip([&fast.0, &fast.1, &fast.2].into_iter().zip(&slow)) {
                if let Some(d) = profile_of(m, win).first_difference(p) {
                    return Err(format!("{name} {m}: {d}"));
                }
            }
            Ok(())
        }
        ("sigma", Instance::Sigma { site, cfg, w, m }) => {
            let fast = rule.sigma_le(*site, *cfg, *w, m);
            let sub = oracle_max_sub(*site, *cfg, *w, m);
            if fast.sub != sub {
                return Err(format!("sub: fast {}, reference {sub}", fast.sub));
            }
            let quotient = oracle_max_sub_quotient(*site, *cfg, *w, m);
            if fast.quotient != quotient {
                return Err(format!("quotient: fast {}, reference {quotient}", fast.quotient));
            }
            Ok(())
        }
        ("member", Instance::Sigma { site, cfg, w, m }) => {
            for dir in [Dir::Le, Dir::Ge] {
                let fast = member(*site, *cfg, dir, *w, m).map_err(|e| e.to_string())?;
                differ(&format!("{dir:?}"), fast, oracle_member(*site, *cfg, dir, *w, m))?;
            }
            Ok(())
        }
        ("li_star", Instance::Formal { f, n }) => {
            let fast = li_star(f, *n).map_err(|e| e.to_string())?;
            let (range, slow) = oracle_li_star(f, *n);
            compare_profiles(&profiles_of(&fast, range), &slow, range).map_or(Ok(()), |d| Err(format!("fast {fast}: {d}")))
        }
        ("ri_flat", Instance::Formal { f, n }) => {
            let fast = ri_flat(f, *n).map_err(|e| e.to_string())?;
            let (range, slow) = oracle_ri_flat(f, *n);
            compare_profiles(&profiles_of(&fast, range), &slow, range).map_or(Ok(()), |d| Err(format!("fast {fast}: {d}")))
        }
        ("dualize", Instance::Formal { f, .. }) => {
            let fast = dualize(f);
            let (range, slow) = oracle_dualize(f);
            compare_profiles(&profiles_of(&fast, range), &slow, range).map_or(Ok(()), |d| Err(format!("fast {fast}: {d}")))
        }
        ("r_gamma_z", Instance::Formal { f, .. }) => {
            let fast = r_gamma_z(f);
            let (range, slow) = oracle_gamma_dims(f);
            let degrees: std::collections::BTreeSet<i64> =
                slow.keys().map(|k| k.0).chain(fast.torsion.components().keys().copied()).chain(fast.cofree.iter().map(|c| c.0)).collect();
            for k in degrees {
                for u in range.weights() {
                    let (a, b) = (fast.dim_at(k, u), slow.get(&(k, u)).copied().unwrap_or(0));
                    if a != b {
                        return Err(format!("fast {fast}: dim at degree {k}, weight {u}: {a} vs {b}"));
                    }
                }
            }
            Ok(())
        }
        ("aisle", Instance::Aisle { p, cfg, f }) => {
            let fast = (aisle_member(*p, *cfg, f, Aisle::Le0), aisle_member(*p, *cfg, f, Aisle::Ge0));
            let slow = oracle_aisle(*p, *cfg, f).map_err(|e| e.to_string())?;
            differ("(le0, ge0)", fast, slow)
        }
        _ => Err(format!("instance does not fit operation {op}")),
    }
}

/// Compare `ops` on `samples` seeded instances each, with σ supplied by `rule`. Every
/// disagreement is minimized before it is reported.
pub fn agreement_with(ops: &[&str], seed: u64, samples: usize, rule: &dyn SigmaRule) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle-agreement", seed, samples).with_config("sigma", rule.name());
    for &op in ops {
        for i in 0..samples {
            let mut r = sample::rng(seed, &format!("oracle/{op}"), i as u64);
            let inst = instance(op, &mut r)?;
            let outcome = match compare(op, &inst, rule) {
                Ok(()) => Outcome::Pass,
                Err(_) => {
                    let small = minimize(inst, |c| compare(op, c, rule).is_err());
                    let why = compare(op, &small, rule).err().unwrap_or_default();
                    Outcome::Fail(format!("{small} :: {why}"))
                }
            };
            report.record(op, outcome);
        }
    }
    Ok(report)
}

/// Every operation against its reference, `samples` instances each.
pub fn agreement(seed: u64, samples: usize) -> SuiteReport {
    agreement_with(&OPERATIONS, seed, samples, &StandardSigma).expect("every listed operation has a reference")
}
