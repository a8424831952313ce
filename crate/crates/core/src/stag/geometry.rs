use std::collections::BTreeMap;

use serde::Serialize;

use super::Perversity;
use crate::derived::{restrict_u, ri_flat, FormalObject};
use crate::grmod::GradedModule;
use crate::sstruct::{ge_threshold, SConfig, Site};

/// Thickenings over which the closed-orbit data is computed and compared.
pub const THICKENINGS: i64 = 4;

/// Codimension, altitude and staggered codimension of the two orbits, with respect to
/// the dualizing complex `ω = F(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub z_mode: String,
    pub cod_u: i64,
    pub alt_u: i64,
    pub scod_u: i64,
    pub cod_z: i64,
    pub alt_z: i64,
    pub scod_z: i64,
    /// Altitude computed on each thickening `Z_n`.
    pub alt_zn: BTreeMap<i64, i64>,
    /// Concentration degree of `Ri♭_n ω` on each thickening.
    pub cod_zn: BTreeMap<i64, i64>,
    /// Whether the altitude and codimension agree across thickenings.
    pub stable: bool,
}

fn omega() -> FormalObject {
    FormalObject::module(GradedModule::free(0))
}

/// The single degree an object lives in.
fn concentration(f: &FormalObject) -> Option<i64> {
    match f.degree_range()? {
        (a, b) if a == b => Some(a),
        _ => None,
    }
}

pub fn geometry_report(cfg: SConfig) -> GeometryReport {
    let w = omega();
    let on_u = restrict_u(&w);
    let cod_u = on_u.iter().find(|(_, &r)| r > 0).map(|(&k, _)| k).expect("ω is generically nonzero");
    let alt_u = ge_threshold(Site::U, cfg, &w.h(cod_u).free_part()).expect("nonzero on U");
    let mut alt_zn = BTreeMap::new();
    let mut cod_zn = BTreeMap::new();
    for n in 1..=THICKENINGS {
        let r = ri_flat(&w, n).expect("positive thickening");
        let d = concentration(&r).expect("Ri♭ω is concentrated in one degree");
        cod_zn.insert(n, d);
        alt_zn.insert(n, ge_threshold(Site::Zn(n), cfg, &r.h(d)).expect("nonzero"));
    }
    let cod_z = cod_zn[&1];
    let alt_z = alt_zn[&1];
    let stable = alt_zn.values().all(|&a| a == alt_z) && cod_zn.values().all(|&c| c == cod_z);
    GeometryReport {
        z_mode: cfg.z_mode.to_string(),
        cod_u,
        alt_u,
        scod_u: cod_u + alt_u,
        cod_z,
        alt_z,
        scod_z: cod_z + alt_z,
        alt_zn,
        cod_zn,
        stable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerversityReport {
    pub perversity: String,
    pub ok: bool,
    pub violations: Vec<String>,
    /// `p(Z) > p(U)` and `p̄(Z) > p̄(U)`: the hypotheses for the simple objects.
    pub strict: bool,
    /// `p = scod / 2` on both orbits.
    pub middle: bool,
    pub dual: String,
}

pub fn validate_perversity(p: Perversity, cfg: SConfig) -> PerversityReport {
    let g = geometry_report(cfg);
    let dual = p.dual(&g);
    let mut violations = Vec::new();
    if p.pz < p.pu {
        violations.push(format!("monotonicity fails: p(Z) = {} < p(U) = {}", p.pz, p.pu));
    }
    if dual.pz < dual.pu {
        violations.push(format!(
            "comonotonicity fails: scod Z - p(Z) = {} < scod U - p(U) = {}",
            dual.pz, dual.pu
        ));
    }
    PerversityReport {
        perversity: p.to_string(),
        ok: violations.is_empty(),
        violations,
        strict: p.pz > p.pu && dual.pz > dual.pu,
        middle: 2 * p.pu == g.scod_u && 2 * p.pz == g.scod_z,
        dual: dual.to_string(),
    }
}
