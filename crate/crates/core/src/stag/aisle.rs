use serde::{Deserialize, Serialize};

use super::{geometry_report, Perversity};
use crate::derived::{dualize, li_star, FormalObject};
use crate::sstruct::{member_raw, Dir, SConfig, Site};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aisle {
    Le0,
    Ge0,
}

/// Thickenings beyond this one cannot change an aisle verdict for `F`: the restriction
/// to `Z_n` only sees torsion through lengths `min(m, n)`.
pub fn stabilization_bound(f: &FormalObject) -> i64 {
    f.components().values().map(|m| m.max_torsion_length()).max().unwrap_or(0) + 1
}

/// `F ∈ ᵖD≤0`: generically the free part sits in degrees `≤ p(U)`, and on every
/// thickening `H^k(Li*F) ∈ C≤(p(Z) - k)`. `ᵖD≥0` is `𝔻` of the dual perversity's `≤ 0`.
pub fn aisle_member(p: Perversity, cfg: SConfig, f: &FormalObject, which: Aisle) -> bool {
    let bound = match which {
        Aisle::Le0 => stabilization_bound(f),
        Aisle::Ge0 => stabilization_bound(&dualize(f)),
    };
    aisle_member_with_bound(p, cfg, f, which, bound)
}

/// As [`aisle_member`] with the thickenings `1..=bound` checked explicitly.
pub fn aisle_member_with_bound(p: Perversity, cfg: SConfig, f: &FormalObject, which: Aisle, bound: i64) -> bool {
    match which {
        Aisle::Le0 => le0(p, cfg, f, bound),
        Aisle::Ge0 => le0(p.dual(&geometry_report(cfg)), cfg, &dualize(f), bound),
    }
}

fn le0(p: Perversity, cfg: SConfig, f: &FormalObject, bound: i64) -> bool {
    if f.components().iter().any(|(&k, m)| k > p.pu && m.free_rank() > 0) {
        return false;
    }
    (1..=bound).all(|n| {
        let r = li_star(f, n).expect("positive thickening");
        r.components().iter().all(|(&k, m)| member_raw(Site::Zn(n), cfg, Dir::Le, p.pz - k, m))
    })
}

/// `F ∈ ᵖD≤n` (for `Le0`) or `F ∈ ᵖD≥n` (for `Ge0`), via `F[n]`.
pub fn aisle_member_shifted(p: Perversity, cfg: SConfig, f: &FormalObject, which: Aisle, n: i64) -> bool {
    aisle_member(p, cfg, &f.shift(n), which)
}

/// The aisles of the single orbit `Z_n` with constant perversity `pz`: every `H^k`
/// lies in `C≤(pz - k)` (resp. `C≥(pz - k)`).
pub fn zn_aisle_member(pz: i64, cfg: SConfig, n: i64, f: &FormalObject, which: Aisle) -> bool {
    let dir = match which {
        Aisle::Le0 => Dir::Le,
        Aisle::Ge0 => Dir::Ge,
    };
    f.components().iter().all(|(&k, m)| member_raw(Site::Zn(n), cfg, dir, pz - k, m))
}
