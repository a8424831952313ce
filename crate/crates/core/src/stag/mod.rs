//! The staggered t-structure on the line: perversities, aisles, truncation, the heart,
//! its simple objects and composition series.

mod aisle;
mod geometry;
mod heart;
mod suite;
mod truncate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use aisle::{aisle_member, aisle_member_shifted, aisle_member_with_bound, stabilization_bound, zn_aisle_member, Aisle};
pub use geometry::{geometry_report, validate_perversity, GeometryReport, PerversityReport};
pub use heart::{
    heart_kernel_cokernel, ic, is_in_heart, jh_factors, simple, simples, FiltrationStep, HeartKic,
    IcSpec, JhReport, SimpleLabel,
};
pub use suite::tstructure_suite;
pub use truncate::{stag_truncate, PieceTriangle, TriangleDecomp};

/// Values on the open orbit `U` and the closed orbit `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perversity {
    pub pu: i64,
    pub pz: i64,
}

impl Perversity {
    pub fn new(pu: i64, pz: i64) -> Self {
        Self { pu, pz }
    }

    /// The dual perversity `p̄ = scod - p`.
    pub fn dual(&self, g: &GeometryReport) -> Self {
        Self { pu: g.scod_u - self.pu, pz: g.scod_z - self.pz }
    }
}

impl Default for Perversity {
    fn default() -> Self {
        Self { pu: 0, pz: 1 }
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.pu, self.pz)
    }
}

impl FromStr for Perversity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("perversity must look like `pU,pZ`, got {s:?}"));
        let (a, b) = s.trim().trim_matches(|c| c == '(' || c == ')').split_once(',').ok_or_else(bad)?;
        Ok(Self { pu: a.trim().parse().map_err(|_| bad())?, pz: b.trim().parse().map_err(|_| bad())? })
    }
}
