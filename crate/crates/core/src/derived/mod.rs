//! The bounded derived category of the line as finite data.
//!
//! Graded modules over `Q[x]` form a hereditary category, so every bounded complex is
//! isomorphic to the sum of its shifted cohomology modules. Objects are therefore kept
//! as [`FormalObject`]s; chain-level data only appears where maps matter (cones and
//! normal-form audits).

mod complex;
mod formal;
mod functors;

pub use complex::{
    matrix_from_json, matrix_to_json, ChainComplex, ChainMap, ComplexJson, DegreeAudit,
    NormalFormAudit,
};
pub use formal::FormalObject;
pub use functors::{
    derived_hom, dualize, li_star, push_z, r_gamma_z, restrict_u, ri_flat, std_truncate, CoFree,
    LocalCohomology, Truncation,
};
