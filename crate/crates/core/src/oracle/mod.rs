//! Independent reference computations for certifying the fast paths.
//!
//! Everything here works on explicit weight windows: a module becomes a finite list of
//! weight spaces with the matrices of `x`, and questions become kernels and cokernels
//! of matrices built from those. Nothing is shared with the fast paths beyond the input
//! types; in particular no canonical forms are used along the way, and results are
//! compared through their profiles (dimensions and ranks of powers of `x`).
//!
//! Free summands are truncated at the window floor. With the window two weights below
//! every socle and every top, the truncated module has the same Hom and Ext¹ against
//! everything in the window as the original: a map from a torsion module would have to
//! land in elements killed by a power of `x`, which the truncated free part only has at
//! its two lowest weights, and no torsion socle reaches that far down.

mod agree;
mod families;
mod homext;
pub mod linalg;
mod ops;
mod window;

pub use agree::{
    agreement, agreement_with, compare, instance, minimize, Instance, OPERATIONS, TRIVIAL_PERVERSITIES,
    WEIGHT_PERVERSITIES,
};
pub use families::{oracle_aisle, oracle_hom0, oracle_max_sub, oracle_max_sub_quotient, oracle_member};
pub use homext::{hom_ext_windowed, hom_into_twists, oracle_hom_ext, oracle_hom_ext_auto};
pub use ops::{
    compare_profiles, oracle_decompose, oracle_dualize, oracle_gamma_dims, oracle_internal_hom, oracle_kic,
    oracle_li_star, oracle_ri_flat, oracle_tensor, presentation_window, profile_of, profiles_of, tensor_presentation,
};
pub use window::{map_matrices, require_window, window_for, Profile, WeightWindow, WindowModule};
