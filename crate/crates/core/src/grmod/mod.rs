//! Finitely generated graded modules over `A = Q[x]`, `x` of weight −1.

pub mod linalg;
mod map;
mod matrix;
mod module;
mod ops;
pub mod parse;
mod presentation;

pub use linalg::Q;
pub use map::GradedMap;
pub use matrix::HMatrix;
pub use module::{GradedModule, Summand};
pub use ops::{
    kic_presented,
    ext1_group, hom_group, internal_hom, kernel_image_cokernel, summand_ext1, summand_hom,
    tensor,
};
pub use presentation::{
    canonical_decompose, kernel_basis, subquotient, EntryJson, Presentation, PresentationJson,
};

/// Parse a rational written as `p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num::BigInt = n.parse().ok()?;
    let d: num::BigInt = d.parse().ok()?;
    if num::Zero::is_zero(&d) {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}
