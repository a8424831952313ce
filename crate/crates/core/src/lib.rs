//! Staggered t-structures on the affine line with its scaling action, computed exactly.
//!
//! Equivariant coherent sheaves on the line are finitely generated graded modules over
//! `Q[x]` with `x` in weight −1. Every such module splits as a sum of free summands
//! `F(d)` and cyclic torsion summands `T(g,n)`, and the category is hereditary, so the
//! whole derived layer can be carried by formal objects `⊕ H^k[-k]`.
//!
//! Layout:
//! - [`grmod`]: modules, presentations, maps, Hom/Ext/⊗/internal Hom, kernels.
//! - [`sstruct`]: s-structures on the sites `X`, `U`, `Z`, `Z_n` and the axiom suite.
//! - [`derived`]: complexes, normal forms, cones, duality, restriction functors.
//! - [`stag`]: perversities, aisles, staggered truncation, heart, simples, composition series.
//! - [`flag`]: the torus-weight computations for the Borel action on the projective line.
//! - [`oracle`]: slow weight-window brute force used to certify everything above.
//! - [`cli`]: the `stagger` command line.

pub mod cli;
pub mod derived;
pub mod error;
pub mod flag;
pub mod grmod;
pub mod oracle;
pub mod report;
pub mod sample;
pub mod sstruct;
pub mod stag;

pub use error::{Error, Result};
pub use grmod::{GradedMap, GradedModule, Presentation, Summand};
