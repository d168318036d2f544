//! Exact f-vectors and m-modular f-vectors of parametric polytope families.
//!
//! The crate builds face counts for prism/pyramid/bipyramid towers, stacked
//! polytopes and cyclic polytopes, reduces them modulo `m`, and checks the
//! circulant-matrix identities that drive their equidistribution
//! `f^m / f^1 -> (1/m, ..., 1/m)`. Everything is exact; decimals only appear
//! in [`exact::format_rational`].
//!
//! [`oracle`] is an independent brute-force face enumerator used to
//! cross-check every closed formula.

pub mod circulant;
pub mod convergence;
mod error;
pub mod exact;
pub mod families;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactRational, FVector, ModularVector};
pub use families::{ExtendedVector, FamilySpec, TowerKind};
