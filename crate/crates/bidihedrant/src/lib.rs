//! Permutation groups, finite-field linear groups and the arc-transitive
//! graph families they act on, plus a check-manifest runner for batch
//! verification.

pub mod action;
pub mod analysis;
pub mod error;
pub mod families;
pub mod gf;
pub mod graph;
pub mod group;
pub mod matgf;
pub mod named;
pub mod perm;
pub mod registry;

pub use error::{Error, Result};
pub use group::PermutationGroup;
pub use perm::Permutation;
