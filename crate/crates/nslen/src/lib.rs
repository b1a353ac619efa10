//! Nonsolvable length of finite permutation groups.
//!
//! The crate computes the RS-series (alternating solvable-radical and
//! nonabelian-socle layers) of a finite permutation group, its nonsolvable
//! length λ, checks and searches for n-rarefied subgroups, and reproduces the
//! associated extremal and bounding results at desk scale. See the `book/`
//! guide for the concepts.

pub mod action;
pub mod class_l;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod perm;
pub mod rarefied;
pub mod group;
pub mod rs;
pub mod structure;
pub mod subgroups;
pub mod verify;

pub use action::{ActionHomomorphism, Partition};
pub use error::{Error, Result};
pub use group::Group;
pub use perm::Permutation;
