//! Bounds, witness groups and exhaustive search for the maximum order of
//! nilpotent transitive permutation groups of given degree and class.

pub mod bignum;
pub mod bounds;
mod chain;
pub mod cli;
pub mod constructions;
pub mod group;
pub mod perm;
pub mod search;

pub use group::{group_from_generators, CentralSeries, GroupError, GroupJson, PermGroup};
pub use perm::{compose, PermError, Permutation};
