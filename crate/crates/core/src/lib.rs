//! Representation-theoretic kernels of semisimple Hopf algebras, computed from
//! character-level data.
//!
//! An instance is a [`HopfPair`]: the fusion ring of `Irr(H)`, the fusion ring
//! of `Irr(H*)`, and the complex evaluation pairing `χ(d)`. From that data the
//! crate computes kernels and centers of characters, Hopf subalgebras as closed
//! subsets of `Irr(H*)`, normality and cores, the normal-subalgebra lattice,
//! the central partitions of both character rings, and the double-coset
//! decomposition with respect to two Hopf subalgebras.
//!
//! Finite groups supply the bundled instances (`kG` and its dual `k^G`) and a
//! brute-force classical oracle; see [`group`].

pub mod analysis;
pub mod central;
pub mod cosets;
pub mod error;
pub mod fusion;
pub mod group;
pub mod instance;
pub mod normality;
pub mod pair;
pub mod report;
pub mod subalgebra;
pub mod tolerance;

#[cfg(test)]
mod testutil;

pub use central::{CentralPartition, TheoremReport};
pub use cosets::CosetDecomposition;
pub use error::{Error, Result, Violation};
pub use fusion::{FusionRing, Side};
pub use group::{CharacterTable, GroupInstance, GroupOracle, GroupTable};
pub use pair::{CharVector, HopfPair};
pub use report::Report;
pub use subalgebra::ClosedSubset;
pub use tolerance::Tolerance;

/// Complex scalars used throughout: a pair of `f64`.
pub type C64 = num_complex::Complex64;
