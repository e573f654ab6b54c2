//! Realizability of branch data over the sphere.
//!
//! A branched cover of the sphere with three branching points exists exactly
//! when there is a transitive triple of permutations with product identity
//! and prescribed cycle types (a constellation). This crate decides that by
//! exhaustive search, turns witnesses into dessins d'enfants, and analyzes
//! simple closed curves in the dual graph of a dessin.

pub mod cli;
pub mod dessin;
pub mod error;
pub mod homology;
pub mod model;
pub mod perm;
pub mod search;

pub use dessin::{Dessin, FaceWalk};
pub use error::{Error, Result};
pub use homology::{CrossingWord, DualLoop, LoopSpace, Step};
pub use model::{
    control_family_datum, paper_family_datum, riemann_hurwitz_chi, BranchDatum, Partition,
};
pub use perm::Permutation;
pub use search::{
    count_constellations, decide_realizability, verify_witness, Constellation, Decision,
    SearchOptions,
};
