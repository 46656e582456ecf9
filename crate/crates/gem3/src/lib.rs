//! Invariants of 4-edge-coloured graphs encoding closed orientable
//! 3-manifolds.
//!
//! A *gem* (graph encoded manifold) is a connected 4-regular multigraph with
//! a proper edge colouring by four colours; its dual pseudocomplex
//! triangulates a closed 3-manifold, and a contracted gem is a
//! *crystallization*. This crate computes the combinatorial invariants that
//! make small censuses of such graphs useful:
//!
//! - residues, bipartiteness (= orientability), contractedness, the
//!   manifold sphere criterion, rigidity and connected sums
//!   ([`graph`]);
//! - canonical codes for isomorphism rejection ([`canon`]);
//! - regular surface embeddings, Heegaard diagrams and their regions
//!   ([`heegaard`]);
//! - exact GM-complexity by exhausting the whole choice space, with a
//!   witness and an independent straight-line second route ([`gm`]);
//! - the pseudocomplex, Euler characteristic, Smith normal form and first
//!   integral homology ([`invariants`]);
//! - file formats, generators for standard families (spheres, lens
//!   spaces), a small-order census enumerator and batch classification
//!   ([`catalogue`]).
//!
//! Graphs are immutable after validation and every operation is a pure
//! function, so batches parallelize freely; the [`cli`] front end exposes
//! the workflows behind the `gem3` binary.
//!
//! ```
//! use gem3::catalogue::lens_gem;
//! use gem3::gm::gm_complexity;
//! use gem3::invariants::homology_h1;
//!
//! let rp3 = lens_gem(2, 1).unwrap();
//! assert_eq!(homology_h1(&rp3).unwrap().to_string(), "Z/2");
//! assert_eq!(gm_complexity(&rp3).unwrap().value, 0);
//! ```

pub mod canon;
#[cfg(test)]
pub(crate) mod testutil;
pub mod catalogue;
pub mod cli;
pub mod error;
pub mod gm;
pub mod graph;
pub mod heegaard;
pub mod invariants;

pub use canon::{canonical_code, isomorphic, CodeMode};
pub use error::{GemError, Result};
pub use graph::{Colour, ColourSet, ColouredGraph, PartitionChoice};
