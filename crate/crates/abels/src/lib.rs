//! Finiteness lengths of generalized Abels groups, together with desk-scale
//! experiments in the lattice model of the (extended) Bruhat-Tits building
//! of GL_{n+1}(Q_p).
//!
//! The library has four layers:
//!
//! - [`invariants`]: partition combinatorics of the defining vectors; the
//!   classical and Bredon finiteness lengths.
//! - [`lattice`]: exact Z[1/p] arithmetic, canonical lattice forms, the
//!   apartment retraction, heights, involutions and Borel reductions.
//! - [`complex`]: finite truncations of the building as simplicial
//!   complexes, filtration and fixed-point subcomplexes.
//! - [`homology`]: integer simplicial homology via Smith normal forms and
//!   classification of inclusion-induced maps.
//!
//! The `examples/` directory shows one runnable program per capability; the
//! `abels` binary wraps the same entry points behind a small CLI.

// Triangular-matrix algebra reads better with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod complex;
pub mod hnf;
pub mod homology;
pub mod invariants;
pub mod lattice;
pub mod rat;
pub mod verify;

pub use invariants::{
    finiteness_lengths, minimal_essential_dimension, Engine, FinitenessLengths, Partition,
    SignVector, VectorPair,
};
pub use lattice::{Lattice, Model, PMatrix};
pub use rat::{Rat, Valuation};
