//! Wiring diagrams given as lists of Lefschetz pairs: validation,
//! commutation classes, the actions `τ`, `μ`, `σ` and `Δ`, incidence
//! lattices, fundamental-group presentations, and exhaustive classification.

pub mod actions;
pub mod classify;
pub mod diagram;
pub mod error;
pub mod lattice;
pub mod pi1;
pub mod trace;

pub use actions::{DeltaConfig, DeltaDirection, DeltaMove, DeltaPattern, DeltaPolicy, MuDecomposition};
pub use classify::{ClassStore, MoveGraph, MoveSet, Partition};
pub use diagram::{parse_diagram, Diagram, LefschetzPair, Permutation, Signature};
pub use error::{Error, Result};
pub use lattice::{IncidenceLattice, LatticeCanonicalForm};
pub use trace::{CanonicalDiagram, DependenceGraph};
