//! Kernelization, fixed-parameter deciders and reductions for the
//! orthogonality dimension of graphs, cross-checked by exact brute-force
//! oracles over prime fields and the rationals.

pub mod algebra;
pub mod certificates;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod reductions;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Family, FamilyWitness, Graph, ModulatorInstance};
