//! Finite (m,n)-seminearrings given by operation tables.
//!
//! A structure is a carrier `0..k` with an m-ary addition `f` and an n-ary
//! multiplication `g`. The modules decide the axioms by exhaustive sweep and
//! compute subseminearrings, ideals, units, homomorphisms, congruences and
//! factor structures, returning concrete counterexamples when a check fails.

pub mod axioms;
pub mod carrier;
pub mod cli;
pub mod congruences;
pub mod constructions;
pub mod error;
pub mod ideals;
pub mod io;
pub mod morphisms;
pub mod substructures;
pub mod units;
pub mod verdict;

pub use carrier::{Element, FinStructure, Op, OpTable};
pub use cli::{run_command, CommandOutput};
pub use error::{Error, Result};
pub use io::{parse_structure, serialize_structure};
pub use verdict::{AxiomVerdict, Witness};
