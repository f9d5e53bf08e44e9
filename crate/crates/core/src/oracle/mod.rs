//! Brute-force enumeration used to check the closed-form counts.
//!
//! Two generators are kept deliberately independent:
//!
//! * [`all_lattices`] grows every lattice one coatom at a time and knows
//!   nothing about adjunct sums or reducible elements;
//! * [`adjunct_gen`] builds lattices with two or three reducible elements
//!   as adjunct sums of chains.
//!
//! [`census`] partitions their output and compares it with the formulas.

pub mod adjunct_gen;
pub mod all_lattices;
pub mod census;

use thiserror::Error;

pub use adjunct_gen::{enumerate_blocks, enumerate_by_reducible};
pub use all_lattices::{enumerate_all_lattices, lattices_up_to};
pub use census::{
    census, verify, verify_with, CellKind, CensusCell, CensusReport, FormulaSource, OracleCensus,
    PrintedFormulas, Witness,
};

/// Largest size handled by the unrestricted lattice search.
pub const ALL_LATTICES_LIMIT: usize = 10;
/// Largest size handled by the adjunct generator.
pub const ADJUNCT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size {n} exceeds the enumeration limit of {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("the adjunct generator handles 2 or 3 reducible elements, not {0}")]
    UnsupportedReducibleCount(usize),
}
