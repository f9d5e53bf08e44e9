//! Exact counting and enumeration of finite lattices with two or three
//! reducible elements.
//!
//! The crate has three layers:
//!
//! * structure: [`poset`], [`lattice`], [`canon`], [`adjunct`] and
//!   [`reduction`] model cover digraphs, lattices, canonical forms, adjunct
//!   representations and the basic-block reductions;
//! * counting: [`partitions`] and [`formulas`] evaluate the closed-form
//!   counts with arbitrary-precision integers;
//! * checking: [`oracle`] enumerates lattices by brute force and compares
//!   the censuses with the formulas.

pub mod adjunct;
pub mod canon;
pub mod formulas;
pub mod lattice;
pub mod named;
pub mod oracle;
pub mod partitions;
pub mod poset;
pub mod reduction;

pub use adjunct::{
    adjunct_sum, decompose, direct_sum, pair_multiplicity, realize, AdjunctError, AdjunctPair,
    AdjunctRep, Attachment,
};
pub use canon::{canonical_certificate, canonical_form, canonize, Canonical, Certificate};
pub use formulas::{Count, TwoReducibleForm};
pub use lattice::{
    as_lattice, classify_elements, contains_crown, is_dismantlable, maximal_chains_in_interval,
    meet_join, Bound, ElementClassification, Lattice, LatticeError,
};
pub use partitions::{enumerate_partitions, partition_count, PartitionTable};
pub use poset::{build_poset, nullity, CoverDigraph, Element, PosetError};
pub use reduction::{
    basic_block_of, basic_retract, classify_fbb, fundamental_basic_block_of, is_retractible,
    FbbClass, ReductionError,
};
