//! Qualitative constraint reasoning over intervals and regions.
//!
//! The crate bundles:
//!
//! * [`calculus`]: Allen's interval algebra and RCC-8 as validated
//!   partition schemes, with the coarser macro languages as relation-set
//!   views;
//! * [`qcn`]: qualitative constraint networks and algebraic closure;
//! * [`ia`]: an exact endpoint-sequencing solver for the three-relation
//!   interval fragment, plus the interval graph sandwich encoding;
//! * [`rcc8`]: an exact solver for RCC-8 built on ordered partitions,
//!   greedy order solving, inconsistency-path comparison and pruned
//!   dynamic programming;
//! * [`redundancy`]: non-redundancy analysis, deciding whether a
//!   constraint is redundant, computing prime subnetworks, and sizing
//!   maximal non-redundant networks per relation;
//! * [`oracle`]: small brute-force decision procedures the fast solvers
//!   are tested against;
//! * [`io`], [`gen`], [`report`]: file formats, seeded instance
//!   generation and machine-readable run reports.

pub mod calculus;
pub mod gen;
pub mod ia;
pub mod io;
pub mod oracle;
pub mod qcn;
pub mod rcc8;
pub mod redundancy;
pub mod report;

pub use calculus::{CalcId, Calculus, RelSet};
pub use qcn::Qcn;
