//! Counting the minimal sequences of giant steps that construct a tunnel of
//! a tunnel number one knot, equivalently the geodesics between two vertices
//! of the Farey graph.
//!
//! The pipeline is: parse a tunnel description ([`invariants`]), build its
//! corridor ([`corridor`]), and run the 2×2 transfer-matrix count
//! ([`counting`]). [`oracle`] recounts by breadth-first search on the
//! corridor, [`farey`] answers the same question between arbitrary Farey
//! vertices, and [`stats`] aggregates counts over all inputs of a length.

pub mod cli;
pub mod corridor;
pub mod counting;
pub mod document;
pub mod farey;
pub mod invariants;
pub mod oracle;
pub mod stats;

pub use corridor::{build_corridor, Corridor, Disposition, Side};
pub use counting::{count_minimal_sequences, Config, CountResult, Matrix2};
pub use farey::{farey_geodesics, Fraction};
pub use invariants::{
    binary_to_steps, parse_binary, parse_steps, steps_to_binary, BinaryInvariants, ParseError,
    StepSequence,
};
