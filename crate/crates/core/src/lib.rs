//! Subpower membership for finite semigroups.
//!
//! Given a finite semigroup `S`, tuples `a_1, ..., a_k ∈ S^n` and a target
//! `b ∈ S^n`, decide whether `b` lies in the subsemigroup of `S^n`
//! generated by the `a_i`.
//!
//! The crate provides Cayley-table semigroups and their tuple arithmetic, a
//! brute-force closure oracle, structural classification, exact solvers for
//! groups, Clifford semigroups, ideal extensions by nilpotent semigroups,
//! commutative semigroups and the full transformation monoid on two points,
//! and polynomial-time encoders for the hardness reductions.

pub mod builtin;
pub mod catalog;
pub mod dispatch;
pub mod error;
pub mod formats;
pub mod oracle;
pub mod reductions;
pub mod semigroup;
pub mod solvers;
pub mod structure;
pub mod tuple;

pub use builtin::{builtin, Builtin};
pub use dispatch::{solve_auto, Method, SolveOptions, SolveReport};
pub use error::{Error, Result};
pub use oracle::{closure_oracle, OracleOutcome};
pub use semigroup::{Elem, Semigroup};
pub use tuple::{eval_word, SmpInstance, Tup, Witness};
