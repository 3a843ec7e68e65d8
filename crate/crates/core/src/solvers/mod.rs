//! Exact SMP solvers for the tractable classes.

pub mod clifford;
pub mod commutative;
pub mod group;
pub mod nilpotent;
pub mod t2;
