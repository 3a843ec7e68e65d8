//! Encoders for the hardness reductions, each with a brute-force checker
//! for the source problem.

pub mod automata;
pub mod exact_cover;
pub mod kozen;

pub use automata::{dfa_intersection_nonempty, encode_t3_to_automata, Dfa, IntersectionOutcome};
pub use exact_cover::{
    encode_exact_cover, exact_cover_bruteforce, exact_cover_solution, find_np_witness_pair,
    ExactCoverInstance,
};
pub use kozen::{
    composition_oracle, encode_kozen_to_t3, forward_word, mapping_tuple, CompositionInstance,
};
