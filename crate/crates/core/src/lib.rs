//! Exact arithmetic for Penney's ante between two binary words under a coin
//! with bias `p` towards `1`.

pub mod automaton;
pub mod correlation;
pub mod linalg;
pub mod properties;
pub mod ratfunc;
pub mod search;
pub mod winprob;
pub mod words;
