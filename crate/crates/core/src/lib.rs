//! Generic symmetry defect sets (Wigner caustics) of pairs of plane curves.

pub mod cli;
pub mod eliminate;
pub mod invariants;
pub mod json;
pub mod numeric;
pub mod poly;
pub mod scene;
pub mod singular;
pub mod trace;
