//! Exact computations around the ideal of commuting generic matrices.

pub mod conjecture;
pub mod fixtures;
pub mod genmat;
pub mod groebner;
pub mod hilbert;
pub mod par;
pub mod polyring;
pub mod syzygy;
pub mod words;

pub use polyring::*;
