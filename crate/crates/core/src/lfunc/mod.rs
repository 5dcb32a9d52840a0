//! Characters, representations, h-functions and Q-series.

pub mod character;
pub mod hfun;
pub mod qseries;
pub mod rep;

pub use character::{character_ring, galois_orbits, Character};
pub use hfun::{
    character_orbit_factors, cover_matrix_check, decomposition_check, direct_sum_check, h_at_one, h_character,
    h_polynomial, induction_check, twisted_adjacency, w_sigma, DecompositionReport, InductionReport, OrbitFactor,
};
pub use qseries::{q_eval, q_series, q_twisted, twisted_factorization, QSeries, TwistedFactorization};
pub use rep::MatrixRep;
