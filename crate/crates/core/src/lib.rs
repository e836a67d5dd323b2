//! Exact symbolic engine for realizations of Snyder-type noncommutative
//! spacetimes in terms of the Heisenberg algebra extended by tensorial
//! Lorentz generators.

pub mod coeff;
pub mod hadamard;
pub mod realizations;
pub mod series;
pub mod verifier;
pub mod weyl;
