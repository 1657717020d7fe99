//! Poisson-Nijenhuis structures: bivectors and their maps, regular
//! endomorphisms, brackets of 1-forms, and the bounded-family checks.

pub mod bivector;
pub mod brackets;
pub mod checks;
pub mod endo;
pub mod family;
pub mod symplectic;
