//! Descent to matrix representation spaces.

pub mod descent;
pub mod induced;
pub mod matrix;
pub mod point;
