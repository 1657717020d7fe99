//! Re-exports for the property suites.

#![allow(unused_imports)]

pub use ncpn_core::sample::{jacobiator, random_bivector, sign, Gen};
