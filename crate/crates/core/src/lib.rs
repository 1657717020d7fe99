//! Exact symbolic engine for Poisson-Nijenhuis structures on quiver path
//! algebras.
//!
//! The modules build on each other: [`quiver`] and [`word`] give the path
//! algebra, [`forms`] the relative de Rham calculus, [`polyvec`] necklaces and
//! the Schouten bracket, [`pn`] bivectors, (1,1)-tensors and their checks, and
//! [`repr`] the descent to matrix representation spaces. [`builtins`] ships the
//! Calogero-Moser and Gibbons-Hermsen systems.
//!
//! All algebra is generic over [`scalar::Scalar`]; the aliases below fix the
//! exact rational field used everywhere the results matter.

pub mod builtins;
pub mod derivation;
pub mod error;
pub mod forms;
pub mod lin;
pub mod necklace;
pub mod pn;
pub mod polyvec;
pub mod quiver;
pub mod repr;
pub mod sample;
pub mod scalar;
pub mod syntax;
pub mod word;

pub use error::{Error, Result};
pub use quiver::{ArrowId, Kind, Letter, Quiver, VertexId};
pub use scalar::{Dual, Scalar};
pub use word::Word;

/// Exact coefficients.
pub type Rational = num_rational::BigRational;
/// Element of `kQ` (or of the letter algebra) over `ℚ`.
pub type PolyQ = word::Poly<Rational>;
/// Differential form over `ℚ`.
pub type FormQ = forms::Form<Rational>;
/// Polyvector field over `ℚ`.
pub type PolyVectorQ = polyvec::PolyVector<Rational>;
/// Derivation over `ℚ`.
pub type DerivationQ = derivation::Derivation<Rational>;
/// Bivector with presentation over `ℚ`.
pub type BivectorQ = pn::bivector::Bivector<Rational>;
/// Regular endomorphism over `ℚ`.
pub type EndoQ = pn::endo::RegularEndo<Rational>;
/// Matrix over `ℚ`.
pub type MatrixQ = repr::matrix::Matrix<Rational>;
/// Representation point over `ℚ`.
pub type RepPointQ = repr::point::RepPoint<Rational>;
