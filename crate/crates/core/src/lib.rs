//! Exact arithmetic engine for the genus-0 fiber-class potential of
//! Weierstrass fibrations over blown-up ruled surfaces.
//!
//! Everything here is exact: q-series carry rational coefficients and an
//! explicit precision, quasi-modular forms are polynomials in `E2, E4, E6`,
//! lattice theta series come from exhaustive short-vector enumeration, and
//! intersection numbers are integers.
//!
//! The series and polynomial types are generic over a [`Scalar`]; the
//! aliases below fix the scalar to [`BigRational`], which is what the
//! pipeline and CLI use.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod lattice;
pub mod linalg;
pub mod modforms;
pub mod pipeline;
pub mod qseries;
pub mod scalar;
pub mod surfgeom;

pub use error::{Error, Result};
pub use lattice::{Lattice, NamedLattice, RootSystem};
pub use modforms::{EisensteinTable, QuasiModularPoly};
pub use pipeline::{GeometryInput, PipelineReport};
pub use qseries::QSeries;
pub use scalar::Scalar;
pub use surfgeom::{DivisorClass, SurfaceContext};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision rational, the default scalar.
pub type Rational = BigRational;
/// q-series over [`Rational`].
pub type Series = QSeries<BigRational>;
/// Quasi-modular polynomial over [`Rational`].
pub type QmPoly = QuasiModularPoly<BigRational>;
/// q-series over 128-bit rationals; fine for low precision, overflows past it.
pub type SmallSeries = QSeries<num_rational::Ratio<i128>>;
