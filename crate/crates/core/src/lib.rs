//! Exact computations in l-tone partition algebras.

pub mod algebra;
pub mod branching;
pub mod diagram;
pub mod error;
pub mod gamma;
pub mod globalise;
pub mod gram;
pub mod linalg;
pub mod poly;
pub mod standard;
pub mod structure;
pub mod symmetric;
pub mod verify;

pub use algebra::Element;
pub use diagram::{Diagram, Vertex};
pub use error::{Error, Result};
pub use gamma::ToneVector;
pub use poly::DeltaPoly;

pub type Rational = num_rational::BigRational;
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type PolyMatrix = linalg::Matrix<DeltaPoly>;
