//! Exact rational arithmetic for polynomial differential forms on simplices
//! and the blending construction that extends compatible boundary traces
//! into the interior.
//!
//! Everything is computed over `BigRational`; no floating point enters any
//! check.

pub mod bary;
pub mod blending;
pub mod boundary;
pub mod chart_form;
pub mod error;
pub mod extension;
pub mod forms;
pub mod homotopy;
pub mod index;
pub mod json;
pub mod linalg;
pub mod points;
pub mod poly;
pub mod verify;

pub type Rational = num_rational::BigRational;

pub use blending::Data;
pub use boundary::BoundaryForm;
pub use bary::{BaryPoly, Degree, RationalPoint};
pub use error::{Error, Result};
pub use forms::{AffineMap, Family, PolyForm, TangentVector};
pub use index::IndexSet;
