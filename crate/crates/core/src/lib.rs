//! Turaev-Viro state sums on singular triangulations, their splitting into
//! homotopical blocks, TQFT block spaces, and the homologically twisted
//! invariant, over finite-group categories with 3-cocycles and over
//! U_q(sl2) at roots of unity, in exact cyclotomic arithmetic.

pub mod category;
pub mod report;
pub mod scalar;
pub mod statesum;
pub mod tqft;
pub mod triangulation;

pub use scalar::{ApproxComplex, Cyclotomic, Rational, Scalar, ScalarError};
