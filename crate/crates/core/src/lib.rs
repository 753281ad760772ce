//! Exact classical periods of Laurent polynomial potentials.
//!
//! The engine computes constant terms of powers of sparse Laurent
//! polynomials whose coefficients are exact rationals or elements of a
//! curve-class monoid algebra, and checks them against closed-form quantum
//! period data for small toric Fano spaces.

pub mod error;
pub mod expr;
pub mod frobenius;
pub mod io;
pub mod mori;
pub mod mutation;
pub mod newton;
pub mod oracles;
pub mod period;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use mori::{CurveClass, CurveClassMonoid, MoriElement};
pub use newton::{Facet, NewtonPolytope};
pub use poly::{LaurentPoly, Monomial, MAX_RANK};
pub use ring::{Coefficient, Field, Rational, UniPoly};
