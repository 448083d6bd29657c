//! Exact symbolic toolkit for barred-matrix ideals.
//!
//! Builds the ideal `J` of a barred (scroll-block) matrix, its
//! set-theoretic complete-intersection system of `F`- and `G`-polynomials,
//! and certifies radical equalities, ideal memberships and power containments
//! with a Buchberger engine, cross-checked by brute-force point enumeration
//! over small prime fields.

pub mod error;
pub mod exec;
pub mod field;
pub mod fixtures;
pub mod groebner;
pub mod monomial_curve;
pub mod polyring;
pub mod random;
pub mod report;
pub mod run;
pub mod schmitt_vogel;
pub mod scroll;
pub mod varieties;

pub use error::{Error, Result};
