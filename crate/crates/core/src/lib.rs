//! Double Poisson brackets on path algebras of quivers, the noncommutative
//! BRST reduction, representation functors and weight-sliced homology.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncalg`] graded path algebras, words, elements and tensor powers;
//! * [`dbracket`] double brackets from generator tables and their checks;
//! * [`complexes`] Shafarevich, Chevalley-Eilenberg and BRST presentations;
//! * [`repfun`] matrix representations into commutative dg algebras;
//! * [`homology`] weight slices, invariants and the decomposition checks.

pub mod coeff;
pub mod complexes;
pub mod dbracket;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod ncalg;
pub mod report;
pub mod repfun;

pub use coeff::Q;
pub use error::{Error, Result};
