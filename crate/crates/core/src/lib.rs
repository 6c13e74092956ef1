//! Exact verification of the Yangian of the queer Lie superalgebra and its
//! companion structures: super operators, the R-matrix, evaluation
//! representations, the dual pairing, Sergeev algebras and the Drinfeld
//! functor. Everything is computed over Q(i) without floating point.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod check;
pub mod drinfeld;
pub mod dual_pairing;
pub mod identity;
pub mod linalg;
pub mod rmatrix;
pub mod scalar;
pub mod sergeev;
pub mod superop;
pub mod yangian;

pub use scalar::{GaussRat, Poly, RatFun, Rational};
