//! Exact analysis of full-rank square matrices over factorial domains:
//! certified diagonalization, Smith forms, Gröbner bases, Hom/Ext of
//! finitely presented modules and cyclic filtrations.

pub mod certify;
pub mod cli;
pub mod diagonalizer;
pub mod error;
pub mod filtration;
pub mod groebner;
pub mod homalg;
pub mod json;
pub mod linalg;
pub mod rings;
pub mod testkit;

pub use error::{Error, Result};
