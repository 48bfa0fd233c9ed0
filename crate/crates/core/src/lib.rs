//! Universal Khovanov complexes over Z[G] and the concordance invariants
//! read off from them.

pub mod cli;
pub mod complex;
pub mod error;
pub mod field;
pub mod homology;
pub mod intlin;
pub mod invariants;
pub mod json;
pub mod khovanov;
pub mod ring;
pub mod simplify;
pub mod staircase;
pub mod zeq;

pub use complex::{ComplexBuilder, GenId, Generator, GradedComplex, Violation};
pub use error::{Error, Result};
pub use ring::{GElem, LaurentBiPoly};
