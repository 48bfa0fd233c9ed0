//! Reduced universal Khovanov complexes of knot diagrams.

mod cube;
mod frobenius;
mod pd;

pub use cube::{
    build_complex, build_complex_with_cap, build_reduced, build_reduced_with_cap, max_crossings,
    positive_diagram_degree_check, DEFAULT_MAX_CROSSINGS,
};
pub use frobenius::{FrobeniusData, Label};
pub use pd::{braid_closure, parse_braid, parse_diagram, parse_pd, Orientation, PDCode};

use crate::complex::GradedComplex;
use crate::error::Result;

/// Parses a `PD[…]` or `BR[…]` string and returns its reduced complex.
pub fn knot_complex(text: &str) -> Result<GradedComplex> {
    build_reduced(&parse_diagram(text)?)
}
