//! The metric d between classes, searched up to a bound.

use khz::khovanov::knot_complex;
use khz::staircase::FormalStairProduct;
use khz::zeq::{default_distance_bound, distance_d};
use khz::GradedComplex;

fn main() -> khz::Result<()> {
    let unit = GradedComplex::unit();
    let cases = [
        ("right trefoil", knot_complex("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")?),
        ("T(2,5)", knot_complex("BR[2; 1,1,1,1,1]")?),
        ("Σ(2)", FormalStairProduct::parse("S(2)")?.to_complex()),
        ("dual Σ(2,4)", FormalStairProduct::parse("S(2,4)^-1")?.to_complex()),
    ];
    for (name, c) in &cases {
        let bound = default_distance_bound(c, &unit);
        println!("d({name}, unknot) = {} (searched to {bound})", distance_d(c, &unit, None)?);
    }
    Ok(())
}
