//! The 3-twisted positive Whitehead double of the right trefoil (14
//! crossings) compared with Σ(2).

use khz::invariants::{rasmussen_s, schuetz_sz};
use khz::khovanov::{build_reduced_with_cap, parse_diagram};
use khz::staircase::FormalStairProduct;
use khz::zeq::z_equivalence_report;

fn main() -> khz::Result<()> {
    let code = include_str!("../tests/data/whitehead_trefoil.pd");
    let pd = parse_diagram(code.trim())?;
    let start = std::time::Instant::now();
    let c = build_reduced_with_cap(&pd, 16)?;
    println!("{} crossings, reduced rank {} in {:.2?}", pd.len(), c.len(), start.elapsed());
    for p in [0, 2, 3] {
        println!("s_{p} = {}", rasmussen_s(&c, p)?);
    }
    println!("s^Z = {}", schuetz_sz(&c)?);
    let sigma = FormalStairProduct::parse("S(2)")?.to_complex();
    println!("vs Σ(2): {}", z_equivalence_report(&c, &sigma)?);
    Ok(())
}
