//! Explicit chain maps exhibiting C ⊗ C* as equivalent to the unit.

use khz::simplify::reduce;
use khz::staircase::{build_ck, FormalStairProduct};
use khz::zeq::{inverse_witness, z_equivalent};
use khz::GradedComplex;

fn main() -> khz::Result<()> {
    let cases = [
        ("Σ(2)", FormalStairProduct::parse("S(2)")?.to_complex()),
        ("Σ(2,4)", FormalStairProduct::parse("S(2,4)")?.to_complex()),
        ("C¹", build_ck(1)?),
    ];
    for (name, c) in &cases {
        let w = inverse_witness(c)?;
        let cc = reduce(&c.tensor(&c.dual()));
        println!(
            "{name}: C⊗C* rank {} (reduced {}), f chain map {}, g chain map {}, g∘f = {}, verified {}, ∼ unit {}",
            w.tensor.len(),
            cc.len(),
            w.f_is_chain_map,
            w.g_is_chain_map,
            w.composite,
            w.verified(),
            z_equivalent(&cc, &GradedComplex::unit())?
        );
    }
    Ok(())
}
