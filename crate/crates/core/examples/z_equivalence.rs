//! Z-equivalence tests with their lattice certificates.

use khz::khovanov::knot_complex;
use khz::staircase::{build_ck, FormalStairProduct};
use khz::zeq::z_equivalence_report;
use khz::GradedComplex;

fn stair(e: &str) -> khz::Result<GradedComplex> {
    Ok(FormalStairProduct::parse(e)?.to_complex())
}

fn main() -> khz::Result<()> {
    let trefoil = knot_complex("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")?;
    let pairs = [
        ("trefoil", trefoil, "t⁰q²", GradedComplex::rank_one(0, 2)),
        ("Σ(2)", stair("S(2)")?, "Σ(3)", stair("S(3)")?),
        ("Σ(2)", stair("S(2)")?, "Σ(4)", stair("S(4)")?),
        ("Σ(2,4)", stair("S(2,4)")?, "Σ(2)⊗Σ(4)", stair("S(2)*S(4)")?),
        ("C¹", build_ck(1)?, "C²", build_ck(2)?),
    ];
    for (na, a, nb, b) in &pairs {
        println!("{na} vs {nb}: {}", z_equivalence_report(a, b)?);
    }
    Ok(())
}
