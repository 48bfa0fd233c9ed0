//! Reduces Σ(2) ⊗ Σ(4)* and splits it after two basis changes.

use khz::simplify::{reduce, split_summands};
use khz::staircase::{build_staircase, StaircaseSpec};

fn main() -> khz::Result<()> {
    let stair = |a: i64| StaircaseSpec::new([a]).map(|s| build_staircase(&s));
    let c = stair(2)?.tensor(&stair(4)?.dual());
    let r = reduce(&c);
    println!("Σ(2)⊗Σ(4)*: rank {} reduced to {}", c.len(), r.len());
    println!("summands before basis change: {}", split_summands(&r).len());
    let at = |id: &str, c: &khz::GradedComplex| c.find(id).expect("generator present");
    let r = r.with_basis_change(at("x2⊗x2*", &r), at("y1⊗y1*", &r), 1)?;
    let r = r.with_basis_change(at("y1⊗y1*", &r), at("x1⊗x1*", &r), 2)?;
    for (k, part) in split_summands(&r).iter().enumerate() {
        println!("summand {k}: graded rank {}", part.graded_rank());
        print!("{part}");
    }
    Ok(())
}
