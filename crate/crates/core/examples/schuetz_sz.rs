//! The s^Z tuple of staircases, their duals, and the complexes C^k.

use khz::invariants::schuetz_sz;
use khz::staircase::{build_ck, build_staircase, StaircaseSpec};

fn main() -> khz::Result<()> {
    for entries in [vec![2], vec![2, 4], vec![2, 2, 2]] {
        let c = build_staircase(&StaircaseSpec::new(entries.clone())?);
        println!("Σ{entries:?}: s^Z = {}, dual: s^Z = {}", schuetz_sz(&c)?, schuetz_sz(&c.dual())?);
    }
    for k in 1..=3 {
        let c = build_ck(k)?;
        let t = schuetz_sz(&c)?;
        println!("C^{k}: s^Z = {t}, gl = {}, dual: s^Z = {}", t.gl(), schuetz_sz(&c.dual())?);
    }
    Ok(())
}
