//! Builds the reduced complex of a knot diagram and prints its (t, q) grid.
//!
//! `cargo run --example khovanov_complex -- 'BR[3; 1,-2,1,-2]'`

use khz::khovanov::{build_complex, build_reduced, parse_diagram};

fn main() -> khz::Result<()> {
    let code = std::env::args().nth(1).unwrap_or_else(|| "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".into());
    let pd = parse_diagram(&code)?;
    let full = build_complex(&pd)?;
    println!("{pd}: {} crossings, full cube rank {}, d² = 0: {}", pd.len(), full.len(), full.is_valid());
    let c = build_reduced(&pd)?;
    println!("reduced rank {}, {} entries", c.len(), c.num_entries());
    print!("{}", c.grid());
    Ok(())
}
