//! Normal forms of formal staircase products.
//!
//! `cargo run --example staircase_normal_form -- 'S(4)*S(6)*S(2,0)^-1'`

use khz::staircase::{stair_normal_form, FormalStairProduct};
use khz::zeq::z_equivalent;

fn main() -> khz::Result<()> {
    let given: Vec<String> = std::env::args().skip(1).collect();
    let exprs = if given.is_empty() {
        ["S(2)*S(3)", "S(2)*S(4)", "S(4)*S(6)", "S(2,4)*S(2)^-1", "S(0)*S(0)"].map(String::from).to_vec()
    } else {
        given
    };
    for e in &exprs {
        let p = FormalStairProduct::parse(e)?;
        let nf = stair_normal_form(&p);
        let c = p.to_complex();
        let check = if c.len() <= 12 { format!(", Z-equivalent: {}", z_equivalent(&c, &nf.to_complex())?) } else { String::new() };
        println!("{e} = {nf}{check}");
    }
    Ok(())
}
