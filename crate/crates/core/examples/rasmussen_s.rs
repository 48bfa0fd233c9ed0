//! Rasmussen invariants s_c for a few knots and characteristics.

use khz::invariants::rasmussen_s;
use khz::khovanov::knot_complex;

fn main() -> khz::Result<()> {
    let knots = [
        ("right trefoil", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"),
        ("figure-eight", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"),
        ("T(2,5)", "BR[2; 1,1,1,1,1]"),
        ("T(3,4)", "BR[3; 1,2,1,2,1,2,1,2]"),
    ];
    for (name, code) in knots {
        let c = knot_complex(code)?;
        let s: Vec<String> =
            [0, 2, 3, 5].iter().map(|&p| Ok(format!("s_{p} = {}", rasmussen_s(&c, p)?))).collect::<khz::Result<_>>()?;
        println!("{name:14} {}", s.join(", "));
    }
    Ok(())
}
