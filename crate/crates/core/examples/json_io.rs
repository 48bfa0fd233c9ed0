//! Writes a complex to JSON and reads it back.
//!
//! `cargo run --example json_io -- examples/data/ck1.json`

use khz::json::{from_json, to_json};
use khz::staircase::build_ck;

fn main() -> khz::Result<()> {
    let c = match std::env::args().nth(1) {
        Some(path) => from_json(&std::fs::read_to_string(&path).map_err(|e| khz::Error::Json(format!("{path}: {e}")))?)?,
        None => build_ck(1)?,
    };
    let text = to_json(&c);
    println!("{text}");
    let back = from_json(&text)?;
    println!("round trip identical: {}", back.same_as(&c));
    Ok(())
}
