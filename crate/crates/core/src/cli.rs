//! The `khz` command line.
//!
//! A complex argument is one of
//! - a knot diagram `PD[…]` or `BR[…]` (built and reduced),
//! - a staircase product such as `S(2,4)*S(3)^-1`,
//! - `ck(k)`, `unit`, or `dual(<complex>)`,
//! - a path to a JSON complex (also accepted via `--complex`).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::invariants::{rasmussen_s, schuetz_sz};
use crate::json::{from_json, to_json};
use crate::khovanov::{build_complex_with_cap, build_reduced_with_cap, max_crossings, parse_diagram};
use crate::staircase::{build_ck, stair_normal_form, FormalStairProduct};
use crate::zeq::{distance_d, z_equivalence_report};

#[derive(Parser, Debug)]
#[command(name = "khz", version, about = "Universal Khovanov complexes over Z[G] and their concordance invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the reduced complex.
    Kh {
        #[command(flatten)]
        input: Input,
        /// Print JSON instead of the (t, q) grid.
        #[arg(long)]
        json: bool,
        /// Skip unit cancellation and print the full cube.
        #[arg(long)]
        full: bool,
    },
    /// Rasmussen invariants s_c.
    S {
        #[command(flatten)]
        input: Input,
        /// Characteristics, comma separated.
        #[arg(long = "char", value_delimiter = ',', default_value = "0")]
        chars: Vec<u64>,
    },
    /// Schütz's s^Z tuple and gl.
    Sz {
        #[command(flatten)]
        input: Input,
    },
    /// Normal form of a staircase product.
    Stair {
        expr: String,
        /// Also print the normal-form complex as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Z-equivalence test with the lattice certificates.
    Zeq {
        a: String,
        b: String,
        #[command(flatten)]
        opts: DiagramOpts,
    },
    /// The metric d, searched up to a bound.
    Dist {
        a: String,
        b: String,
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        opts: DiagramOpts,
    },
    /// Check admissibility, homogeneity and d² = 0.
    Validate {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Diagram, staircase expression, `ck(k)`, `unit`, `dual(…)` or JSON path.
    pub source: Option<String>,
    /// JSON complex file.
    #[arg(long, conflicts_with = "source")]
    pub complex: Option<PathBuf>,
    #[command(flatten)]
    pub opts: DiagramOpts,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct DiagramOpts {
    /// Basepoint arc for diagram inputs.
    #[arg(long)]
    pub basepoint: Option<u32>,
    /// Crossing cap (default: KHZ_MAX_CROSSINGS or 12).
    #[arg(long)]
    pub cap: Option<usize>,
}

/// 0 on success, 1 on input errors, 2 when the crossing cap aborts.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossingCap { .. } => 2,
        _ => 1,
    }
}

/// Resolves a complex argument.
pub fn load(source: &str, opts: DiagramOpts, reduced: bool) -> Result<GradedComplex> {
    let s = source.trim();
    if let Some(inner) = s.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        return Ok(load(inner, opts, reduced)?.dual());
    }
    if s == "unit" {
        return Ok(GradedComplex::unit());
    }
    if let Some(k) = s.strip_prefix("ck(").and_then(|r| r.strip_suffix(')')) {
        let k = k.trim().parse().map_err(|_| Error::parse(s, 3, "expected a positive integer"))?;
        return build_ck(k);
    }
    if s.starts_with("PD") || s.starts_with("BR") {
        let mut pd = parse_diagram(s)?;
        if let Some(b) = opts.basepoint {
            pd = pd.with_basepoint(b)?;
        }
        let cap = opts.cap.unwrap_or_else(max_crossings);
        return if reduced { build_reduced_with_cap(&pd, cap) } else { build_complex_with_cap(&pd, cap) };
    }
    if s.starts_with('S') || s.starts_with('Σ') {
        return Ok(FormalStairProduct::parse(s)?.to_complex());
    }
    let text = std::fs::read_to_string(s).map_err(|e| Error::Json(format!("{s}: {e}")))?;
    from_json(&text)
}

impl Input {
    fn load(&self, reduced: bool) -> Result<GradedComplex> {
        match (&self.source, &self.complex) {
            (_, Some(path)) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
                from_json(&text)
            }
            (Some(s), None) => load(s, self.opts, reduced),
            (None, None) => Err(Error::parse("", 0, "missing input")),
        }
    }
}

/// Runs one command and returns its report.
pub fn execute(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::Kh { input, json, full } => {
            let c = input.load(!full)?;
            if *json {
                out.push_str(&to_json(&c));
            } else {
                let _ = writeln!(out, "rank {}, {} entries", c.len(), c.num_entries());
                out.push_str(&c.grid());
            }
        }
        Command::S { input, chars } => {
            let c = input.load(true)?;
            let parts = chars
                .iter()
                .map(|&ch| Ok(format!("s_{ch} = {}", rasmussen_s(&c, ch)?)))
                .collect::<Result<Vec<_>>>()?;
            out.push_str(&parts.join(", "));
        }
        Command::Sz { input } => {
            let t = schuetz_sz(&input.load(true)?)?;
            let _ = write!(out, "{t}, gl = {}", t.gl());
        }
        Command::Stair { expr, json } => {
            let nf = stair_normal_form(&FormalStairProduct::parse(expr)?);
            let _ = write!(out, "{nf}");
            if *json {
                out.push('\n');
                out.push_str(&to_json(&nf.to_complex()));
            }
        }
        Command::Zeq { a, b, opts } => {
            let r = z_equivalence_report(&load(a, *opts, true)?, &load(b, *opts, true)?)?;
            let _ = write!(out, "{r}");
        }
        Command::Dist { a, b, bound, opts } => {
            let d = distance_d(&load(a, *opts, true)?, &load(b, *opts, true)?, *bound)?;
            let _ = write!(out, "{d}");
        }
        Command::Validate { input } => {
            let c = input.load(false)?;
            let v = c.validate();
            if v.is_empty() {
                let _ = write!(out, "valid: rank {}, {} entries", c.len(), c.num_entries());
            } else {
                let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
                return Err(Error::InvalidDiagram(msg.join("; ")));
            }
        }
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}

/// Parses `args` (program name first) and runs; returns the exit code and
/// either the report or the error text.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(s) => (0, s),
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let (code, out) = run(std::iter::once("khz").chain(args.iter().copied()));
        assert_eq!(code, 0, "{out}");
        out
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(ok(&["s", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", "--char", "0,2"]), "s_0 = 2, s_2 = 2\n");
        assert_eq!(ok(&["stair", "S(2)*S(3)"]), "Σ_(6)\n");
        assert_eq!(ok(&["sz", "ck(1)"]), "(0, 2), gl = 1\n");
        assert_eq!(ok(&["dist", "unit", "unit"]), "0\n");
        assert!(ok(&["zeq", "S(2)*S(3)", "S(6)"]).starts_with("Z-equivalent"));
    }

    #[test]
    fn exit_codes() {
        let (code, msg) = run(["khz", "s", "PD[X(1,2,3)]"]);
        assert_eq!(code, 1);
        assert!(msg.contains("parse error at"), "{msg}");
        let (code, _) = run(["khz", "kh", "BR[2; 1,1,1]", "--cap", "2"]);
        assert_eq!(code, 2);
        let (code, _) = run(["khz", "s", "S(2)", "--char", "4"]);
        assert_eq!(code, 1);
        let (code, _) = run(["khz", "frobnicate"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn deterministic_json() {
        let a = ok(&["kh", "BR[3; 1,-2,1,-2]", "--json"]);
        let b = ok(&["kh", "BR[3; 1,-2,1,-2]", "--json"]);
        assert_eq!(a, b);
        let c = from_json(&a).unwrap();
        assert_eq!(to_json(&c) + "\n", a);
    }
}
