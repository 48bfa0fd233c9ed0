mod common;

use common::*;
use khz::invariants::{knotlike_check, rasmussen_s, schuetz_sz};
use khz::khovanov::{build_complex, build_reduced, parse_diagram, positive_diagram_degree_check};
use khz::simplify::reduce;

#[test]
fn corpus_parses_as_knots() {
    for (label, code, _) in CORPUS {
        let pd = parse_diagram(code).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert!(pd.len() <= 8, "{label}");
    }
}

#[test]
fn corpus_s_values() {
    for (label, code, expected) in CORPUS {
        let pd = parse_diagram(code).unwrap();
        let c = build_reduced(&pd).unwrap();
        assert!(knotlike_check(&c), "{label}");
        let s0 = rasmussen_s(&c, 0).unwrap();
        if let Some(e) = expected {
            assert_eq!(s0, *e, "{label}");
        }
        if pd.is_positive() {
            assert!(positive_diagram_degree_check(&pd).unwrap(), "{label}");
            assert_eq!(s0, 1 + pd.len() as i32 - pd.seifert_circles() as i32, "{label}");
        }
        // the basepoint does not matter
        for arc in [2, 3] {
            let other = build_reduced(&pd.with_basepoint(arc).unwrap()).unwrap();
            assert_eq!(rasmussen_s(&other, 2).unwrap(), rasmussen_s(&c, 2).unwrap(), "{label}");
            assert_eq!(schuetz_sz(&other).unwrap(), schuetz_sz(&c).unwrap(), "{label}");
        }
    }
}

#[test]
fn small_diagrams_full_cube() {
    for (label, code, _) in CORPUS.iter().filter(|k| parse_diagram(k.1).unwrap().len() <= 6) {
        let pd = parse_diagram(code).unwrap();
        let full = build_complex(&pd).unwrap();
        assert!(full.validate().is_empty(), "{label}");
        assert_eq!(integer_homology(&full), [(0, (1, vec![]))].into_iter().collect(), "{label}");
        assert!(build_reduced(&pd).unwrap().same_as(&reduce(&full)), "{label}");
    }
}
