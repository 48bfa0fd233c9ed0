//! Acceptance criteria 1–11, one PASS/FAIL line each. Criterion 11 is
//! reported but does not gate.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use khz::field::field_normal_form;
use khz::homology::ZReducedComplex;
use khz::invariants::{knotlike_check, rasmussen_s, schuetz_sz, SZTuple};
use khz::khovanov::{build_complex, build_reduced, build_reduced_with_cap, parse_diagram, parse_pd};
use khz::simplify::{reduce, split_summands};
use khz::staircase::{build_ck, stair_normal_form, FormalStairProduct, StaircaseSpec};
use khz::zeq::{inverse_witness, z_equivalent};
use khz::GradedComplex;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
const FIGURE_EIGHT: &str = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]";

fn run(n: u32, budget: Duration, f: impl FnOnce() -> Result<(), String>) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let took = start.elapsed();
    let res = res.and_then(|()| {
        if took <= budget {
            Ok(())
        } else {
            Err(format!("over budget: {took:.2?} > {budget:?}"))
        }
    });
    match &res {
        Ok(()) => println!("criterion {n}: PASS ({took:.2?}, budget {budget:?})"),
        Err(e) => println!("criterion {n}: FAIL ({took:.2?}) {e}"),
    }
    res.is_ok()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn st(a: &[i64]) -> GradedComplex {
    staircase(a)
}

fn c1() -> Result<(), String> {
    let c = build_complex(&parse_pd("PD[]").unwrap()).unwrap();
    let g = c.generators();
    check(
        g.len() == 1 && (g[0].tdeg, g[0].qdeg) == (0, 0) && c.num_entries() == 0,
        || format!("got {c}"),
    )
}

fn c2() -> Result<(), String> {
    let c = build_reduced(&parse_pd(TREFOIL).unwrap()).unwrap();
    for ch in [0, 2, 3, 5] {
        let s = rasmussen_s(&c, ch).unwrap();
        check(s == 2, || format!("s_{ch} = {s}"))?;
    }
    check(z_equivalent(&reduce(&c), &GradedComplex::rank_one(0, 2)).unwrap(), || "not ∼ t⁰q²".into())
}

fn c3() -> Result<(), String> {
    let c = build_reduced(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap();
    for ch in [0, 2, 3] {
        let s = rasmussen_s(&c, ch).unwrap();
        check(s == 0, || format!("s_{ch} = {s}"))?;
    }
    check(z_equivalent(&c, &GradedComplex::unit()).unwrap(), || "not ∼ t⁰q⁰".into())
}

/// Divisibility chains with entries from the allowed set.
fn random_chain(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let len = rng.gen_range(1..=3);
    let mut a = vec![*STEPS.choose(rng).unwrap()];
    while a.len() < len {
        let last = *a.last().unwrap();
        let next: Vec<i64> =
            STEPS.iter().copied().filter(|&b| if last == 0 { b == 0 } else { b % last == 0 }).collect();
        a.push(*next.choose(rng).unwrap());
    }
    a
}

fn coprime_set(rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let k = rng.gen_range(2..=3);
        let pick: Vec<i64> = [2i64, 3, 4, 5, 7, 8, 9].choose_multiple(rng, k).copied().collect();
        let ok = pick.iter().enumerate().all(|(i, &a)| pick[i + 1..].iter().all(|&b| num_integer::gcd(a, b) == 1));
        if ok {
            return pick;
        }
    }
}

/// The normal form from the invariant factors of `⊕ Z/a` (test-side).
fn expected_nf(entries: &[i64]) -> String {
    let mut zeros = 0;
    let mut powers: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for &a in entries {
        if a == 0 {
            zeros += 1;
            continue;
        }
        let mut n = a;
        let mut p = 2;
        while n > 1 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                powers.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![1i64; len];
    for (p, es) in &mut powers {
        es.sort_unstable_by(|x, y| y.cmp(x));
        for (i, &e) in es.iter().enumerate() {
            inv[len - 1 - i] *= p.pow(e);
        }
    }
    let body = format!("Σ_({})", inv.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    if zeros > 0 {
        format!("q^{} {body}", 2 * zeros)
    } else {
        body
    }
}

fn c4() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut zeq_checked = 0;
    for case in 0..20 {
        let (whole, factors): (Vec<i64>, Vec<Vec<i64>>) = if case % 2 == 0 {
            let a = random_chain(&mut rng);
            (a.clone(), a.iter().map(|&x| vec![x]).collect())
        } else {
            let r = coprime_set(&mut rng);
            (vec![r.iter().product()], r.iter().map(|&x| vec![x]).collect())
        };
        let lhs = FormalStairProduct::new().with(StaircaseSpec::new(whole.clone()).unwrap(), 1);
        let rhs = factors
            .iter()
            .fold(FormalStairProduct::new(), |p, f| p.with(StaircaseSpec::new(f.clone()).unwrap(), 1));
        let (nl, nr) = (stair_normal_form(&lhs), stair_normal_form(&rhs));
        check(nl == nr, || format!("{whole:?}: {nl} vs {nr}"))?;
        let flat: Vec<i64> = factors.iter().flatten().copied().collect();
        check(nl.to_string() == expected_nf(&flat), || format!("{whole:?}: {nl} vs {}", expected_nf(&flat)))?;
        let (cl, cr) = (lhs.to_complex(), rhs.to_complex());
        if cl.len() + cr.len() <= 12 {
            check(z_equivalent(&cl, &cr).unwrap(), || format!("{whole:?}: complexes not Z-equivalent"))?;
            check(z_equivalent(&cl, &nl.to_complex()).unwrap(), || format!("{whole:?}: normal form not ∼"))?;
            zeq_checked += 1;
        }
    }
    check(zeq_checked >= 5, || format!("only {zeq_checked} identities checked at complex level"))
}

fn c5() -> Result<(), String> {
    check(!z_equivalent(&st(&[2]), &st(&[3])).unwrap(), || "Σ(2) ∼ Σ(3)".into())?;
    check(!z_equivalent(&st(&[2]), &st(&[4])).unwrap(), || "Σ(2) ∼ Σ(4)".into())?;
    check(z_equivalent(&st(&[2, 4]), &reduce(&st(&[2]).tensor(&st(&[4])))).unwrap(), || "Σ(2,4) ≁ Σ(2)⊗Σ(4)".into())
}

fn entry_multiset(c: &GradedComplex) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = c.entries().map(|(_, _, e)| (e.scalar().magnitude().to_string(), e.gpow())).collect();
    v.sort();
    v
}

fn c6() -> Result<(), String> {
    for k in 1..=3 {
        let c = build_ck(k).unwrap();
        for ch in [0, 2, 3, 5] {
            let s = rasmussen_s(&c, ch).unwrap();
            check(s == 0, || format!("C^{k}: s_{ch} = {s}"))?;
        }
        let t = schuetz_sz(&c).unwrap();
        check(t == SZTuple::new(0, [2]), || format!("s^Z(C^{k}) = {t}"))?;
        let t = schuetz_sz(&c.dual()).unwrap();
        check(t == SZTuple::new(0, Vec::<i64>::new()), || format!("s^Z(C^{k}*) = {t}"))?;
    }
    check(!z_equivalent(&build_ck(1).unwrap(), &build_ck(2).unwrap()).unwrap(), || "C¹ ∼ C²".into())?;
    // Σ(2) ⊗ Σ*(4): two basis changes split it into q²·A ⊕ C¹
    let t = reduce(&st(&[2]).tensor(&st(&[4]).dual()));
    let at = |c: &GradedComplex, id: &str| c.find(id).unwrap();
    let t = t.with_basis_change(at(&t, "x2⊗x2*"), at(&t, "y1⊗y1*"), 1).unwrap();
    let t = t.with_basis_change(at(&t, "y1⊗y1*"), at(&t, "x1⊗x1*"), 2).unwrap();
    let parts = split_summands(&t);
    check(parts.len() == 2, || format!("{} summands", parts.len()))?;
    let (a, ck) = if parts[0].len() == 4 { (&parts[0], &parts[1]) } else { (&parts[1], &parts[0]) };
    let mut b = GradedComplex::builder();
    let g = [b.generator("u", -1, -2), b.generator("v", 0, 0), b.generator("w", 0, -2), b.generator("z", 1, 0)]
        .map(Result::unwrap);
    b.arrow(g[0], g[1], -1).unwrap();
    b.arrow(g[0], g[2], 2).unwrap();
    b.arrow(g[2], g[3], 1).unwrap();
    b.arrow(g[1], g[3], 2).unwrap();
    let displayed_a = b.build().shift(0, 2).unwrap();
    let displayed_c = build_ck(1).unwrap();
    check(a.graded_rank() == displayed_a.graded_rank(), || format!("first summand {a}"))?;
    check(entry_multiset(a) == entry_multiset(&displayed_a), || format!("first summand entries {a}"))?;
    check(ck.graded_rank() == displayed_c.graded_rank(), || format!("second summand {ck}"))?;
    check(entry_multiset(ck) == entry_multiset(&displayed_c), || format!("second summand entries {ck}"))?;
    check(z_equivalent(ck, &displayed_c).unwrap(), || "second summand ≁ C¹".into())
}

fn c7() -> Result<(), String> {
    let t = schuetz_sz(&st(&[2, 4]).dual()).unwrap();
    check(t == SZTuple::new(0, [4, 2]), || format!("s^Z(Σ*(2,4)) = {t}"))?;
    let t = schuetz_sz(&st(&[2, 2, 2]).dual()).unwrap();
    check(t == SZTuple::new(0, [2, 2, 2]), || format!("s^Z(Σ*(2,2,2)) = {t}"))
}

fn c8() -> Result<(), String> {
    for (name, c) in [("Σ(2)", st(&[2])), ("Σ(2,4)", st(&[2, 4])), ("C¹", build_ck(1).unwrap())] {
        let w = inverse_witness(&c).unwrap();
        check(w.verified(), || format!("{name}: witness not verified"))?;
        let cc = reduce(&c.tensor(&c.dual()));
        check(z_equivalent(&cc, &GradedComplex::unit()).unwrap(), || format!("{name} ⊗ {name}* ≁ unit"))?;
    }
    Ok(())
}

fn c9() -> Result<(), String> {
    check(CORPUS.len() >= 10, || "corpus too small".into())?;
    let mut reduced = Vec::new();
    for (label, code, _) in CORPUS {
        let pd = parse_diagram(code).unwrap();
        check(pd.len() <= 8, || format!("{label}: too many crossings"))?;
        let full = build_complex(&pd).unwrap();
        check(full.validate().is_empty(), || format!("{label}: {:?}", full.validate()))?;
        let r = build_reduced(&pd).unwrap();
        check(knotlike_check(&r), || format!("{label}: not knot-like"))?;
        // M = Z and M = F₂, library and dense oracle
        let z = ZReducedComplex::from_complex(&r);
        let expected: BTreeMap<i32, usize> = [(0, 1)].into_iter().collect();
        check(z.betti(2) == expected, || format!("{label}: F₂ profile {:?}", z.betti(2)))?;
        check(
            integer_homology(&r) == [(0, (1, vec![]))].into_iter().collect(),
            || format!("{label}: integer profile {:?}", integer_homology(&r)),
        )?;
        check(truncated_dims(&r, 2, 1).contains_key(&0), || format!("{label}: empty F₂ homology"))?;
        let m = build_reduced(&pd.mirror()).unwrap();
        check(z_equivalent(&m, &r.dual()).unwrap(), || format!("{label}: mirror ≁ dual"))?;
        reduced.push((pd, r));
    }
    // connected sums with at most ten crossings
    let mut sums = 0;
    for i in 0..reduced.len() {
        for j in i..reduced.len() {
            let (p, q) = (&reduced[i].0, &reduced[j].0);
            if p.len() + q.len() > 10 || sums >= 12 {
                continue;
            }
            let sum = build_reduced(&p.connected_sum(q)).unwrap();
            let tensor = reduce(&reduced[i].1.tensor(&reduced[j].1));
            check(z_equivalent(&sum, &tensor).unwrap(), || format!("{} # {} ≁ tensor", CORPUS[i].0, CORPUS[j].0))?;
            sums += 1;
        }
    }
    check(sums >= 5, || format!("only {sums} connected sums"))?;
    // a second diagram of the trefoil
    let a = &reduced[0].1;
    let b = &reduced[2].1;
    check(z_equivalent(a, b).unwrap(), || "stabilized trefoil ≁ trefoil".into())?;
    check(schuetz_sz(a).unwrap() == schuetz_sz(b).unwrap(), || "s^Z differs across diagrams".into())
}

fn c10() -> Result<(), String> {
    let mut certified = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let c = random_knotlike(&mut rng, 8);
        for p in [0u64, 2, 3] {
            let (_, nf) = field_normal_form(&c, p).unwrap();
            let at_one = ZReducedComplex::from_complex(&c).betti(p);
            check(at_one == [(0, 1)].into_iter().collect(), || format!("seed {seed}: G = 1 homology {at_one:?}"))?;
            let mut bigraded: BTreeMap<(i32, i32), usize> = BTreeMap::new();
            *bigraded.entry((0, nf.s.unwrap())).or_default() += 1;
            for pc in &nf.pieces {
                *bigraded.entry((pc.a, pc.b)).or_default() += 1;
                *bigraded.entry((pc.a + 1, pc.b + 2 * pc.c as i32)).or_default() += 1;
            }
            check(bigraded == bigraded_at_zero(&c, p as i128), || format!("seed {seed}, char {p}: G = 0 mismatch"))?;
            for k in 2..=3u32 {
                let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
                *dims.entry(0).or_default() += k as usize;
                for pc in &nf.pieces {
                    *dims.entry(pc.a).or_default() += pc.c.min(k) as usize;
                    *dims.entry(pc.a + 1).or_default() += pc.c.min(k) as usize;
                }
                check(dims == truncated_dims(&c, p as i128, k), || format!("seed {seed}, char {p}: G^{k} mismatch"))?;
            }
        }
        if let Some((k0, ks)) = sz_oracle(&c) {
            let t = schuetz_sz(&c).unwrap();
            let ours: Vec<i128> = t.ks.iter().map(|v| v.to_i128().unwrap()).collect();
            check(t.k0 == k0 && ours == ks, || format!("seed {seed}: s^Z {t} vs ({k0}, {ks:?})"))?;
            certified += 1;
        }
    }
    check(certified >= 25, || format!("only {certified} s^Z cases certified"))
}

/// A Whitehead double of the trefoil with a positive clasp, given as a PD
/// code in `KHZ_WHITEHEAD_PD` or `tests/data/whitehead_trefoil.pd`.
fn c11() -> Result<(), String> {
    let text = std::env::var("KHZ_WHITEHEAD_PD").ok().or_else(|| {
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/whitehead_trefoil.pd")).ok()
    });
    let Some(text) = text else { return Err("no PD code supplied".into()) };
    let pd = parse_diagram(text.trim()).map_err(|e| e.to_string())?;
    let c = build_reduced_with_cap(&pd, 16).map_err(|e| e.to_string())?;
    check(z_equivalent(&c, &st(&[2])).unwrap(), || "not ∼ Σ(2)".into())
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, s(1), c1),
        run(2, s(5), c2),
        run(3, s(10), c3),
        run(4, s(60), c4),
        run(5, s(30), c5),
        run(6, s(60), c6),
        run(7, s(10), c7),
        run(8, s(30), c8),
        run(9, s(600), c9),
        run(10, s(300), c10),
    ];
    let stretch = run(11, s(1800), c11);
    println!("criterion 11 is a stretch item: {}", if stretch { "attained" } else { "not attained (non-gating)" });
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
