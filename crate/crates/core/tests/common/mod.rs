//! Test-only generators and brute-force oracles. Nothing here calls the
//! library's linear algebra; everything is recomputed densely.
#![allow(dead_code)]

use std::collections::BTreeMap;

use khz::staircase::{build_ck, build_staircase, StaircaseSpec};
use khz::{GElem, GradedComplex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = Vec<Vec<i128>>;

pub const STEPS: [i64; 8] = [0, 2, 3, 4, 5, 7, 8, 9];

pub fn staircase(a: &[i64]) -> GradedComplex {
    build_staircase(&StaircaseSpec::new(a.iter().copied()).unwrap())
}

fn rank_one_piece(rng: &mut impl Rng, tag: usize, scalar: i64) -> GradedComplex {
    let t = rng.gen_range(-1..=1);
    let q = 2 * rng.gen_range(-2..=2);
    let c = rng.gen_range(0..=2u32);
    let mut b = GradedComplex::builder();
    let x = b.generator(format!("p{tag}x"), t, q).unwrap();
    let y = b.generator(format!("p{tag}y"), t + 1, q + 2 * c as i32).unwrap();
    b.entry(x, y, GElem::new(scalar, c)).unwrap();
    b.build()
}

/// Random homogeneous basis changes; failures (incompatible degrees) are skipped.
pub fn scramble(mut c: GradedComplex, rng: &mut impl Rng, rounds: usize) -> GradedComplex {
    for _ in 0..rounds {
        if c.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..c.len());
        let j = rng.gen_range(0..c.len());
        let s = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        if let Ok(next) = c.with_basis_change(i, j, s) {
            c = next;
        }
    }
    c
}

/// A knot-like complex of total rank at most `max_rank`.
pub fn random_knotlike(rng: &mut impl Rng, max_rank: usize) -> GradedComplex {
    loop {
        let a = *STEPS.choose(rng).unwrap();
        let chain = |rng: &mut dyn rand::RngCore| {
            let a = *[2i64, 3].choose(rng).unwrap();
            vec![a, a * rng.gen_range(1..=3)]
        };
        let base = match rng.gen_range(0..7) {
            0 => GradedComplex::unit(),
            1 => staircase(&[a]),
            2 => staircase(&chain(rng)),
            3 => staircase(&[a]).dual(),
            4 => staircase(&chain(rng)).dual(),
            5 => {
                let c = build_ck(rng.gen_range(1..=3)).unwrap();
                if rng.gen_bool(0.5) {
                    c.dual()
                } else {
                    c
                }
            }
            _ => staircase(&[2, 2, 4]),
        };
        if base.len() > max_rank {
            continue;
        }
        let mut c = base.shift(0, 2 * rng.gen_range(-1..=1)).unwrap();
        let mut tag = 0;
        while c.len() + 2 <= max_rank && rng.gen_bool(0.5) {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            c = c.direct_sum(&rank_one_piece(rng, tag, s));
            tag += 1;
        }
        let rounds = rng.gen_range(0..6);
        return scramble(c, rng, rounds);
    }
}

/// An arbitrary admissible complex (not necessarily knot-like).
pub fn random_complex(rng: &mut impl Rng, max_rank: usize) -> GradedComplex {
    let mut c = GradedComplex::empty();
    let mut tag = 0;
    while c.len() < max_rank {
        if c.len() + 2 <= max_rank && rng.gen_bool(0.7) {
            let s = *[-3i64, -2, -1, 1, 2, 4].choose(rng).unwrap();
            c = c.direct_sum(&rank_one_piece(rng, tag, s));
        } else {
            let mut b = GradedComplex::builder();
            b.generator(format!("f{tag}"), rng.gen_range(-1..=1), 2 * rng.gen_range(-2..=2)).unwrap();
            c = c.direct_sum(&b.build());
        }
        tag += 1;
    }
    let rounds = rng.gen_range(0..8);
    scramble(c, rng, rounds)
}

pub fn to_i128(v: &BigInt) -> i128 {
    v.to_i128().expect("small test entries")
}

/// Matrix of `d` from the generators `src` to `dst` at `G = 1`, rows = `dst`.
pub fn block(c: &GradedComplex, src: &[usize], dst: &[usize]) -> Mat {
    let mut m = vec![vec![0i128; src.len()]; dst.len()];
    for (j, &s) in src.iter().enumerate() {
        for (i, &d) in dst.iter().enumerate() {
            if let Some(v) = c.entry(s, d) {
                m[i][j] = to_i128(&v.at_one());
            }
        }
    }
    m
}

pub fn in_degree(c: &GradedComplex, t: i32) -> Vec<usize> {
    (0..c.len()).filter(|&i| c.generator(i).tdeg == t).collect()
}

/// Nonzero invariant factors by repeated smallest-pivot elimination.
pub fn snf(mut m: Mat) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut r0 = 0;
    while r0 < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in r0..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(r0, pj);
        }
        let p = m[r0][r0];
        let mut clean = true;
        for i in r0 + 1..rows {
            let f = m[i][r0] / p;
            for j in r0..cols {
                m[i][j] -= f * m[r0][j];
            }
            clean &= m[i][r0] == 0;
        }
        for j in r0 + 1..cols {
            let f = m[r0][j] / p;
            for i in r0..rows {
                m[i][j] -= f * m[i][r0];
            }
            clean &= m[r0][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility of the rest
        let bad = (r0 + 1..rows).flat_map(|i| (r0 + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
        if let Some((i, _)) = bad {
            for j in r0..cols {
                m[r0][j] += m[i][j];
            }
            continue;
        }
        out.push(p.abs());
        r0 += 1;
    }
    out
}

pub fn rank_q(m: &Mat) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for j in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][j].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][j].is_zero() {
                let f = &a[i][j] / &a[r][j];
                for k in j..cols {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank_mod(m: &Mat, p: i128) -> usize {
    if p == 0 {
        return rank_q(m);
    }
    let mut a: Mat = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let inv = |x: i128| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut r = 0;
    for j in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][j] != 0) else { continue };
        a.swap(r, piv);
        let iv = inv(a[r][j]);
        for i in 0..rows {
            if i != r && a[i][j] != 0 {
                let f = a[i][j] * iv % p;
                for k in j..cols {
                    a[i][k] = (a[i][k] - f * a[r][k]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// `H(C ⊗ Z)` by dense Smith forms: `t ↦ (rank, torsion > 1)`, zero groups omitted.
pub fn integer_homology(c: &GradedComplex) -> BTreeMap<i32, (usize, Vec<i128>)> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = c.tdeg_range() else { return out };
    for t in lo..=hi {
        let here = in_degree(c, t);
        let d_out = snf(block(c, &here, &in_degree(c, t + 1)));
        let d_in = snf(block(c, &in_degree(c, t - 1), &here));
        let rank = here.len() - d_out.len() - d_in.len();
        let torsion: Vec<i128> = d_in.into_iter().filter(|&v| v > 1).collect();
        if rank > 0 || !torsion.is_empty() {
            out.insert(t, (rank, torsion));
        }
    }
    out
}

/// `dim H_t(C ⊗ F[G]/(G^k))` over `F_p` (`p = 0`: Q), nonzero degrees only.
pub fn truncated_dims(c: &GradedComplex, p: i128, k: u32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = c.tdeg_range() else { return out };
    // basis of degree t: (generator, e) with e < k
    let basis = |t: i32| -> Vec<(usize, u32)> {
        in_degree(c, t).into_iter().flat_map(|i| (0..k).map(move |e| (i, e))).collect()
    };
    let mat = |src: &[(usize, u32)], dst: &[(usize, u32)]| -> Mat {
        let mut m = vec![vec![0i128; src.len()]; dst.len()];
        for (j, &(x, e)) in src.iter().enumerate() {
            for (i, &(y, f)) in dst.iter().enumerate() {
                if let Some(v) = c.entry(x, y) {
                    if e + v.gpow() == f {
                        m[i][j] = to_i128(v.scalar());
                    }
                }
            }
        }
        m
    };
    for t in lo..=hi {
        let (prev, here, next) = (basis(t - 1), basis(t), basis(t + 1));
        let dim = here.len() - rank_mod(&mat(&here, &next), p) - rank_mod(&mat(&prev, &here), p);
        if dim > 0 {
            out.insert(t, dim);
        }
    }
    out
}

/// Bigraded `dim H(C|_{G=0} ⊗ F)`: `(t, q) ↦ dim`.
pub fn bigraded_at_zero(c: &GradedComplex, p: i128) -> BTreeMap<(i32, i32), usize> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = c.tdeg_range() else { return out };
    let at = |t: i32, q: i32| -> Vec<usize> {
        (0..c.len()).filter(|&i| c.generator(i).tdeg == t && c.generator(i).qdeg == q).collect()
    };
    let mat = |src: &[usize], dst: &[usize]| -> Mat {
        let mut m = vec![vec![0i128; src.len()]; dst.len()];
        for (j, &x) in src.iter().enumerate() {
            for (i, &y) in dst.iter().enumerate() {
                if let Some(v) = c.entry(x, y) {
                    if v.gpow() == 0 {
                        m[i][j] = to_i128(v.scalar());
                    }
                }
            }
        }
        m
    };
    let (qlo, qhi) = c.qdeg_range().unwrap();
    for t in lo..=hi {
        for q in qlo..=qhi {
            let here = at(t, q);
            if here.is_empty() {
                continue;
            }
            let dim = here.len() - rank_mod(&mat(&here, &at(t + 1, q)), p) - rank_mod(&mat(&at(t - 1, q), &here), p);
            if dim > 0 {
                out.insert((t, q), dim);
            }
        }
    }
    out
}

/// Every vector of `len` integers in `[-r, r]`.
pub fn boxed(len: usize, r: i128) -> impl Iterator<Item = Vec<i128>> {
    let side = (2 * r + 1) as u64;
    let total = side.pow(len as u32);
    (0..total).map(move |mut n| {
        (0..len)
            .map(|_| {
                let d = (n % side) as i128 - r;
                n /= side;
                d
            })
            .collect()
    })
}

fn mat_vec(m: &Mat, v: &[i128]) -> Vec<i128> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// The tuple `(k_0, k_1, …)` by enumerating the filtered cycles in a box;
/// `None` if the box cannot be certified to span the cycle lattice.
pub fn sz_oracle(c: &GradedComplex) -> Option<(i32, Vec<i128>)> {
    let g0 = in_degree(c, 0);
    let n0 = g0.len();
    let d0 = block(c, &g0, &in_degree(c, 1));
    let b0 = block(c, &in_degree(c, -1), &g0);
    let b0_cols: Vec<Vec<i128>> =
        (0..b0.first().map_or(0, Vec::len)).map(|j| b0.iter().map(|r| r[j]).collect()).collect();
    let cycle_rank = n0 - rank_q(&d0);
    let (qlo, qhi) = c.qdeg_range()?;
    let mut m: BTreeMap<i32, i128> = BTreeMap::new();
    let mut k = qhi + qhi.rem_euclid(2) + 2;
    while k >= qlo - 2 {
        let cols: Vec<usize> = (0..n0).filter(|&i| c.generator(g0[i]).qdeg >= k).collect();
        let r = match cols.len() {
            0..=4 => 4,
            5 => 3,
            6..=7 => 2,
            8 => 1,
            _ => return None,
        };
        let sub: Mat = d0.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect();
        let nullity = cols.len() - rank_q(&sub);
        let lat: Vec<Vec<i128>> = boxed(cols.len(), r)
            .filter(|v| v.iter().any(|&x| x != 0) && mat_vec(&sub, v).iter().all(|&x| x == 0))
            .map(|v| {
                let mut full = vec![0i128; n0];
                for (&j, x) in cols.iter().zip(v) {
                    full[j] = x;
                }
                full
            })
            .collect();
        let as_cols = |vs: &[Vec<i128>]| -> Mat { (0..n0).map(|i| vs.iter().map(|v| v[i]).collect()).collect() };
        if nullity > 0 {
            let lm = as_cols(&lat);
            if rank_q(&lm) != nullity || snf(lm).iter().any(|&d| d != 1) {
                return None;
            }
        }
        let mut gens = b0_cols.clone();
        gens.extend(lat);
        let inv = snf(as_cols(&gens));
        let idx = if inv.len() < cycle_rank { 0 } else { inv.iter().product() };
        m.insert(k, idx);
        k -= 2;
    }
    let (&k0, _) = m.iter().rev().find(|(_, &v)| v != 0)?;
    let at = |k: i32| *m.range(..=k).next_back().map(|(_, v)| v).unwrap_or(&1);
    let mut ks = Vec::new();
    let mut k = k0;
    while at(k) != 1 {
        ks.push(at(k) / at(k - 2));
        k -= 2;
    }
    Some((k0, ks))
}

/// Unknowns of a homogeneous degree-`deg` map: `(x, y, G-power)`.
pub fn map_unknowns(src: &GradedComplex, tgt: &GradedComplex, deg: i32) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for (i, x) in src.generators().iter().enumerate() {
        for (j, y) in tgt.generators().iter().enumerate() {
            let gap = y.qdeg - x.qdeg - deg;
            if x.tdeg == y.tdeg && gap >= 0 && gap % 2 == 0 {
                out.push((i, j, (gap / 2) as u32));
            }
        }
    }
    out
}

/// Whether `f` (values on `unknowns`) commutes with the differentials.
pub fn is_chain_map(src: &GradedComplex, tgt: &GradedComplex, unknowns: &[(usize, usize, u32)], f: &[i128]) -> bool {
    let mut fm: BTreeMap<(usize, usize), i128> = BTreeMap::new();
    for (&(x, y, _), &v) in unknowns.iter().zip(f) {
        if v != 0 {
            fm.insert((x, y), v);
        }
    }
    let mut diff: BTreeMap<(usize, usize), i128> = BTreeMap::new();
    for (&(x, y), &v) in &fm {
        for (w, e) in tgt.outgoing(y) {
            *diff.entry((x, w)).or_default() += v * to_i128(&e.at_one());
        }
    }
    for (x, z, e) in src.entries() {
        for (&(zz, w), &v) in fm.range((z, 0)..(z + 1, 0)) {
            debug_assert_eq!(zz, z);
            *diff.entry((x, w)).or_default() -= to_i128(&e.at_one()) * v;
        }
    }
    diff.values().all(|&v| v == 0)
}

pub fn bigint_vec(v: &[BigInt]) -> Vec<i128> {
    v.iter().map(to_i128).collect()
}

pub fn is_one_abs(v: &BigInt) -> bool {
    v.abs().is_one()
}

/// Diagrams of at most eight crossings: `(label, code, expected s₀ if known)`.
/// Positive braids get `s = c − n + 1` (n strands), mirrors the negative.
pub const CORPUS: &[(&str, &str, Option<i32>)] = &[
    ("trefoil PD", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", Some(2)),
    ("figure-eight PD", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]", Some(0)),
    ("trefoil, stabilized", "BR[3; 1,1,1,2]", Some(2)),
    ("left trefoil", "BR[2; -1,-1,-1]", Some(-2)),
    ("figure-eight braid", "BR[3; 1,-2,1,-2]", Some(0)),
    ("T(2,5)", "BR[2; 1,1,1,1,1]", Some(4)),
    ("T(2,7)", "BR[2; 1,1,1,1,1,1,1]", Some(6)),
    ("T(3,4)", "BR[3; 1,2,1,2,1,2,1,2]", Some(6)),
    ("positive 3-braid 111212", "BR[3; 1,1,1,2,1,2]", Some(4)),
    ("3-braid 111-21-2", "BR[3; 1,1,1,-2,1,-2]", None),
    ("3-braid 11-21-2-2", "BR[3; 1,1,-2,1,-2,-2]", None),
    ("4-braid 112-1-32-3", "BR[4; 1,1,2,-1,-3,2,-3]", None),
    ("3-braid 1112-12", "BR[3; 1,1,1,2,-1,2]", None),
    ("3-braid 111-2-1-1-1-2", "BR[3; 1,1,1,-2,-1,-1,-1,-2]", None),
];
