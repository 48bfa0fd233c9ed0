//! Cube of resolutions.
//!
//! Vertex `v ∈ {0,1}^n` is a bitmask; bit `c` set means crossing `c` gets
//! the 1-smoothing `(i,j)(k,l)`, otherwise the 0-smoothing `(i,l)(j,k)`.
//! A generator labels every non-basepoint circle with `1` or `X` and
//! carries id `v<bits>:<labels>`, circles listed by smallest arc.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Generator, GradedComplex};
use crate::error::{Error, Result};
use crate::ring::GElem;
use crate::simplify::Work;

use super::frobenius::{FrobeniusData, Label};
use super::pd::PDCode;

pub const DEFAULT_MAX_CROSSINGS: usize = 12;

/// The crossing cap: `KHZ_MAX_CROSSINGS` if set, else 12.
pub fn max_crossings() -> usize {
    std::env::var("KHZ_MAX_CROSSINGS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CROSSINGS)
}

struct Resolution {
    circle_of: Vec<usize>,
    /// circle → position among the non-basepoint circles
    slot: Vec<Option<usize>>,
    /// smallest arc of every non-basepoint circle, by slot
    reps: Vec<usize>,
}

impl Resolution {
    fn free(&self) -> usize {
        self.reps.len()
    }

    fn slot_of_arc(&self, a: usize) -> Option<usize> {
        self.slot[self.circle_of[a]]
    }
}

struct Cube {
    n: usize,
    crossings: Vec<[usize; 4]>,
    narcs: usize,
    bp: usize,
    nneg: usize,
    npos: usize,
}

impl Cube {
    fn new(pd: &PDCode) -> Self {
        let arcs = pd.arcs();
        let idx: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let crossings = pd.crossings.iter().map(|x| x.map(|a| idx[&a])).collect();
        let (npos, nneg) = pd.sign_counts();
        Cube {
            n: pd.len(),
            crossings,
            narcs: arcs.len(),
            bp: idx.get(&pd.basepoint).copied().unwrap_or(0),
            npos,
            nneg,
        }
    }

    fn resolve(&self, v: u64) -> Resolution {
        if self.n == 0 {
            return Resolution { circle_of: vec![], slot: vec![None], reps: vec![] };
        }
        let mut uf: Vec<usize> = (0..self.narcs).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (c, &[i, j, k, l]) in self.crossings.iter().enumerate() {
            let pairs = if v >> c & 1 == 0 { [(i, l), (j, k)] } else { [(i, j), (k, l)] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf[ra] = rb;
            }
        }
        let mut circle_of = vec![usize::MAX; self.narcs];
        let mut root_circle: HashMap<usize, usize> = HashMap::new();
        let mut first_arc = Vec::new();
        for a in 0..self.narcs {
            let r = find(&mut uf, a);
            let next = root_circle.len();
            let c = *root_circle.entry(r).or_insert(next);
            if c == first_arc.len() {
                first_arc.push(a);
            }
            circle_of[a] = c;
        }
        let bpc = circle_of[self.bp];
        let mut slot = vec![None; first_arc.len()];
        let mut reps = Vec::new();
        for (c, &a) in first_arc.iter().enumerate() {
            if c != bpc {
                slot[c] = Some(reps.len());
                reps.push(a);
            }
        }
        Resolution { circle_of, slot, reps }
    }

    fn generator(&self, v: u64, labels: u64, res: &Resolution) -> Generator {
        let weight = v.count_ones() as i32;
        let xs = labels.count_ones() as i32;
        let free = res.free() as i32;
        let mut id = String::with_capacity(self.n + res.free() + 2);
        id.push('v');
        id.extend((0..self.n).map(|c| if v >> c & 1 == 1 { '1' } else { '0' }));
        id.push(':');
        id.extend((0..res.free()).map(|s| if labels >> s & 1 == 1 { 'X' } else { '1' }));
        Generator {
            id: id.into(),
            tdeg: weight - self.nneg as i32,
            qdeg: (free - 2 * xs) + weight + self.npos as i32 - 2 * self.nneg as i32,
        }
    }

    /// Image of `(v, labels)` under the edge map flipping crossing `c`.
    fn edge(&self, v: u64, labels: u64, c: usize, res: &Resolution, res2: &Resolution) -> Vec<(u64, GElem)> {
        let [i, j, k, _] = self.crossings[c];
        let (ca, cb) = (res.circle_of[i], res.circle_of[j]);
        let label = |s: Option<usize>| s.map(|s| if labels >> s & 1 == 1 { Label::X } else { Label::One });
        let mut base = 0u64;
        for (s, &rep) in res.reps.iter().enumerate() {
            let circle = res.circle_of[rep];
            if circle != ca && circle != cb && labels >> s & 1 == 1 {
                base |= 1 << res2.slot_of_arc(rep).expect("untouched circles stay free");
            }
        }
        let bit = |a: usize| -> u64 { res2.slot_of_arc(a).map_or(0, |s| 1 << s) };
        let sign = if (v & ((1u64 << c) - 1)).count_ones() % 2 == 0 { GElem::one() } else { -GElem::one() };
        let mut out = Vec::new();
        let (la, lb) = (label(res.slot[ca]), label(res.slot[cb]));
        if ca != cb {
            match (la, lb) {
                (None, Some(b)) | (Some(b), None) => {
                    if let Some(coef) = FrobeniusData::reduced_m(b) {
                        out.push((base, coef));
                    }
                }
                (Some(a), Some(b)) => {
                    let (l, coef) = FrobeniusData::m(a, b);
                    out.push((base | if l == Label::X { bit(i) } else { 0 }, coef));
                }
                (None, None) => unreachable!("one basepoint circle"),
            }
        } else {
            let (a1, a2) = (i, k);
            match la {
                None => {
                    let newc = if res2.slot_of_arc(a1).is_some() { a1 } else { a2 };
                    for (l, coef) in FrobeniusData::reduced_delta() {
                        out.push((base | if l == Label::X { bit(newc) } else { 0 }, coef));
                    }
                }
                Some(a) => {
                    for (x, y, coef) in FrobeniusData::delta(a) {
                        let mut t = base;
                        if x == Label::X {
                            t |= bit(a1);
                        }
                        if y == Label::X {
                            t |= bit(a2);
                        }
                        out.push((t, coef));
                    }
                }
            }
        }
        out.into_iter().map(|(t, coef)| (t, &coef * &sign)).collect()
    }
}

/// Receives the cube layer by layer.
trait Sink {
    fn add_generator(&mut self, g: Generator) -> usize;
    fn add_entry(&mut self, from: usize, to: usize, v: &GElem);
    fn keeps(&self, i: usize) -> bool;
    fn end_layer(&mut self, t: i32);
}

#[derive(Default)]
struct FullSink {
    gens: Vec<Generator>,
    entries: BTreeMap<(usize, usize), GElem>,
}

impl Sink for FullSink {
    fn add_generator(&mut self, g: Generator) -> usize {
        self.gens.push(g);
        self.gens.len() - 1
    }
    fn add_entry(&mut self, from: usize, to: usize, v: &GElem) {
        self.entries.insert((from, to), v.clone());
    }
    fn keeps(&self, _: usize) -> bool {
        true
    }
    fn end_layer(&mut self, _: i32) {}
}

impl Sink for Work {
    fn add_generator(&mut self, g: Generator) -> usize {
        Work::add_generator(self, g)
    }
    fn add_entry(&mut self, from: usize, to: usize, v: &GElem) {
        self.add_to_entry(from, to, v);
    }
    fn keeps(&self, i: usize) -> bool {
        self.is_alive(i)
    }
    fn end_layer(&mut self, t: i32) {
        self.reduce_layer(t);
    }
}

fn check_cap(pd: &PDCode, cap: usize) -> Result<()> {
    if pd.len() > cap {
        return Err(Error::CrossingCap { crossings: pd.len(), cap });
    }
    Ok(())
}

fn add_layer(
    cube: &Cube,
    layer: &[u64],
    res: &mut HashMap<u64, Resolution>,
    index: &mut HashMap<(u64, u64), usize>,
    sink: &mut impl Sink,
) {
    for &v in layer {
        let rv = cube.resolve(v);
        for labels in 0..(1u64 << rv.free()) {
            let i = sink.add_generator(cube.generator(v, labels, &rv));
            index.insert((v, labels), i);
        }
        res.insert(v, rv);
    }
}

fn assemble(pd: &PDCode, sink: &mut impl Sink) {
    let cube = Cube::new(pd);
    let n = cube.n;
    let mut layers: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for v in 0..(1u64 << n) {
        layers[v.count_ones() as usize].push(v);
    }
    let mut res = HashMap::new();
    let mut index = HashMap::new();
    add_layer(&cube, &layers[0], &mut res, &mut index, sink);
    for r in 0..=n {
        if r < n {
            add_layer(&cube, &layers[r + 1], &mut res, &mut index, sink);
            for &v in &layers[r] {
                let rv = &res[&v];
                for labels in 0..(1u64 << rv.free()) {
                    let from = index[&(v, labels)];
                    if !sink.keeps(from) {
                        continue;
                    }
                    for c in (0..n).filter(|&c| v >> c & 1 == 0) {
                        let v2 = v | 1 << c;
                        for (l2, coef) in cube.edge(v, labels, c, rv, &res[&v2]) {
                            sink.add_entry(from, index[&(v2, l2)], &coef);
                        }
                    }
                }
            }
            for v in &layers[r] {
                res.remove(v);
            }
        }
        sink.end_layer(r as i32 - cube.nneg as i32);
    }
}

/// The full (unreduced) cube complex.
pub fn build_complex(pd: &PDCode) -> Result<GradedComplex> {
    build_complex_with_cap(pd, max_crossings())
}

pub fn build_complex_with_cap(pd: &PDCode, cap: usize) -> Result<GradedComplex> {
    check_cap(pd, cap)?;
    let mut sink = FullSink::default();
    assemble(pd, &mut sink);
    Ok(GradedComplex::from_parts(sink.gens, sink.entries))
}

/// `reduce(build_complex(pd))`, cancelling each layer as soon as its
/// differential is complete so the full cube is never held at once.
pub fn build_reduced(pd: &PDCode) -> Result<GradedComplex> {
    build_reduced_with_cap(pd, max_crossings())
}

pub fn build_reduced_with_cap(pd: &PDCode, cap: usize) -> Result<GradedComplex> {
    check_cap(pd, cap)?;
    let mut work = Work::default();
    assemble(pd, &mut work);
    Ok(work.finish())
}

/// For a positive diagram: every generator in homological degree 0 has
/// quantum degree at least `1 + c − k` (`k` Seifert circles).
pub fn positive_diagram_degree_check(pd: &PDCode) -> Result<bool> {
    if !pd.is_positive() {
        return Err(Error::NotPositive);
    }
    let bound = 1 + pd.len() as i32 - pd.seifert_circles() as i32;
    let cube = Cube::new(pd);
    // with no negative crossings degree 0 is the all-zero vertex
    let r = cube.resolve(0);
    Ok((0..1u64 << r.free()).all(|l| cube.generator(0, l, &r).qdeg >= bound))
}
