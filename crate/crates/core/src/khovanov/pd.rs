//! Planar diagram codes.
//!
//! A crossing `X(i,j,k,l)` lists four arc labels around the crossing,
//! starting at the incoming under-strand; the under-strand runs `i → k`.
//! The crossing is positive when the over-strand enters at `j` (it then
//! leaves at `l`) and negative when it enters at `l`. With this reading
//! `PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]` is the positive (right-handed)
//! trefoil. Arc orientations are recovered by walking the knot.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDCode {
    pub crossings: Vec<[u32; 4]>,
    pub basepoint: u32,
}

/// Orientation data of a valid knot diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// `+1` or `−1` per crossing.
    pub signs: Vec<i8>,
    /// `incoming[c][p]`: the strand enters crossing `c` at position `p`.
    pub incoming: Vec<[bool; 4]>,
}

impl PDCode {
    /// Validates the code: every label twice, one component, consistent
    /// orientation, basepoint on an arc.
    pub fn new(crossings: Vec<[u32; 4]>, basepoint: Option<u32>) -> Result<Self> {
        let basepoint = basepoint
            .or_else(|| crossings.iter().flatten().copied().min())
            .unwrap_or(1);
        let pd = PDCode { crossings, basepoint };
        pd.orientation()?;
        if !pd.crossings.is_empty() && !pd.crossings.iter().flatten().any(|&a| a == basepoint) {
            return Err(Error::InvalidDiagram(format!("basepoint {basepoint} is not an arc")));
        }
        Ok(pd)
    }

    pub fn unknot() -> Self {
        PDCode { crossings: Vec::new(), basepoint: 1 }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn with_basepoint(&self, arc: u32) -> Result<Self> {
        PDCode::new(self.crossings.clone(), Some(arc))
    }

    /// All arc labels, sorted.
    pub fn arcs(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.crossings.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    /// `(crossing, position)` of both occurrences of every arc.
    fn occurrences(&self) -> Result<BTreeMap<u32, Vec<(usize, usize)>>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &a) in x.iter().enumerate() {
                occ.entry(a).or_default().push((c, p));
            }
        }
        for (a, o) in &occ {
            if o.len() != 2 {
                return Err(Error::InvalidDiagram(format!("arc {a} appears {} times", o.len())));
            }
        }
        Ok(occ)
    }

    fn other_end(occ: &BTreeMap<u32, Vec<(usize, usize)>>, arc: u32, here: (usize, usize)) -> (usize, usize) {
        let o = &occ[&arc];
        if o[0] == here {
            o[1]
        } else {
            o[0]
        }
    }

    pub fn orientation(&self) -> Result<Orientation> {
        let occ = self.occurrences()?;
        let n = self.crossings.len();
        let mut incoming = vec![[false; 4]; n];
        let mut seen = vec![[false; 4]; n];
        let mut components = 0;
        let mut first_error = None;
        for c0 in 0..n {
            for p0 in 0..4 {
                if seen[c0][p0] {
                    continue;
                }
                components += 1;
                // walk: enter at (c, p), leave at (c, p + 2)
                let (mut c, mut p) = (c0, p0);
                loop {
                    if seen[c][p] {
                        break;
                    }
                    let q = (p + 2) % 4;
                    seen[c][p] = true;
                    seen[c][q] = true;
                    incoming[c][p] = true;
                    if p == 2 && first_error.is_none() {
                        first_error = Some(c);
                    }
                    let arc = self.crossings[c][q];
                    (c, p) = Self::other_end(&occ, arc, (c, q));
                }
            }
        }
        if components > 1 {
            return Err(Error::NotAKnot(components));
        }
        if let Some(c) = first_error {
            return Err(Error::InvalidDiagram(format!(
                "crossing {} is entered through its outgoing under-arc",
                self.fmt_crossing(c)
            )));
        }
        let signs = incoming.iter().map(|inc| if inc[1] { 1 } else { -1 }).collect();
        Ok(Orientation { signs, incoming })
    }

    fn fmt_crossing(&self, c: usize) -> String {
        let [i, j, k, l] = self.crossings[c];
        format!("X({i},{j},{k},{l})")
    }

    pub fn signs(&self) -> Vec<i8> {
        self.orientation().expect("validated").signs
    }

    /// `(n₊, n₋)`.
    pub fn sign_counts(&self) -> (usize, usize) {
        let s = self.signs();
        let pos = s.iter().filter(|&&x| x > 0).count();
        (pos, s.len() - pos)
    }

    pub fn is_positive(&self) -> bool {
        self.sign_counts().1 == 0
    }

    /// Number of circles in the oriented resolution.
    pub fn seifert_circles(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        let signs = self.signs();
        let arcs = self.arcs();
        let idx: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let mut uf: Vec<usize> = (0..arcs.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (x, s) in self.crossings.iter().zip(signs) {
            // oriented smoothing: (i,l)(j,k) at positive crossings, (i,j)(k,l) at negative
            let pairs = if s > 0 { [(x[0], x[3]), (x[1], x[2])] } else { [(x[0], x[1]), (x[2], x[3])] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut uf, idx[&a]), find(&mut uf, idx[&b]));
                uf[ra] = rb;
            }
        }
        (0..arcs.len()).filter(|&i| find(&mut uf, i) == i).count()
    }

    /// The mirror diagram (every crossing switched).
    pub fn mirror(&self) -> PDCode {
        let o = self.orientation().expect("validated");
        let crossings = self
            .crossings
            .iter()
            .zip(&o.incoming)
            .map(|(&[i, j, k, l], inc)| if inc[1] { [j, k, l, i] } else { [l, i, j, k] })
            .collect();
        PDCode { crossings, basepoint: self.basepoint }
    }

    /// Relabels the arcs `1, 2, …` in the order of a walk that starts on
    /// the basepoint arc.
    pub fn relabel(&self) -> PDCode {
        if self.crossings.is_empty() {
            return PDCode::unknot();
        }
        let occ = self.occurrences().expect("validated");
        let o = self.orientation().expect("validated");
        // start where the basepoint arc enters a crossing
        let start = occ[&self.basepoint]
            .iter()
            .copied()
            .find(|&(c, p)| o.incoming[c][p])
            .expect("every arc has a head");
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let (mut c, mut p) = start;
        loop {
            let arc = self.crossings[c][p];
            if map.contains_key(&arc) {
                break;
            }
            map.insert(arc, map.len() as u32 + 1);
            let q = (p + 2) % 4;
            (c, p) = Self::other_end(&occ, self.crossings[c][q], (c, q));
        }
        let crossings = self.crossings.iter().map(|x| x.map(|a| map[&a])).collect();
        PDCode { crossings, basepoint: 1 }
    }

    /// Connected sum along the basepoint arcs; the result keeps the
    /// basepoint of `self`.
    pub fn connected_sum(&self, other: &PDCode) -> PDCode {
        if other.crossings.is_empty() {
            return self.clone();
        }
        if self.crossings.is_empty() {
            return other.clone();
        }
        let offset = self.crossings.iter().flatten().copied().max().unwrap();
        let b_arc = other.basepoint + offset;
        let shifted: Vec<[u32; 4]> = other.crossings.iter().map(|x| x.map(|a| a + offset)).collect();
        let head = |pd: &PDCode, arc: u32| -> (usize, usize) {
            let o = pd.orientation().expect("validated");
            for (c, x) in pd.crossings.iter().enumerate() {
                for p in 0..4 {
                    if x[p] == arc && o.incoming[c][p] {
                        return (c, p);
                    }
                }
            }
            unreachable!("arc without head")
        };
        let a_arc = self.basepoint;
        let (qa, pa) = head(self, a_arc);
        let (qb, pb) = head(other, other.basepoint);
        let mut crossings = self.crossings.clone();
        crossings[qa][pa] = b_arc;
        let mut rest = shifted;
        rest[qb][pb] = a_arc;
        crossings.extend(rest);
        PDCode { crossings, basepoint: a_arc }
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.crossings.len()).map(|c| self.fmt_crossing(c)).collect();
        write!(f, "PD[{}]", parts.join(","))
    }
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(self.text, self.pos, msg)
    }

    fn ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect_one(&mut self, options: &[&str]) -> Result<()> {
        for o in options {
            if self.eat(o) {
                return Ok(());
            }
        }
        Err(self.err(&format!("expected `{}`", options.join("` or `"))))
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let rest = &self.text[self.pos..];
        let neg = rest.starts_with('-');
        let digits = rest[neg as usize..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        let len = neg as usize + digits;
        let v = rest[..len].parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn end(&mut self) -> Result<()> {
        self.ws();
        if self.pos != self.text.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parses `PD[X(1,4,2,5), …]` (square or round brackets both accepted).
pub fn parse_pd(text: &str) -> Result<PDCode> {
    let mut s = Scanner { text, pos: 0 };
    if !s.eat("PD") {
        return Err(s.err("expected `PD[`"));
    }
    s.expect_one(&["[", "("])?;
    let mut crossings = Vec::new();
    if !(s.eat("]") || s.eat(")")) {
        loop {
            if !s.eat("X") {
                return Err(s.err("expected `X(`"));
            }
            s.expect_one(&["(", "["])?;
            let mut x = [0u32; 4];
            for (p, slot) in x.iter_mut().enumerate() {
                if p > 0 {
                    s.expect_one(&[","])?;
                }
                let at = s.pos;
                let v = s.int()?;
                *slot = u32::try_from(v)
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::parse(text, at, "arc labels are positive integers"))?;
            }
            s.expect_one(&[")", "]"])?;
            crossings.push(x);
            if s.eat(",") {
                continue;
            }
            s.expect_one(&["]", ")"])?;
            break;
        }
    }
    s.end()?;
    PDCode::new(crossings, None)
}

/// Parses `BR[n; w1, w2, …]` (or `BR[n, {w1, …}]`) where `w = ±i` is
/// `σ_i^{±1}`, and returns the PD code of the closure, basepoint on the
/// first strand.
pub fn parse_braid(text: &str) -> Result<PDCode> {
    let mut s = Scanner { text, pos: 0 };
    if !s.eat("BR") {
        return Err(s.err("expected `BR[`"));
    }
    s.expect_one(&["[", "("])?;
    let n_at = s.pos;
    let n = s.int()?;
    if n < 1 {
        return Err(Error::parse(text, n_at, "braid needs at least one strand"));
    }
    let n = n as usize;
    s.expect_one(&[";", ","])?;
    let braced = s.eat("{");
    let mut word = Vec::new();
    let closers: &[&str] = if braced { &["}"] } else { &["]", ")"] };
    if !closers.iter().any(|c| s.eat(c)) {
        loop {
            let at = s.pos;
            let w = s.int()?;
            if w == 0 || w.unsigned_abs() as usize >= n {
                return Err(Error::parse(text, at, "generator index out of range"));
            }
            word.push(w);
            if s.eat(",") {
                continue;
            }
            s.expect_one(closers)?;
            break;
        }
    }
    if braced {
        s.expect_one(&["]", ")"])?;
    }
    s.end()?;
    braid_closure(n, &word)
}

/// PD code of the closure of a braid word on `n` strands.
pub fn braid_closure(n: usize, word: &[i64]) -> Result<PDCode> {
    if word.is_empty() {
        return if n == 1 { Ok(PDCode::unknot()) } else { Err(Error::NotAKnot(n)) };
    }
    let mut next = n as u32 + 1;
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut crossings = Vec::new();
    for &w in word {
        let i = w.unsigned_abs() as usize - 1;
        let (a, b) = (current[i], current[i + 1]);
        let (o1, o2) = (next, next + 1);
        next += 2;
        crossings.push(if w > 0 { [b, a, o1, o2] } else { [a, o1, o2, b] });
        current[i] = o1;
        current[i + 1] = o2;
    }
    // close: the final label at strand p is the initial label p
    let close: BTreeMap<u32, u32> = current.iter().enumerate().map(|(p, &l)| (l, p as u32 + 1)).collect();
    let crossings: Vec<[u32; 4]> =
        crossings.into_iter().map(|x| x.map(|a| close.get(&a).copied().unwrap_or(a))).collect();
    let strands_used: BTreeSet<u32> = crossings.iter().flatten().copied().filter(|&a| a <= n as u32).collect();
    if strands_used.len() != n {
        return Err(Error::NotAKnot(n - strands_used.len() + 1));
    }
    Ok(PDCode::new(crossings, Some(1))?.relabel())
}

/// `PD[…]` or `BR[…]`.
pub fn parse_diagram(text: &str) -> Result<PDCode> {
    let t = text.trim_start();
    if t.starts_with("BR") {
        parse_braid(text)
    } else {
        parse_pd(text)
    }
}
