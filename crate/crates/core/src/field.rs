//! Complexes over `F[G]` for a prime field `F` (or Q) and their graded
//! normal form.
//!
//! Over `F[G]` every homogeneous entry is `λG^c` with `λ` invertible, so an
//! entry of globally minimal `c` divides every entry in its row and column.
//! Clearing both and splitting off the two-generator piece repeats until no
//! entries are left; the untouched generators are the free summands.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::{GenId, Generator, GradedComplex};
use crate::error::{Error, Result};
use crate::intlin::{is_prime, mod_inv, mul_mod};

/// An element of Q or of `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    /// A residue in `0..p`.
    Fp { value: u64, p: u64 },
}

impl FieldElem {
    pub fn from_int(v: &BigInt, characteristic: u64) -> Self {
        if characteristic == 0 {
            FieldElem::Q(BigRational::from_integer(v.clone()))
        } else {
            let r = v.mod_floor(&BigInt::from(characteristic));
            FieldElem::Fp { value: u64::try_from(r).expect("residue fits"), p: characteristic }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp { value, .. } => *value == 0,
        }
    }

    fn add(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { value: a, p }, FieldElem::Fp { value: b, .. }) => {
                FieldElem::Fp { value: (a + b) % p, p: *p }
            }
            _ => unreachable!("mixed characteristics"),
        }
    }

    fn mul(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { value: a, p }, FieldElem::Fp { value: b, .. }) => {
                FieldElem::Fp { value: mul_mod(*a, *b, *p), p: *p }
            }
            _ => unreachable!("mixed characteristics"),
        }
    }

    fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { value, p } => FieldElem::Fp { value: (p - value) % p, p: *p },
        }
    }

    fn inv(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::Fp { value, p } => FieldElem::Fp { value: mod_inv(*value, *p), p: *p },
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => write!(f, "{q}"),
            FieldElem::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// A homogeneous entry `scalar·G^gpow` over `F[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEntry {
    pub scalar: FieldElem,
    pub gpow: u32,
}

/// A bigraded complex over `F[G]`.
#[derive(Clone, Debug)]
pub struct FieldComplex {
    pub characteristic: u64,
    pub generators: Vec<Generator>,
    pub entries: BTreeMap<(usize, usize), FieldEntry>,
}

impl FieldComplex {
    pub fn from_complex(c: &GradedComplex, characteristic: u64) -> Result<Self> {
        check_characteristic(characteristic)?;
        let entries = c
            .entries()
            .filter_map(|(i, j, v)| {
                let s = FieldElem::from_int(v.scalar(), characteristic);
                (!s.is_zero()).then(|| ((i, j), FieldEntry { scalar: s, gpow: v.gpow() }))
            })
            .collect();
        Ok(Self { characteristic, generators: c.generators().to_vec(), entries })
    }
}

pub(crate) fn check_characteristic(c: u64) -> Result<()> {
    if c == 0 || is_prime(c) {
        Ok(())
    } else {
        Err(Error::BadCharacteristic(c))
    }
}

/// One elementary piece `t^a q^b F[G] →G^c→ t^{a+1} q^{b+2c} F[G]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub a: i32,
    pub b: i32,
    pub c: u32,
}

/// The decomposition data over `F[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// Quantum degree of the distinguished rank-one summand; `None` for
    /// the empty complex.
    pub s: Option<i32>,
    /// Pieces with `c ≥ 1`, sorted.
    pub pieces: Vec<Piece>,
    /// Number of cancelled pieces with `c = 0`.
    pub trivial_pieces: usize,
}

struct Elim {
    gens: Vec<Generator>,
    order: Vec<usize>,
    out: Vec<BTreeMap<usize, FieldEntry>>,
    inc: Vec<BTreeMap<usize, FieldEntry>>,
    // (gpow, tdeg of source, id rank of source, id rank of target)
    queue: BTreeSet<(u32, i32, usize, usize)>,
    rank_to_index: Vec<usize>,
}

impl Elim {
    fn new(fc: &FieldComplex) -> Self {
        let n = fc.generators.len();
        let mut by_id: Vec<usize> = (0..n).collect();
        by_id.sort_by(|&i, &j| fc.generators[i].id.cmp(&fc.generators[j].id));
        let mut order = vec![0; n];
        for (r, &i) in by_id.iter().enumerate() {
            order[i] = r;
        }
        let mut e = Elim {
            gens: fc.generators.clone(),
            order,
            out: vec![BTreeMap::new(); n],
            inc: vec![BTreeMap::new(); n],
            queue: BTreeSet::new(),
            rank_to_index: by_id,
        };
        for (&(i, j), v) in &fc.entries {
            e.set(i, j, Some(v.clone()));
        }
        e
    }

    fn key(&self, i: usize, j: usize, gpow: u32) -> (u32, i32, usize, usize) {
        (gpow, self.gens[i].tdeg, self.order[i], self.order[j])
    }

    fn set(&mut self, i: usize, j: usize, v: Option<FieldEntry>) {
        if let Some(old) = self.out[i].remove(&j) {
            self.inc[j].remove(&i);
            let k = self.key(i, j, old.gpow);
            self.queue.remove(&k);
        }
        if let Some(v) = v.filter(|v| !v.scalar.is_zero()) {
            let k = self.key(i, j, v.gpow);
            self.queue.insert(k);
            self.inc[j].insert(i, v.clone());
            self.out[i].insert(j, v);
        }
    }

    fn add(&mut self, i: usize, j: usize, v: FieldEntry) {
        let new = match self.out[i].get(&j) {
            Some(old) => {
                assert_eq!(old.gpow, v.gpow, "inhomogeneous entry over F[G]");
                FieldEntry { scalar: old.scalar.add(&v.scalar), gpow: v.gpow }
            }
            None => v,
        };
        self.set(i, j, Some(new));
    }

    fn mul(a: &FieldEntry, b: &FieldEntry) -> FieldEntry {
        FieldEntry { scalar: a.scalar.mul(&b.scalar), gpow: a.gpow + b.gpow }
    }

    /// Clears the column and row of the pivot `x → y` and detaches both.
    fn split(&mut self, x: usize, y: usize) {
        let piv = self.out[x][&y].clone();
        let inv = piv.scalar.inv();
        // other sources z → y:  z' = z − (μ/λ) G^{c'−c} x
        let sources: Vec<(usize, FieldEntry)> =
            self.inc[y].iter().filter(|(&z, _)| z != x).map(|(&z, v)| (z, v.clone())).collect();
        for (z, mu) in sources {
            let alpha = FieldEntry { scalar: mu.scalar.mul(&inv), gpow: mu.gpow - piv.gpow };
            let out_x: Vec<(usize, FieldEntry)> =
                self.out[x].iter().map(|(&w, v)| (w, v.clone())).collect();
            for (w, v) in out_x {
                let mut t = Self::mul(&alpha, &v);
                t.scalar = t.scalar.neg();
                self.add(z, w, t);
            }
            let inc_z: Vec<(usize, FieldEntry)> =
                self.inc[z].iter().map(|(&u, v)| (u, v.clone())).collect();
            for (u, v) in inc_z {
                self.add(u, x, Self::mul(&alpha, &v));
            }
        }
        // other targets x → w:  y' = y + (ν/λ) G^{c''−c} w
        let targets: Vec<(usize, FieldEntry)> =
            self.out[x].iter().filter(|(&w, _)| w != y).map(|(&w, v)| (w, v.clone())).collect();
        for (w, nu) in targets {
            let beta = FieldEntry { scalar: nu.scalar.mul(&inv), gpow: nu.gpow - piv.gpow };
            let out_w: Vec<(usize, FieldEntry)> =
                self.out[w].iter().map(|(&v2, e)| (v2, e.clone())).collect();
            for (v2, e) in out_w {
                self.add(y, v2, Self::mul(&beta, &e));
            }
            let inc_y: Vec<(usize, FieldEntry)> =
                self.inc[y].iter().map(|(&u, e)| (u, e.clone())).collect();
            for (u, e) in inc_y {
                let mut t = Self::mul(&beta, &e);
                t.scalar = t.scalar.neg();
                self.add(u, w, t);
            }
        }
        debug_assert!(self.inc[x].is_empty(), "d² ≠ 0: entries into the pivot source");
        debug_assert!(self.out[y].is_empty(), "d² ≠ 0: entries out of the pivot target");
        debug_assert_eq!(self.out[x].len(), 1);
        debug_assert_eq!(self.inc[y].len(), 1);
        for g in [x, y] {
            let outs: Vec<usize> = self.out[g].keys().copied().collect();
            for w in outs {
                self.set(g, w, None);
            }
            let incs: Vec<usize> = self.inc[g].keys().copied().collect();
            for u in incs {
                self.set(u, g, None);
            }
        }
    }
}

/// Graded elimination over `F[G]` with `char F = characteristic`.
///
/// Pivots are chosen by `(gpow, tdeg, source id, target id)`. The
/// returned [`FieldComplex`] is the normal form itself: one entry
/// `G^c` per piece and no entries on the free summands.
pub fn field_normal_form(c: &GradedComplex, characteristic: u64) -> Result<(FieldComplex, NormalForm)> {
    let fc = FieldComplex::from_complex(c, characteristic)?;
    let mut e = Elim::new(&fc);
    let mut touched = vec![false; fc.generators.len()];
    let mut pieces = Vec::new();
    let mut trivial = 0;
    let mut nf_entries = BTreeMap::new();
    while let Some(&(gpow, _, ri, rj)) = e.queue.first() {
        let (x, y) = (e.rank_to_index[ri], e.rank_to_index[rj]);
        e.split(x, y);
        touched[x] = true;
        touched[y] = true;
        let one = FieldElem::from_int(&BigInt::one(), characteristic);
        nf_entries.insert((x, y), FieldEntry { scalar: one, gpow });
        if gpow == 0 {
            trivial += 1;
        } else {
            let g = &fc.generators[x];
            pieces.push(Piece { a: g.tdeg, b: g.qdeg, c: gpow });
        }
    }
    pieces.sort();
    let free: Vec<&Generator> =
        (0..fc.generators.len()).filter(|&i| !touched[i]).map(|i| &fc.generators[i]).collect();
    let s = match free.as_slice() {
        [] if fc.generators.is_empty() => None,
        [g] if g.tdeg == 0 => Some(g.qdeg),
        _ => {
            let desc: Vec<String> =
                free.iter().map(|g| format!("{} (t {}, q {})", g.id, g.tdeg, g.qdeg)).collect();
            return Err(Error::NotKnotLike(format!(
                "over characteristic {characteristic}: free summands [{}]",
                desc.join(", ")
            )));
        }
    };
    let out = FieldComplex { characteristic, generators: fc.generators.clone(), entries: nf_entries };
    Ok((out, NormalForm { s, pieces, trivial_pieces: trivial }))
}

/// Ids of the generators of a [`FieldComplex`], for reporting.
pub fn generator_ids(fc: &FieldComplex) -> Vec<GenId> {
    fc.generators.iter().map(|g| g.id.clone()).collect()
}
