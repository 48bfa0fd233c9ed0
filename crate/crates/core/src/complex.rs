//! Bigraded free chain complexes over Z[G].
//!
//! A [`GradedComplex`] is a finite list of generators, each a shifted copy
//! `t^i q^j Z[G]`, together with a sparse homogeneous differential of
//! tq-degree `(1, 0)`. An entry `m·G^c` from a generator of quantum degree
//! `a` to one of degree `b` is homogeneous exactly when `b − a − 2c = 0`.
//!
//! Complexes are immutable; [`ComplexBuilder`] assembles new ones. Indices
//! into [`GradedComplex::generators`] are positional and only valid for the
//! complex they came from. Identity across operations is carried by
//! [`GenId`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{GElem, LaurentBiPoly};

/// Opaque generator identifier, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId(Arc<str>);

impl GenId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for GenId {
    fn from(s: &str) -> Self {
        GenId(Arc::from(s))
    }
}

impl From<String> for GenId {
    fn from(s: String) -> Self {
        GenId(Arc::from(s))
    }
}

impl From<&GenId> for GenId {
    fn from(s: &GenId) -> Self {
        s.clone()
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub id: GenId,
    pub tdeg: i32,
    pub qdeg: i32,
}

/// The power of `G` forced on an entry from quantum degree `from_q` to
/// `to_q` for a map of quantum degree `map_q`, if it is a valid exponent.
pub fn forced_gpow(from_q: i32, to_q: i32, map_q: i32) -> Option<u32> {
    let gap = to_q as i64 - from_q as i64 - map_q as i64;
    if gap < 0 || gap % 2 != 0 {
        None
    } else {
        Some((gap / 2) as u32)
    }
}

/// A broken invariant reported by [`GradedComplex::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    OddQuantumDegree { gen: GenId, qdeg: i32 },
    HomologicalStep { from: GenId, to: GenId },
    ZeroEntry { from: GenId, to: GenId },
    /// The degree gap `b − a` is odd or negative, so no power of `G` fits.
    NoHomogeneousPower { from: GenId, to: GenId },
    GPowerMismatch { from: GenId, to: GenId, stored: u32, expected: u32 },
    DSquaredNonzero { from: GenId, to: GenId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            OddQuantumDegree { gen, qdeg } => {
                write!(f, "generator {gen}: odd quantum degree {qdeg}")
            }
            HomologicalStep { from, to } => {
                write!(f, "entry {from} -> {to}: does not raise tdeg by one")
            }
            ZeroEntry { from, to } => write!(f, "entry {from} -> {to}: stored zero"),
            NoHomogeneousPower { from, to } => {
                write!(f, "entry {from} -> {to}: homogeneity violation, no valid power of G")
            }
            GPowerMismatch { from, to, stored, expected } => write!(
                f,
                "entry {from} -> {to}: homogeneity violation, c must be {expected} (stored {stored})"
            ),
            DSquaredNonzero { from, to } => write!(f, "d∘d nonzero from {from} to {to}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GradedComplex {
    gens: Vec<Generator>,
    lookup: HashMap<GenId, usize>,
    entries: BTreeMap<(usize, usize), GElem>,
}

impl GradedComplex {
    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The rank-one complex `t^0 q^0 Z[G]`.
    pub fn unit() -> Self {
        Self::rank_one(0, 0)
    }

    /// The rank-one complex `t^t q^q Z[G]`.
    pub fn rank_one(t: i32, q: i32) -> Self {
        let mut b = Self::builder();
        b.generator("1", t, q).expect("fresh builder");
        b.build()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn index_of(&self, id: &GenId) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.lookup.get(&GenId::from(id)).copied()
    }

    /// Total rank.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Entries as `(source index, target index, value)`, sorted by indices.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GElem)> + '_ {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<&GElem> {
        self.entries.get(&(from, to))
    }

    pub fn entry_by_id(&self, from: &str, to: &str) -> Option<&GElem> {
        let (i, j) = (self.find(from)?, self.find(to)?);
        self.entry(i, j)
    }

    pub fn outgoing(&self, from: usize) -> impl Iterator<Item = (usize, &GElem)> + '_ {
        self.entries.range((from, 0)..=(from, usize::MAX)).map(|(&(_, j), v)| (j, v))
    }

    /// Generator indices in homological degree `t`, in storage order.
    pub fn in_degree(&self, t: i32) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.gens[i].tdeg == t).collect()
    }

    pub fn tdeg_range(&self) -> Option<(i32, i32)> {
        let min = self.gens.iter().map(|g| g.tdeg).min()?;
        let max = self.gens.iter().map(|g| g.tdeg).max()?;
        Some((min, max))
    }

    pub fn qdeg_range(&self) -> Option<(i32, i32)> {
        let min = self.gens.iter().map(|g| g.qdeg).min()?;
        let max = self.gens.iter().map(|g| g.qdeg).max()?;
        Some((min, max))
    }

    /// Checks admissibility: even quantum degrees, entries of tdeg `+1`,
    /// homogeneity with the stored power of `G`, and `d∘d = 0`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for g in &self.gens {
            if g.qdeg % 2 != 0 {
                out.push(Violation::OddQuantumDegree { gen: g.id.clone(), qdeg: g.qdeg });
            }
        }
        for (&(i, j), v) in &self.entries {
            let (x, y) = (&self.gens[i], &self.gens[j]);
            let (from, to) = (x.id.clone(), y.id.clone());
            if v.is_zero() {
                out.push(Violation::ZeroEntry { from, to });
                continue;
            }
            if y.tdeg != x.tdeg + 1 {
                out.push(Violation::HomologicalStep { from: from.clone(), to: to.clone() });
            }
            match forced_gpow(x.qdeg, y.qdeg, 0) {
                None => out.push(Violation::NoHomogeneousPower { from, to }),
                Some(c) if c != v.gpow() => out.push(Violation::GPowerMismatch {
                    from,
                    to,
                    stored: v.gpow(),
                    expected: c,
                }),
                _ => {}
            }
        }
        // d∘d, keeping powers of G apart so that inhomogeneous input is still
        // judged as a polynomial identity.
        for i in 0..self.gens.len() {
            let mut acc: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
            for (j, a) in self.outgoing(i) {
                for (k, b) in self.outgoing(j) {
                    *acc.entry((k, a.gpow() + b.gpow())).or_insert_with(BigInt::zero) +=
                        a.scalar() * b.scalar();
                }
            }
            let bad: BTreeSet<usize> =
                acc.into_iter().filter(|(_, s)| !s.is_zero()).map(|((k, _), _)| k).collect();
            for k in bad {
                out.push(Violation::DSquaredNonzero {
                    from: self.gens[i].id.clone(),
                    to: self.gens[k].id.clone(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Sum of `t^tdeg q^qdeg` over all generators.
    pub fn graded_rank(&self) -> LaurentBiPoly {
        let mut p = LaurentBiPoly::zero();
        for g in &self.gens {
            p.add_term(g.tdeg, g.qdeg, 1);
        }
        p
    }

    /// Alternating count of generators by homological degree.
    pub fn euler_char(&self) -> i64 {
        self.gens.iter().map(|g| if g.tdeg.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }

    /// `t^dt q^dq C`. The quantum shift must be even.
    pub fn shift(&self, dt: i32, dq: i32) -> Result<GradedComplex> {
        if dq % 2 != 0 {
            return Err(Error::OddShift(dq));
        }
        let mut c = self.clone();
        for g in &mut c.gens {
            g.tdeg += dt;
            g.qdeg += dq;
        }
        Ok(c)
    }

    /// The dual complex: degrees negated, differential transposed.
    pub fn dual(&self) -> GradedComplex {
        let gens: Vec<Generator> = self
            .gens
            .iter()
            .map(|g| Generator {
                id: GenId::from(format!("{}*", g.id)),
                tdeg: -g.tdeg,
                qdeg: -g.qdeg,
            })
            .collect();
        let entries = self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect();
        Self::from_parts(gens, entries)
    }

    /// Disjoint union. Ids are kept when the two sides do not clash and
    /// prefixed with `a:` / `b:` otherwise.
    pub fn direct_sum(&self, other: &GradedComplex) -> GradedComplex {
        let clash = other.gens.iter().any(|g| self.lookup.contains_key(&g.id));
        let rename = |g: &Generator, p: &str| Generator {
            id: if clash { GenId::from(format!("{p}:{}", g.id)) } else { g.id.clone() },
            tdeg: g.tdeg,
            qdeg: g.qdeg,
        };
        let n = self.gens.len();
        let gens = self
            .gens
            .iter()
            .map(|g| rename(g, "a"))
            .chain(other.gens.iter().map(|g| rename(g, "b")))
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|(&k, v)| (k, v.clone()))
            .chain(other.entries.iter().map(|(&(i, j), v)| ((i + n, j + n), v.clone())))
            .collect();
        Self::from_parts(gens, entries)
    }

    /// Tensor product with the Koszul sign rule
    /// `d(x⊗y) = dx⊗y + (−1)^{tdeg x} x⊗dy`. Generator `x⊗y` sits at
    /// index `i·|other| + j`.
    pub fn tensor(&self, other: &GradedComplex) -> GradedComplex {
        let m = other.gens.len();
        let mut names: Vec<String> = Vec::with_capacity(self.gens.len() * m);
        for x in &self.gens {
            for y in &other.gens {
                names.push(format!("{}⊗{}", x.id, y.id));
            }
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            names.clear();
            for x in &self.gens {
                for y in &other.gens {
                    names.push(format!("({})⊗({})", x.id, y.id));
                }
            }
        }
        let mut gens = Vec::with_capacity(names.len());
        let mut names = names.into_iter();
        for x in &self.gens {
            for y in &other.gens {
                gens.push(Generator {
                    id: GenId::from(names.next().unwrap()),
                    tdeg: x.tdeg + y.tdeg,
                    qdeg: x.qdeg + y.qdeg,
                });
            }
        }
        let mut entries = BTreeMap::new();
        for (&(i, i2), v) in &self.entries {
            for j in 0..m {
                entries.insert((i * m + j, i2 * m + j), v.clone());
            }
        }
        for (i, x) in self.gens.iter().enumerate() {
            let sign_neg = x.tdeg.rem_euclid(2) == 1;
            for (&(j, j2), v) in &other.entries {
                let v = if sign_neg { -v } else { v.clone() };
                entries.insert((i * m + j, i * m + j2), v);
            }
        }
        Self::from_parts(gens, entries)
    }

    /// Homogeneous change of basis inside one chain module:
    /// `e_target ↦ e_target + scalar·G^c e_source` with `c` forced by the
    /// gradings. The two generators must share their homological degree and
    /// `qdeg(source) ≥ qdeg(target)`.
    pub fn with_basis_change(
        &self,
        target: usize,
        source: usize,
        scalar: impl Into<BigInt>,
    ) -> Result<GradedComplex> {
        let (t, s) = (&self.gens[target], &self.gens[source]);
        let c = match forced_gpow(t.qdeg, s.qdeg, 0) {
            Some(c) if t.tdeg == s.tdeg && target != source => c,
            _ => {
                return Err(Error::Inhomogeneous {
                    from: t.id.to_string(),
                    to: s.id.to_string(),
                    reason: "basis change between these generators is not homogeneous".into(),
                })
            }
        };
        let alpha = GElem::new(scalar.into(), c);
        let mut entries = self.entries.clone();
        // d(e'_t) = d(e_t) + α d(e_s)
        for (w, v) in self.outgoing(source) {
            add_into(&mut entries, (target, w), &(&alpha * v));
        }
        // coordinates: coefficient on e_s loses α times the one on e_t
        let incoming: Vec<(usize, GElem)> = self
            .entries
            .iter()
            .filter(|(&(_, j), _)| j == target)
            .map(|(&(u, _), v)| (u, v.clone()))
            .collect();
        for (u, v) in incoming {
            add_into(&mut entries, (u, source), &-(&alpha * &v));
        }
        Ok(Self::from_parts(self.gens.clone(), entries))
    }

    /// Restriction to a set of generator indices (entries between kept
    /// generators survive).
    pub fn restrict(&self, keep: &[usize]) -> GradedComplex {
        let mut pos = vec![usize::MAX; self.gens.len()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let gens = keep.iter().map(|&i| self.gens[i].clone()).collect();
        let entries = self
            .entries
            .iter()
            .filter(|(&(i, j), _)| pos[i] != usize::MAX && pos[j] != usize::MAX)
            .map(|(&(i, j), v)| ((pos[i], pos[j]), v.clone()))
            .collect();
        Self::from_parts(gens, entries)
    }

    /// Equality of labelled complexes: same generators with the same degrees
    /// and the same entries, regardless of storage order.
    pub fn same_as(&self, other: &GradedComplex) -> bool {
        if self.gens.len() != other.gens.len() || self.entries.len() != other.entries.len() {
            return false;
        }
        let mut map = vec![0usize; self.gens.len()];
        for (i, g) in self.gens.iter().enumerate() {
            match other.index_of(&g.id) {
                Some(j) if other.gens[j] == *g => map[i] = j,
                _ => return false,
            }
        }
        self.entries.iter().all(|(&(i, j), v)| other.entry(map[i], map[j]) == Some(v))
    }

    /// A table of generator counts by `(t, q)`, rows by descending `q`.
    pub fn grid(&self) -> String {
        let rank = self.graded_rank();
        let Some((tmin, tmax)) = self.tdeg_range() else {
            return "(empty complex)\n".to_string();
        };
        let (qmin, qmax) = self.qdeg_range().unwrap();
        let mut s = format!("{:>6} |", "q\\t");
        for t in tmin..=tmax {
            s += &format!("{t:>5}");
        }
        s.push('\n');
        s += &format!("{:-<1$}\n", "", 8 + 5 * (tmax - tmin + 1) as usize);
        let mut q = qmax;
        while q >= qmin {
            s += &format!("{q:>6} |");
            for t in tmin..=tmax {
                match rank.coeff(t, q) {
                    0 => s += &format!("{:>5}", "."),
                    c => s += &format!("{c:>5}"),
                }
            }
            s.push('\n');
            q -= 1;
        }
        s
    }

    pub(crate) fn from_parts(gens: Vec<Generator>, entries: BTreeMap<(usize, usize), GElem>) -> Self {
        let lookup = gens.iter().enumerate().map(|(i, g)| (g.id.clone(), i)).collect();
        Self { gens, lookup, entries }
    }
}

fn add_into(entries: &mut BTreeMap<(usize, usize), GElem>, key: (usize, usize), v: &GElem) {
    if v.is_zero() {
        return;
    }
    let sum = match entries.get(&key) {
        Some(old) => old + v,
        None => v.clone(),
    };
    if sum.is_zero() {
        entries.remove(&key);
    } else {
        entries.insert(key, sum);
    }
}

impl fmt::Display for GradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gens {
            writeln!(f, "{}: t^{} q^{}", g.id, g.tdeg, g.qdeg)?;
        }
        for (&(i, j), v) in &self.entries {
            writeln!(f, "{} -> {}: {}", self.gens[i].id, self.gens[j].id, v)?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`GradedComplex`].
#[derive(Default, Debug)]
pub struct ComplexBuilder {
    gens: Vec<Generator>,
    lookup: HashMap<GenId, usize>,
    entries: BTreeMap<(usize, usize), GElem>,
}

impl ComplexBuilder {
    pub fn generator(&mut self, id: impl Into<GenId>, tdeg: i32, qdeg: i32) -> Result<usize> {
        let id = id.into();
        if self.lookup.contains_key(&id) {
            return Err(Error::DuplicateGenerator(id.to_string()));
        }
        let i = self.gens.len();
        self.lookup.insert(id.clone(), i);
        self.gens.push(Generator { id, tdeg, qdeg });
        Ok(i)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.lookup.get(&GenId::from(id)).copied()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Adds `value` to the entry `from -> to` as stored, without any
    /// homogeneity check (see [`GradedComplex::validate`]).
    pub fn entry(&mut self, from: usize, to: usize, value: GElem) -> Result<()> {
        let key = (from, to);
        let sum = match self.entries.get(&key) {
            Some(old) => old.checked_add(&value).ok_or_else(|| Error::Inhomogeneous {
                from: self.gens[from].id.to_string(),
                to: self.gens[to].id.to_string(),
                reason: "summands with different powers of G".into(),
            })?,
            None => value,
        };
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    /// Adds `scalar·G^c` to `from -> to`, with `c` read off the gradings.
    pub fn arrow(&mut self, from: usize, to: usize, scalar: impl Into<BigInt>) -> Result<()> {
        let (x, y) = (&self.gens[from], &self.gens[to]);
        let c = forced_gpow(x.qdeg, y.qdeg, 0).ok_or_else(|| Error::Inhomogeneous {
            from: x.id.to_string(),
            to: y.id.to_string(),
            reason: format!("quantum degrees {} -> {} admit no power of G", x.qdeg, y.qdeg),
        })?;
        self.entry(from, to, GElem::new(scalar.into(), c))
    }

    /// Same as [`ComplexBuilder::arrow`], addressing generators by id.
    pub fn arrow_by_id(&mut self, from: &str, to: &str, scalar: impl Into<BigInt>) -> Result<()> {
        let i = self.index_of(from).ok_or_else(|| Error::UnknownGenerator(from.into()))?;
        let j = self.index_of(to).ok_or_else(|| Error::UnknownGenerator(to.into()))?;
        self.arrow(i, j, scalar)
    }

    pub fn build(self) -> GradedComplex {
        GradedComplex { gens: self.gens, lookup: self.lookup, entries: self.entries }
    }
}
