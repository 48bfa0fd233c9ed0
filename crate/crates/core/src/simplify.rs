//! Gaussian elimination of unit entries over Z[G] and summand splitting.
//!
//! Cancelling a unit `u: x → y` removes `x` and `y` and adds
//! `−D_w u⁻¹ C_z` to every entry `z → w`, where `C_z` is the entry
//! `z → y` and `D_w` the entry `x → w`. All new entries live in the same
//! differential `d_i` as the pivot, so once `d_i` is free of units it stays
//! free of units while later layers are processed. [`reduce`] therefore
//! works layer by layer, lowest homological degree first, and inside a layer
//! always cancels the unit with the lexicographically smallest
//! `(source id, target id)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{GenId, Generator, GradedComplex};
use crate::error::{Error, Result};
use crate::ring::GElem;

/// Mutable sparse complex used during elimination.
#[derive(Default, Debug)]
pub(crate) struct Work {
    gens: Vec<Generator>,
    alive: Vec<bool>,
    out: Vec<BTreeMap<usize, GElem>>,
    inc: Vec<BTreeMap<usize, GElem>>,
    units: BTreeSet<(i32, GenId, GenId, usize, usize)>,
}

impl Work {
    pub(crate) fn from_complex(c: &GradedComplex) -> Self {
        let mut w = Work::default();
        for g in c.generators() {
            w.add_generator(g.clone());
        }
        for (i, j, v) in c.entries() {
            w.add_to_entry(i, j, v);
        }
        w
    }

    pub(crate) fn add_generator(&mut self, g: Generator) -> usize {
        self.gens.push(g);
        self.alive.push(true);
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeMap::new());
        self.gens.len() - 1
    }

    pub(crate) fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    fn key(&self, i: usize, j: usize) -> (i32, GenId, GenId, usize, usize) {
        (self.gens[i].tdeg, self.gens[i].id.clone(), self.gens[j].id.clone(), i, j)
    }

    pub(crate) fn add_to_entry(&mut self, i: usize, j: usize, v: &GElem) {
        if v.is_zero() {
            return;
        }
        let new = match self.out[i].get(&j) {
            Some(old) => old.checked_add(v).unwrap_or_else(|| {
                panic!("inhomogeneous entry {} -> {}", self.gens[i].id, self.gens[j].id)
            }),
            None => v.clone(),
        };
        let was_unit = self.out[i].get(&j).is_some_and(GElem::is_unit);
        if was_unit && !new.is_unit() {
            let k = self.key(i, j);
            self.units.remove(&k);
        }
        if new.is_zero() {
            self.out[i].remove(&j);
            self.inc[j].remove(&i);
            return;
        }
        if new.is_unit() && !was_unit {
            let k = self.key(i, j);
            self.units.insert(k);
        }
        self.out[i].insert(j, new.clone());
        self.inc[j].insert(i, new);
    }

    fn remove_generator(&mut self, g: usize) {
        self.alive[g] = false;
        for (w, v) in std::mem::take(&mut self.out[g]) {
            self.inc[w].remove(&g);
            if v.is_unit() {
                let k = self.key(g, w);
                self.units.remove(&k);
            }
        }
        for (z, v) in std::mem::take(&mut self.inc[g]) {
            self.out[z].remove(&g);
            if v.is_unit() {
                let k = self.key(z, g);
                self.units.remove(&k);
            }
        }
    }

    /// Cancels the unit entry `x → y`.
    pub(crate) fn cancel(&mut self, x: usize, y: usize) {
        let u = self.out[x][&y].clone();
        debug_assert!(u.is_unit());
        let sources: Vec<(usize, GElem)> =
            self.inc[y].iter().filter(|(&z, _)| z != x).map(|(&z, v)| (z, v.clone())).collect();
        let targets: Vec<(usize, GElem)> =
            self.out[x].iter().filter(|(&w, _)| w != y).map(|(&w, v)| (w, v.clone())).collect();
        // u⁻¹ = u for u = ±1
        for (z, cz) in &sources {
            let f = -(cz * &u);
            for (w, dw) in &targets {
                self.add_to_entry(*z, *w, &(dw * &f));
            }
        }
        self.remove_generator(x);
        self.remove_generator(y);
    }

    /// Cancels units with source in homological degree `t` until none are
    /// left there.
    pub(crate) fn reduce_layer(&mut self, t: i32) {
        loop {
            let next = self.units.range((t, lowest_id(), lowest_id(), 0, 0)..).next().cloned();
            match next {
                Some((tt, _, _, x, y)) if tt == t => self.cancel(x, y),
                _ => break,
            }
        }
    }

    pub(crate) fn reduce_all(&mut self) {
        while let Some((t, ..)) = self.units.first().cloned() {
            self.reduce_layer(t);
        }
    }

    pub(crate) fn finish(self) -> GradedComplex {
        let keep: Vec<usize> = (0..self.gens.len()).filter(|&i| self.alive[i]).collect();
        let mut pos = vec![usize::MAX; self.gens.len()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let mut entries = BTreeMap::new();
        for &i in &keep {
            for (&j, v) in &self.out[i] {
                entries.insert((pos[i], pos[j]), v.clone());
            }
        }
        let gens = keep.into_iter().map(|i| self.gens[i].clone()).collect();
        GradedComplex::from_parts(gens, entries)
    }
}

fn lowest_id() -> GenId {
    GenId::from("")
}

/// Cancels the unit entry `from → to`.
pub fn cancel_pivot(c: &GradedComplex, from: &str, to: &str) -> Result<GradedComplex> {
    let missing = || Error::MissingEntry { from: from.into(), to: to.into() };
    let x = c.find(from).ok_or_else(missing)?;
    let y = c.find(to).ok_or_else(missing)?;
    let v = c.entry(x, y).ok_or_else(missing)?;
    if !v.is_unit() {
        return Err(Error::NotUnit { from: from.into(), to: to.into() });
    }
    let mut w = Work::from_complex(c);
    w.cancel(x, y);
    Ok(w.finish())
}

/// Cancels unit entries until none remain, in the documented pivot order.
pub fn reduce(c: &GradedComplex) -> GradedComplex {
    let mut w = Work::from_complex(c);
    w.reduce_all();
    w.finish()
}

/// Connected components of the generator/entry graph, ordered by their
/// first generator.
pub fn split_summands(c: &GradedComplex) -> Vec<GradedComplex> {
    let n = c.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, j, _) in c.entries() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.values().map(|g| c.restrict(g)).collect()
}
