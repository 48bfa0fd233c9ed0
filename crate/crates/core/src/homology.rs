//! The complex `C ⊗ Z[G]/(G − 1)` and its homology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{GenId, GradedComplex};
use crate::intlin::{self, Matrix};

/// A complex over Z obtained by setting `G = 1`. Quantum degrees are kept
/// for filtration purposes even though the differential no longer respects
/// them.
#[derive(Clone, Debug)]
pub struct ZReducedComplex {
    pub ids: Vec<GenId>,
    pub tdeg: Vec<i32>,
    pub qdeg: Vec<i32>,
    pub entries: BTreeMap<(usize, usize), BigInt>,
}

/// One homology group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ZReducedComplex {
    pub fn from_complex(c: &GradedComplex) -> Self {
        let gens = c.generators();
        Self {
            ids: gens.iter().map(|g| g.id.clone()).collect(),
            tdeg: gens.iter().map(|g| g.tdeg).collect(),
            qdeg: gens.iter().map(|g| g.qdeg).collect(),
            entries: c.entries().map(|(i, j, v)| ((i, j), v.at_one())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn in_degree(&self, t: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.tdeg[i] == t).collect()
    }

    /// Matrix of `d` from the generators `src` to `dst` (rows index `dst`),
    /// so that `d(x) = M·x` in coordinates.
    pub fn matrix(&self, src: &[usize], dst: &[usize]) -> Matrix {
        let col: BTreeMap<usize, usize> = src.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let row: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = intlin::zeros(dst.len(), src.len());
        for (&(i, j), v) in &self.entries {
            if let (Some(&c), Some(&r)) = (col.get(&i), row.get(&j)) {
                m[r][c] = v.clone();
            }
        }
        m
    }

    pub fn d_squared_is_zero(&self) -> bool {
        let mut out: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(i, j), v) in &self.entries {
            out.entry(i).or_default().push((j, v));
        }
        for (i, targets) in &out {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for &(j, a) in targets {
                for &(k, b) in out.get(&j).map(|v| v.as_slice()).unwrap_or(&[]) {
                    *acc.entry(k).or_insert_with(BigInt::zero) += a * b;
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                let _ = i;
                return false;
            }
        }
        true
    }

    /// Cancels `±1` entries until none remain. The result has isomorphic
    /// homology (over Z and every coefficient field).
    pub fn cancel_units(&self) -> ZReducedComplex {
        let n = self.len();
        let mut out: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
        let mut inc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
        for (&(i, j), v) in &self.entries {
            out[i].insert(j, v.clone());
            inc[j].insert(i, v.clone());
        }
        let mut alive = vec![true; n];
        let mut units: BTreeSet<(usize, usize)> =
            self.entries.iter().filter(|(_, v)| v.abs().is_one()).map(|(&k, _)| k).collect();
        while let Some((x, y)) = units.pop_first() {
            let u = out[x][&y].clone();
            let sources: Vec<(usize, BigInt)> =
                inc[y].iter().filter(|(&z, _)| z != x).map(|(&z, v)| (z, v.clone())).collect();
            let targets: Vec<(usize, BigInt)> =
                out[x].iter().filter(|(&w, _)| w != y).map(|(&w, v)| (w, v.clone())).collect();
            for (z, cz) in &sources {
                let f = cz * &u;
                for (w, dw) in &targets {
                    let delta = -(dw * &f);
                    let new = out[*z].get(w).cloned().unwrap_or_default() + delta;
                    units.remove(&(*z, *w));
                    if new.is_zero() {
                        out[*z].remove(w);
                        inc[*w].remove(z);
                    } else {
                        if new.abs().is_one() {
                            units.insert((*z, *w));
                        }
                        out[*z].insert(*w, new.clone());
                        inc[*w].insert(*z, new);
                    }
                }
            }
            for g in [x, y] {
                alive[g] = false;
                for (w, _) in std::mem::take(&mut out[g]) {
                    inc[w].remove(&g);
                    units.remove(&(g, w));
                }
                for (z, _) in std::mem::take(&mut inc[g]) {
                    out[z].remove(&g);
                    units.remove(&(z, g));
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let mut entries = BTreeMap::new();
        for &i in &keep {
            for (j, v) in &out[i] {
                entries.insert((pos[i], pos[*j]), v.clone());
            }
        }
        ZReducedComplex {
            ids: keep.iter().map(|&i| self.ids[i].clone()).collect(),
            tdeg: keep.iter().map(|&i| self.tdeg[i]).collect(),
            qdeg: keep.iter().map(|&i| self.qdeg[i]).collect(),
            entries,
        }
    }

    fn degrees(&self) -> BTreeSet<i32> {
        self.tdeg.iter().copied().collect()
    }

    /// `H_t` over Z for every occurring homological degree.
    pub fn integer_homology(&self) -> BTreeMap<i32, HomologyGroup> {
        let c = self.cancel_units();
        let mut out = BTreeMap::new();
        for t in c.degrees() {
            let here = c.in_degree(t);
            let d_out = c.matrix(&here, &c.in_degree(t + 1));
            let d_in = c.matrix(&c.in_degree(t - 1), &here);
            let r_out = intlin::rank(&d_out, here.len());
            let inv = intlin::smith_invariants(&d_in, c.in_degree(t - 1).len());
            let group = HomologyGroup {
                rank: here.len() - r_out - inv.len(),
                torsion: inv.into_iter().filter(|v| !v.is_one()).collect(),
            };
            if group != HomologyGroup::default() {
                out.insert(t, group);
            }
        }
        out
    }

    /// Betti numbers over `F_p` (`p` prime) or over Q (`p = 0`).
    pub fn betti(&self, p: u64) -> BTreeMap<i32, usize> {
        let c = self.cancel_units();
        let rk = |m: &Matrix, cols: usize| {
            if p == 0 {
                intlin::rank(m, cols)
            } else {
                intlin::rank_mod_p(m, cols, p)
            }
        };
        let mut out = BTreeMap::new();
        for t in c.degrees() {
            let here = c.in_degree(t);
            let prev = c.in_degree(t - 1);
            let r_out = rk(&c.matrix(&here, &c.in_degree(t + 1)), here.len());
            let r_in = rk(&c.matrix(&prev, &here), prev.len());
            let b = here.len() - r_out - r_in;
            if b > 0 {
                out.insert(t, b);
            }
        }
        out
    }
}

/// True iff `H(C ⊗ Z)` is a single `Z` in homological degree 0.
pub fn is_knot_like_at_one(c: &GradedComplex) -> bool {
    let h = ZReducedComplex::from_complex(c).integer_homology();
    h.len() == 1 && h.get(&0) == Some(&HomologyGroup { rank: 1, torsion: vec![] })
}
