//! Z-isomorphisms, Z-equivalence and the distance `d`.
//!
//! Homogeneous chain maps `C → C'` of a fixed quantum degree form a free
//! abelian group: one integer unknown per pair `(x, y)` with equal
//! homological degree whose degree gap is a nonnegative even number, and
//! the linear equations `f∘d = d'∘f` (homogeneity makes every power of `G`
//! bookkeeping automatic, so the equations can be read at `G = 1`). The
//! induced map on `H₀ ≅ Z` is a linear functional `λ` on this lattice,
//! and a Z-isomorphism exists iff `λ` attains `±1`, i.e. iff the gcd of
//! `λ` over a lattice basis is 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{forced_gpow, GenId, GradedComplex};
use crate::error::{Error, Result};
use crate::intlin;
use crate::invariants::H0Functional;
use crate::simplify::reduce;

/// A cycle at `G = 1` whose class generates `H₀(C ⊗ Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCycle {
    pub ids: Vec<GenId>,
    pub coefficients: Vec<BigInt>,
}

pub fn generator_cycle(c: &GradedComplex) -> Result<GeneratorCycle> {
    let h = H0Functional::compute(c)?;
    Ok(GeneratorCycle {
        ids: h.gens.iter().map(|&i| c.generator(i).id.clone()).collect(),
        coefficients: h.cycle,
    })
}

/// The lattice of homogeneous chain maps of quantum degree `degree`.
#[derive(Clone, Debug)]
pub struct ChainMapLattice {
    pub degree: i32,
    /// `(source generator, target generator, power of G)` per unknown.
    pub unknowns: Vec<(GenId, GenId, u32)>,
    /// A basis of the solutions, in the coordinates of `unknowns`.
    pub basis: Vec<Vec<BigInt>>,
    /// `λ` evaluated on each basis vector.
    pub lambda: Vec<BigInt>,
    /// The generator `g ≥ 0` of the image `λ(lattice) = gZ`.
    pub g: BigInt,
}

impl ChainMapLattice {
    pub fn admits_iso(&self) -> bool {
        self.g.is_one()
    }
}

/// Integer kernel of a sparse system, removing unit pivots by substitution
/// before a dense kernel computation on what remains.
fn sparse_kernel(nvars: usize, eqs: Vec<BTreeMap<usize, BigInt>>) -> Vec<Vec<BigInt>> {
    let mut eqs: Vec<Option<BTreeMap<usize, BigInt>>> = eqs.into_iter().map(Some).collect();
    let mut occurs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nvars];
    for (k, e) in eqs.iter().enumerate() {
        for &v in e.as_ref().unwrap().keys() {
            occurs[v].insert(k);
        }
    }
    let mut eliminated: Vec<(usize, BTreeMap<usize, BigInt>)> = Vec::new();
    let mut is_elim = vec![false; nvars];
    // equations ordered by length so that short pivots go first
    let mut queue: BTreeSet<(usize, usize)> =
        eqs.iter().enumerate().map(|(k, e)| (e.as_ref().unwrap().len(), k)).collect();
    let mut stuck: Vec<usize> = Vec::new();
    while let Some((_, k)) = queue.pop_first() {
        let e = eqs[k].take().unwrap();
        if e.is_empty() {
            continue;
        }
        let Some((&v, u)) = e.iter().find(|(_, c)| c.abs().is_one()) else {
            eqs[k] = Some(e);
            stuck.push(k);
            continue;
        };
        let u = u.clone();
        for &w in e.keys() {
            occurs[w].remove(&k);
        }
        // v = −u Σ_{w≠v} c_w w
        let expr: BTreeMap<usize, BigInt> =
            e.iter().filter(|(&w, _)| w != v).map(|(&w, c)| (w, -(&u * c))).collect();
        let users: Vec<usize> = std::mem::take(&mut occurs[v]).into_iter().collect();
        for j in users {
            let eq = eqs[j].as_mut().unwrap();
            let old_len = eq.len();
            let cv = eq.remove(&v).unwrap();
            for (&w, c) in &expr {
                let entry = eq.entry(w).or_insert_with(BigInt::zero);
                *entry += &cv * c;
                if entry.is_zero() {
                    eq.remove(&w);
                    occurs[w].remove(&j);
                } else {
                    occurs[w].insert(j);
                }
            }
            let new_len = eq.len();
            if queue.remove(&(old_len, j)) {
                queue.insert((new_len, j));
            } else if let Some(pos) = stuck.iter().position(|&s| s == j) {
                // a stuck equation may have gained a unit coefficient
                stuck.swap_remove(pos);
                queue.insert((new_len, j));
            }
        }
        is_elim[v] = true;
        eliminated.push((v, expr));
    }
    let free: Vec<usize> = (0..nvars).filter(|&v| !is_elim[v]).collect();
    let col: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let rest: Vec<&BTreeMap<usize, BigInt>> =
        stuck.iter().filter_map(|&k| eqs[k].as_ref()).filter(|e| !e.is_empty()).collect();
    let mut m = intlin::zeros(rest.len(), free.len());
    for (r, e) in rest.iter().enumerate() {
        for (v, c) in e.iter() {
            m[r][col[v]] = c.clone();
        }
    }
    let ker = intlin::kernel(&m, free.len());
    ker.into_iter()
        .map(|kv| {
            let mut x = vec![BigInt::zero(); nvars];
            for (k, &v) in free.iter().enumerate() {
                x[v] = kv[k].clone();
            }
            for (v, expr) in eliminated.iter().rev() {
                x[*v] = expr.iter().map(|(&w, c)| c * &x[w]).sum();
            }
            x
        })
        .collect()
}

/// All homogeneous chain maps `source → target` of quantum degree
/// `degree`, with their action on `H₀`. Both complexes must be knot-like.
pub fn chain_map_lattice(
    source: &GradedComplex,
    target: &GradedComplex,
    degree: i32,
) -> Result<ChainMapLattice> {
    let hs = H0Functional::compute(source)?;
    let ht = H0Functional::compute(target)?;
    let mut unknowns = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut by_tdeg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (j, y) in target.generators().iter().enumerate() {
        by_tdeg.entry(y.tdeg).or_default().push(j);
    }
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); source.len()];
    for (i, x) in source.generators().iter().enumerate() {
        for &j in by_tdeg.get(&x.tdeg).map(Vec::as_slice).unwrap_or(&[]) {
            let y = target.generator(j);
            if let Some(c) = forced_gpow(x.qdeg, y.qdeg, degree) {
                index.insert((i, j), unknowns.len());
                out_of[i].push(j);
                unknowns.push((x.id.clone(), y.id.clone(), c));
            }
        }
    }
    let mut src_in: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); source.len()];
    for (x, z, v) in source.entries() {
        src_in[z].push((x, v.at_one()));
    }
    // equation (x, w): Σ_y f_{xy} d'_{yw} − Σ_z d_{xz} f_{zw} = 0
    let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (&(x, y), &var) in &index {
        for (w, v) in target.outgoing(y) {
            *eqs.entry((x, w)).or_default().entry(var).or_insert_with(BigInt::zero) += v.at_one();
        }
    }
    for (&(z, w), &var) in &index {
        for (x, v) in &src_in[z] {
            *eqs.entry((*x, w)).or_default().entry(var).or_insert_with(BigInt::zero) -= v;
        }
    }
    let eqs: Vec<BTreeMap<usize, BigInt>> = eqs
        .into_values()
        .map(|e| e.into_iter().filter(|(_, c)| !c.is_zero()).collect::<BTreeMap<_, _>>())
        .filter(|e| !e.is_empty())
        .collect();
    let basis = sparse_kernel(unknowns.len(), eqs);
    // λ(f) = ψ'(f(α))
    let pos_t: BTreeMap<usize, usize> = ht.gens.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut form: Vec<(usize, BigInt)> = Vec::new();
    for (k, &x) in hs.gens.iter().enumerate() {
        if hs.cycle[k].is_zero() {
            continue;
        }
        for &y in &out_of[x] {
            let p = &ht.psi[pos_t[&y]];
            if !p.is_zero() {
                form.push((index[&(x, y)], &hs.cycle[k] * p));
            }
        }
    }
    let lambda: Vec<BigInt> =
        basis.iter().map(|b| form.iter().map(|(v, c)| c * &b[*v]).sum()).collect();
    let g = intlin::gcd_all(&lambda);
    Ok(ChainMapLattice { degree, unknowns, basis, lambda, g })
}

/// Whether a chain map `source → target` of quantum degree `degree`
/// induces an isomorphism on `H₀(· ⊗ Z)`.
pub fn z_iso_exists(source: &GradedComplex, target: &GradedComplex, degree: i32) -> Result<bool> {
    Ok(chain_map_lattice(&reduce(source), &reduce(target), degree)?.admits_iso())
}

/// Verdict with the lattice certificate of both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeqReport {
    pub forward_g: BigInt,
    pub backward_g: BigInt,
}

impl ZeqReport {
    pub fn equivalent(&self) -> bool {
        self.forward_g.is_one() && self.backward_g.is_one()
    }
}

impl fmt::Display for ZeqReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.equivalent() { "Z-equivalent" } else { "not Z-equivalent" };
        write!(f, "{verdict} (g forward = {}, g backward = {})", self.forward_g, self.backward_g)
    }
}

pub fn z_equivalence_report(c1: &GradedComplex, c2: &GradedComplex) -> Result<ZeqReport> {
    let (r1, r2) = (reduce(c1), reduce(c2));
    Ok(ZeqReport {
        forward_g: chain_map_lattice(&r1, &r2, 0)?.g,
        backward_g: chain_map_lattice(&r2, &r1, 0)?.g,
    })
}

pub fn z_equivalent(c1: &GradedComplex, c2: &GradedComplex) -> Result<bool> {
    Ok(z_equivalence_report(c1, c2)?.equivalent())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(u32),
    /// No witness up to and including this bound.
    ExceedsBound(u32),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(n) => write!(f, "{n}"),
            Distance::ExceedsBound(b) => write!(f, "≥ {}", b + 1),
        }
    }
}

pub fn default_distance_bound(c1: &GradedComplex, c2: &GradedComplex) -> u32 {
    let (r1, r2) = (reduce(c1), reduce(c2));
    let (lo1, hi1) = r1.qdeg_range().unwrap_or((0, 0));
    let (lo2, hi2) = r2.qdeg_range().unwrap_or((0, 0));
    ((hi1 - lo2).unsigned_abs() + (hi2 - lo1).unsigned_abs()) / 2 + 2
}

/// Least `n ≤ bound` with Z-isomorphisms of quantum degree `−2n` both ways.
pub fn distance_d(c1: &GradedComplex, c2: &GradedComplex, bound: Option<u32>) -> Result<Distance> {
    let bound = bound.unwrap_or_else(|| default_distance_bound(c1, c2));
    let (r1, r2) = (reduce(c1), reduce(c2));
    for n in 0..=bound {
        let deg = -2 * n as i32;
        if chain_map_lattice(&r1, &r2, deg)?.admits_iso()
            && chain_map_lattice(&r2, &r1, deg)?.admits_iso()
        {
            return Ok(Distance::Exact(n));
        }
    }
    Ok(Distance::ExceedsBound(bound))
}

/// `ζ(m) = 0` for `m ≡ 0, 1 (mod 4)` and 1 otherwise.
pub fn zeta(m: i32) -> i32 {
    match m.rem_euclid(4) {
        0 | 1 => 0,
        _ => 1,
    }
}

/// The maps `f: t⁰q⁰Z[G] → C ⊗ C*` and `g: C ⊗ C* → t⁰q⁰Z[G]` built from
/// the diagonal elements `x_i ⊗ x_i*`.
#[derive(Clone, Debug)]
pub struct InverseWitness {
    pub tensor: GradedComplex,
    /// `f(1)` as coefficients on diagonal generators.
    pub f: Vec<(GenId, BigInt)>,
    /// `g` on diagonal generators; zero elsewhere.
    pub g: Vec<(GenId, BigInt)>,
    pub f_is_chain_map: bool,
    pub g_is_chain_map: bool,
    /// `g∘f` as a scalar.
    pub composite: BigInt,
}

impl InverseWitness {
    pub fn verified(&self) -> bool {
        self.f_is_chain_map && self.g_is_chain_map && self.composite.is_one()
    }
}

pub fn inverse_witness(c: &GradedComplex) -> Result<InverseWitness> {
    let chi = c.euler_char();
    if chi.abs() != 1 {
        return Err(Error::EulerNotUnit(chi));
    }
    let chi = BigInt::from(chi);
    let n = c.len();
    let tensor = c.tensor(&c.dual());
    let sign = |e: i32| if e.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
    let mut fv = vec![BigInt::zero(); tensor.len()];
    let mut gv = vec![BigInt::zero(); tensor.len()];
    for (i, x) in c.generators().iter().enumerate() {
        let d = i * n + i;
        fv[d] = sign(zeta(x.tdeg));
        // 1/χ = χ for χ = ±1
        gv[d] = &chi * sign(x.tdeg + zeta(x.tdeg));
    }
    // d(f(1)) = 0, and g∘d = 0
    let mut df: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut gd: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (u, v, e) in tensor.entries() {
        if !fv[u].is_zero() {
            *df.entry(v).or_insert_with(BigInt::zero) += &fv[u] * e.scalar();
        }
        if !gv[v].is_zero() {
            *gd.entry(u).or_insert_with(BigInt::zero) += e.scalar() * &gv[v];
        }
    }
    let composite = intlin::dot(&fv, &gv);
    let pick = |v: &[BigInt]| {
        (0..n).map(|i| (tensor.generator(i * n + i).id.clone(), v[i * n + i].clone())).collect()
    };
    Ok(InverseWitness {
        f: pick(&fv),
        g: pick(&gv),
        f_is_chain_map: df.values().all(Zero::is_zero),
        g_is_chain_map: gd.values().all(Zero::is_zero),
        composite,
        tensor,
    })
}
