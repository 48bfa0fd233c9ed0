//! Knot-likeness, the Rasmussen invariants `s_c` and Schütz's `s^Z`.
//!
//! `s^Z` is read off the filtration of `H₀(C ⊗ Z) ≅ Z` by the images of
//! the subcomplexes `F_k` spanned by the generators of quantum degree at
//! least `k`. Writing `m_k Z` for those images, the tuple is
//! `(k_0, k_1, …, k_n)` with `k_0 = max{k : m_k ≠ 0}` and
//! `k_i = m_{k_0−2(i−1)} / m_{k_0−2i}`, ending at the first `m = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::field::{check_characteristic, field_normal_form};
use crate::homology::{is_knot_like_at_one, ZReducedComplex};
use crate::intlin::{self, Matrix};
use crate::simplify::reduce;

/// True iff `H(C ⊗ Z)` is `Z` in homological degree 0 and zero elsewhere.
pub fn knotlike_check(c: &GradedComplex) -> bool {
    is_knot_like_at_one(&reduce(c))
}

/// The Rasmussen invariant over a field of the given characteristic.
pub fn rasmussen_s(c: &GradedComplex, characteristic: u64) -> Result<i32> {
    check_characteristic(characteristic)?;
    let (_, nf) = field_normal_form(&reduce(c), characteristic)?;
    nf.s.ok_or_else(|| Error::NotKnotLike("empty complex".into()))
}

/// The identification `H₀(C ⊗ Z) ≅ Z` in coordinates.
///
/// `psi` is a functional on the homological-degree-0 chains whose
/// restriction to cycles induces the isomorphism; `cycle` is a cycle with
/// `psi(cycle) = 1`. Both are indexed like `gens`.
#[derive(Clone, Debug)]
pub struct H0Functional {
    pub gens: Vec<usize>,
    pub psi: Vec<BigInt>,
    pub cycle: Vec<BigInt>,
    /// Basis of the cycles at `G = 1`, as vectors indexed like `gens`.
    pub cycles: Vec<Vec<BigInt>>,
}

impl H0Functional {
    pub fn compute(c: &GradedComplex) -> Result<Self> {
        if !is_knot_like_at_one(c) {
            return Err(Error::NotKnotLike("H(C ⊗ Z) is not Z in degree 0".into()));
        }
        let z = ZReducedComplex::from_complex(c);
        let gens = z.in_degree(0);
        let n0 = gens.len();
        let d0 = z.matrix(&gens, &z.in_degree(1));
        let prev = z.in_degree(-1);
        let dm = z.matrix(&prev, &gens);
        let cycles = intlin::kernel(&d0, n0);
        let r = cycles.len();
        // K: n0 × r with the cycles as columns
        let k: Matrix = intlin::transpose(&cycles, n0);
        // coordinates of the boundaries in the cycle basis: r × |prev|
        let mut x = intlin::zeros(r, prev.len());
        for j in 0..prev.len() {
            let col: Vec<BigInt> = dm.iter().map(|row| row[j].clone()).collect();
            let sol = intlin::solve(&k, r, &col).expect("boundaries are cycles");
            for (i, v) in sol.into_iter().enumerate() {
                x[i][j] = v;
            }
        }
        let lk = intlin::left_kernel(&x, prev.len());
        assert_eq!(lk.len(), 1, "H₀ has rank one");
        let lambda = lk.into_iter().next().unwrap();
        let psi = intlin::solve(&cycles, n0, &lambda).expect("cycle lattice is saturated");
        let (g, mu) = intlin::gcd_combination(&lambda);
        assert!(g.is_one(), "H₀ is torsion free");
        let mut cycle = vec![BigInt::zero(); n0];
        for (v, m) in cycles.iter().zip(&mu) {
            for (ci, vi) in cycle.iter_mut().zip(v) {
                *ci += m * vi;
            }
        }
        Ok(Self { gens, psi, cycle, cycles })
    }

    /// The class in `H₀ ≅ Z` of a cycle given on `gens`.
    pub fn eval(&self, chain: &[BigInt]) -> BigInt {
        intlin::dot(&self.psi, chain)
    }
}

/// `(k_0, k_1, …, k_n)`; `gl = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SZTuple {
    pub k0: i32,
    pub ks: Vec<BigInt>,
}

impl SZTuple {
    pub fn gl(&self) -> usize {
        self.ks.len()
    }

    pub fn new<T: Into<BigInt>>(k0: i32, ks: impl IntoIterator<Item = T>) -> Self {
        Self { k0, ks: ks.into_iter().map(Into::into).collect() }
    }
}

impl fmt::Display for SZTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.k0)?;
        for k in &self.ks {
            write!(f, ", {k}")?;
        }
        write!(f, ")")
    }
}

/// The tuple of a filtration given by its indices: `m[k]` generates the
/// image of `F_k` in `Z`. Keys are the even `k`, and the smallest key must
/// carry `m = 1`.
pub fn sz_from_filtration(m: &BTreeMap<i32, BigInt>) -> Result<SZTuple> {
    let (&k0, _) = m
        .iter()
        .rev()
        .find(|(_, v)| !v.is_zero())
        .ok_or_else(|| Error::NotKnotLike("filtration is zero everywhere".into()))?;
    let lowest = *m.keys().next().unwrap();
    // constant outside the scanned range
    let at = |k: i32| -> BigInt {
        match m.range(..=k).next_back() {
            Some((_, v)) => v.abs(),
            None => m[&lowest].abs(),
        }
    };
    let mut ks = Vec::new();
    let mut k = k0;
    loop {
        let cur = at(k);
        if cur.is_one() {
            break;
        }
        if k < lowest {
            return Err(Error::NotKnotLike("filtration does not exhaust Z".into()));
        }
        let next = at(k - 2);
        ks.push(&cur / &next);
        k -= 2;
    }
    Ok(SZTuple { k0, ks })
}

/// The indices `m_k` for every even `k` between the extreme quantum
/// degrees of `C` (after unit cancellation).
pub fn filtration_indices(c: &GradedComplex) -> Result<BTreeMap<i32, BigInt>> {
    let r = reduce(c);
    let h = H0Functional::compute(&r)?;
    let z = ZReducedComplex::from_complex(&r);
    let tops = z.in_degree(1);
    let (qmin, qmax) = match r.qdeg_range() {
        Some(range) => range,
        None => return Err(Error::NotKnotLike("empty complex".into())),
    };
    let mut out = BTreeMap::new();
    let mut k = qmax + qmax.rem_euclid(2);
    while k >= qmin - 2 {
        let cols: Vec<usize> = (0..h.gens.len()).filter(|&i| z.qdeg[h.gens[i]] >= k).collect();
        let sub: Vec<usize> = cols.iter().map(|&i| h.gens[i]).collect();
        let d = z.matrix(&sub, &tops);
        let ker = intlin::kernel(&d, sub.len());
        let values: Vec<BigInt> = ker
            .iter()
            .map(|v| cols.iter().zip(v).map(|(&i, vi)| &h.psi[i] * vi).sum())
            .collect();
        out.insert(k, intlin::gcd_all(&values));
        k -= 2;
    }
    Ok(out)
}

pub fn schuetz_sz(c: &GradedComplex) -> Result<SZTuple> {
    sz_from_filtration(&filtration_indices(c)?)
}
