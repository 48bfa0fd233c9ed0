//! Homogeneous elements of Z[G] and bigraded Laurent polynomials.
//!
//! `G` carries quantum degree −2, so a nonzero homogeneous element is a
//! monomial `m·G^c` and its degree is `−2c`. Sums of homogeneous elements of
//! equal degree stay monomials, which is all the differential of a graded
//! free complex ever needs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A homogeneous element `scalar·G^gpow` of Z[G].
///
/// The zero element is always stored as `(0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GElem {
    scalar: BigInt,
    gpow: u32,
}

impl GElem {
    pub fn new(scalar: impl Into<BigInt>, gpow: u32) -> Self {
        let scalar = scalar.into();
        if scalar.is_zero() {
            Self::zero()
        } else {
            Self { scalar, gpow }
        }
    }

    pub fn zero() -> Self {
        Self { scalar: BigInt::zero(), gpow: 0 }
    }

    pub fn one() -> Self {
        Self { scalar: BigInt::one(), gpow: 0 }
    }

    /// The element `G`.
    pub fn g() -> Self {
        Self { scalar: BigInt::one(), gpow: 1 }
    }

    pub fn scalar(&self) -> &BigInt {
        &self.scalar
    }

    pub fn gpow(&self) -> u32 {
        self.gpow
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// True for `±1·G^0`, the homogeneous units of Z[G].
    pub fn is_unit(&self) -> bool {
        self.gpow == 0 && self.scalar.abs().is_one()
    }

    /// Quantum degree of the element (−2 per power of `G`).
    pub fn qdeg(&self) -> i64 {
        -2 * self.gpow as i64
    }

    /// Image under `G ↦ 1`.
    pub fn at_one(&self) -> BigInt {
        self.scalar.clone()
    }

    pub fn mul_g(&self, k: u32) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            Self { scalar: self.scalar.clone(), gpow: self.gpow + k }
        }
    }

    /// Sum of two elements of the same degree; `None` if both are nonzero
    /// with different powers of `G`.
    pub fn checked_add(&self, other: &GElem) -> Option<GElem> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.gpow != other.gpow {
            return None;
        }
        Some(GElem::new(&self.scalar + &other.scalar, self.gpow))
    }
}

impl Default for GElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &GElem {
    type Output = GElem;
    fn add(self, rhs: &GElem) -> GElem {
        self.checked_add(rhs).unwrap_or_else(|| {
            panic!("inhomogeneous sum {self} + {rhs}")
        })
    }
}

impl Mul for &GElem {
    type Output = GElem;
    fn mul(self, rhs: &GElem) -> GElem {
        if self.is_zero() || rhs.is_zero() {
            return GElem::zero();
        }
        GElem { scalar: &self.scalar * &rhs.scalar, gpow: self.gpow + rhs.gpow }
    }
}

impl Neg for &GElem {
    type Output = GElem;
    fn neg(self) -> GElem {
        GElem { scalar: -&self.scalar, gpow: self.gpow }
    }
}

impl Neg for GElem {
    type Output = GElem;
    fn neg(self) -> GElem {
        GElem { scalar: -self.scalar, gpow: self.gpow }
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.gpow, &self.scalar) {
            (_, s) if s.is_zero() => write!(f, "0"),
            (0, s) => write!(f, "{s}"),
            (c, s) => {
                if s.is_one() {
                    write!(f, "G")?;
                } else if (-s).is_one() {
                    write!(f, "-G")?;
                } else {
                    write!(f, "{s}G")?;
                }
                if c > 1 {
                    write!(f, "^{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// A Laurent polynomial in `t` and `q` with nonnegative integer
/// coefficients, used for graded ranks.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentBiPoly {
    terms: BTreeMap<(i32, i32), u64>,
}

impl LaurentBiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(t: i32, q: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(t, q, 1);
        p
    }

    pub fn add_term(&mut self, t: i32, q: i32, coeff: u64) {
        if coeff == 0 {
            return;
        }
        *self.terms.entry((t, q)).or_insert(0) += coeff;
    }

    pub fn coeff(&self, t: i32, q: i32) -> u64 {
        self.terms.get(&(t, q)).copied().unwrap_or(0)
    }

    /// Terms `(t, q) ↦ coefficient`, all coefficients positive.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `t = q = 1`, the ungraded rank.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Substitution `(t, q) ↦ (t⁻¹, q⁻¹)`.
    pub fn inverted(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(t, q), &c)| ((-t, -q), c)).collect() }
    }
}

impl Add for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn add(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = self.clone();
        for ((t, q), c) in rhs.terms() {
            out.add_term(t, q, c);
        }
        out
    }
}

impl Mul for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn mul(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = LaurentBiPoly::zero();
        for ((t1, q1), c1) in self.terms() {
            for ((t2, q2), c2) in rhs.terms() {
                out.add_term(t1 + t2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((t, q), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "t^{t}q^{q}")?;
        }
        Ok(())
    }
}
