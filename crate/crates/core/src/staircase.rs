//! Staircase complexes `Σ_A`, the five-generator family `C^k`, and
//! normal forms of formal products of staircases.
//!
//! The normal form splits every `Σ_A` into the factors `Σ_(p^e)` and
//! `Σ_(0)`, cancels factors between the positive and negative sides, turns
//! the `Σ_(0)` count into a quantum shift (`Σ_(0) ∼ q² Σ_()`), and
//! reassembles each side in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::ring::GElem;

/// A divisibility chain `a_1 | a_2 | … | a_n` of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StaircaseSpec(Vec<BigInt>);

impl StaircaseSpec {
    pub fn new<T: Into<BigInt>>(entries: impl IntoIterator<Item = T>) -> Result<Self> {
        let a: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        for (i, v) in a.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::InvalidStaircase(format!("entry a_{} = {v} is negative", i + 1)));
            }
        }
        for (i, w) in a.windows(2).enumerate() {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !divides {
                return Err(Error::InvalidStaircase(format!(
                    "a_{} = {} does not divide a_{} = {}",
                    i + 1,
                    w[0],
                    i + 2,
                    w[1]
                )));
            }
        }
        Ok(StaircaseSpec(a))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StaircaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Σ_A`: generators `x_1 … x_{n+1}` in homological degree 0 at quantum
/// degrees `2n, 2n−2, …, 0`, and `y_1 … y_n` in degree 1 at `2n, …, 2`,
/// with `d x_i = a_i y_i + G y_{i−1}`.
pub fn build_staircase(spec: &StaircaseSpec) -> GradedComplex {
    let n = spec.len() as i32;
    let mut b = GradedComplex::builder();
    let xs: Vec<usize> = (1..=n + 1)
        .map(|i| b.generator(format!("x{i}"), 0, 2 * (n + 1 - i)).expect("fresh ids"))
        .collect();
    let ys: Vec<usize> = (1..=n)
        .map(|i| b.generator(format!("y{i}"), 1, 2 * (n + 1 - i)).expect("fresh ids"))
        .collect();
    for (i, a) in spec.entries().iter().enumerate() {
        b.entry(xs[i], ys[i], GElem::new(a.clone(), 0)).expect("homogeneous");
        b.entry(xs[i + 1], ys[i], GElem::g()).expect("homogeneous");
    }
    b.build()
}

/// The complex with generators `a` (t −1), `b1 b2 b3` (t 0) and `c` (t 1):
///
/// ```text
///   a  →  −G b2 + 2^{k+1} b3
///   b1 →  2^k c,   b2 → 2^{k+1} c,   b3 → G c
/// ```
pub fn build_ck(k: u32) -> Result<GradedComplex> {
    if k < 1 {
        return Err(Error::InvalidStaircase(format!("C^k needs k ≥ 1, got {k}")));
    }
    let p = BigInt::from(2).pow(k);
    let p1 = BigInt::from(2).pow(k + 1);
    let mut b = GradedComplex::builder();
    let a = b.generator("a", -1, -2)?;
    let b1 = b.generator("b1", 0, 0)?;
    let b2 = b.generator("b2", 0, 0)?;
    let b3 = b.generator("b3", 0, -2)?;
    let c = b.generator("c", 1, 0)?;
    b.arrow(a, b2, -1)?;
    b.arrow(a, b3, p1.clone())?;
    b.arrow(b1, c, p)?;
    b.arrow(b2, c, p1)?;
    b.arrow(b3, c, 1)?;
    Ok(b.build())
}

/// A formal product `Π Σ_{A_j}^{λ_j}`; negative exponents mean duals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalStairProduct {
    pub factors: Vec<(StaircaseSpec, i64)>,
}

impl FormalStairProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, spec: StaircaseSpec, exponent: i64) -> Self {
        self.factors.push((spec, exponent));
        self
    }

    /// Parses expressions such as `S(2,4) * S(6)^-1 * S()^2`.
    pub fn parse(text: &str) -> Result<Self> {
        Parser { text, pos: 0 }.product()
    }

    /// The tensor product of the factors (duals for negative exponents).
    pub fn to_complex(&self) -> GradedComplex {
        let mut acc = GradedComplex::unit();
        for (spec, e) in &self.factors {
            let s = build_staircase(spec);
            let s = if *e < 0 { s.dual() } else { s };
            for _ in 0..e.unsigned_abs() {
                acc = acc.tensor(&s);
            }
        }
        acc
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(self.text, self.pos, msg)
    }

    fn ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        self.pos += digits;
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn term(&mut self) -> Result<(StaircaseSpec, i64)> {
        if !(self.eat("S") || self.eat("Σ")) {
            return Err(self.err("expected `S(`"));
        }
        self.eat("_");
        if !self.eat("(") {
            return Err(self.err("expected `(`"));
        }
        let mut entries = Vec::new();
        if !self.eat(")") {
            loop {
                entries.push(self.int()?);
                if self.eat(")") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.err("expected `,` or `)`"));
                }
            }
        }
        let at = self.pos;
        let spec = StaircaseSpec::new(entries).map_err(|e| Error::parse(self.text, at, e.to_string()))?;
        let mut exp = 1i64;
        if self.eat("^") {
            let e = self.int()?;
            exp = i64::try_from(e).map_err(|_| self.err("exponent too large"))?;
        }
        Ok((spec, exp))
    }

    fn product(&mut self) -> Result<FormalStairProduct> {
        let mut p = FormalStairProduct::new();
        p.factors.push(self.term()?);
        while self.eat("*") || self.eat("⊗") {
            p.factors.push(self.term()?);
        }
        self.ws();
        if !self.rest().is_empty() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }
}

/// `q^qshift Σ_pos ⊗ Σ_neg*`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StairNormalForm {
    pub pos: StaircaseSpec,
    pub neg: StaircaseSpec,
    pub qshift: i32,
}

impl StairNormalForm {
    pub fn is_trivial(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.qshift == 0
    }

    pub fn to_complex(&self) -> GradedComplex {
        build_staircase(&self.pos)
            .tensor(&build_staircase(&self.neg).dual())
            .shift(0, self.qshift)
            .expect("even shift")
    }
}

impl fmt::Display for StairNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.qshift != 0 {
            parts.push(format!("q^{}", self.qshift));
        }
        if !self.pos.is_empty() || self.neg.is_empty() {
            parts.push(format!("Σ_{}", self.pos));
        }
        if !self.neg.is_empty() {
            if !self.pos.is_empty() {
                parts.push("⊗".into());
            }
            parts.push(format!("Σ*_{}", self.neg));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Prime-power factorization by trial division.
fn prime_powers(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of `⊕ Z/p^e` over the given prime powers.
fn assemble(powers: &BTreeMap<BigInt, Vec<u32>>) -> StaircaseSpec {
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut a = vec![BigInt::one(); len];
    for (p, exps) in powers {
        let mut exps = exps.clone();
        exps.sort_unstable_by(|x, y| y.cmp(x));
        for (i, e) in exps.into_iter().enumerate() {
            a[len - 1 - i] *= p.pow(e);
        }
    }
    StaircaseSpec::new(a).expect("invariant factors form a chain")
}

pub fn stair_normal_form(p: &FormalStairProduct) -> StairNormalForm {
    let mut counts: BTreeMap<(BigInt, u32), i64> = BTreeMap::new();
    let mut zeros = 0i64;
    for (spec, lambda) in &p.factors {
        for a in spec.entries() {
            if a.is_zero() {
                zeros += lambda;
            } else if !a.is_one() {
                for pe in prime_powers(a.clone()) {
                    *counts.entry(pe).or_insert(0) += lambda;
                }
            }
        }
    }
    let mut pos: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    let mut neg: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for ((prime, e), n) in counts {
        let side = if n > 0 { &mut pos } else { &mut neg };
        for _ in 0..n.unsigned_abs() {
            side.entry(prime.clone()).or_default().push(e);
        }
    }
    StairNormalForm {
        pos: assemble(&pos),
        neg: assemble(&neg),
        qshift: i32::try_from(2 * zeros).expect("shift fits"),
    }
}

/// The closed-form generator of `H₀(Σ_A ⊗ Z)`: `(1, −a_1, a_1a_2, …)`
/// on `x_1, …, x_{n+1}`.
pub fn staircase_cycle(spec: &StaircaseSpec) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut acc = BigInt::one();
    for a in spec.entries() {
        acc = -(acc * a);
        out.push(acc.clone());
    }
    out
}
