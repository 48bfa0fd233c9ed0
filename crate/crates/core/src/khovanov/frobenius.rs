//! Structure maps of `A = Z[G][X]/(X² + GX)` and of the rank-one quotient
//! `A/(X)` carried by the basepoint circle.

use std::collections::BTreeMap;

use crate::ring::GElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    One,
    X,
}

impl Label {
    pub fn qdeg(self) -> i32 {
        match self {
            Label::One => 1,
            Label::X => -1,
        }
    }
}

/// Multiplication and comultiplication tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrobeniusData;

impl FrobeniusData {
    /// `m(a ⊗ b)` as a single term.
    pub fn m(a: Label, b: Label) -> (Label, GElem) {
        use Label::*;
        match (a, b) {
            (One, One) => (One, GElem::one()),
            (One, X) | (X, One) => (X, GElem::one()),
            (X, X) => (X, -GElem::g()),
        }
    }

    pub fn delta(a: Label) -> Vec<(Label, Label, GElem)> {
        use Label::*;
        match a {
            One => vec![(One, X, GElem::one()), (X, One, GElem::one()), (One, One, GElem::g())],
            X => vec![(X, X, GElem::one())],
        }
    }

    pub fn counit(a: Label) -> i64 {
        match a {
            Label::One => 0,
            Label::X => 1,
        }
    }

    /// Merging the basepoint generator with a circle labelled `b`.
    pub fn reduced_m(b: Label) -> Option<GElem> {
        match b {
            Label::One => Some(GElem::one()),
            Label::X => None,
        }
    }

    /// Splitting the basepoint circle: the image on the new circle.
    pub fn reduced_delta() -> Vec<(Label, GElem)> {
        vec![(Label::X, GElem::one()), (Label::One, GElem::g())]
    }

    /// Checks the algebra and coalgebra axioms, the Frobenius relation and
    /// compatibility of the reduced rules with `A → A/(X)`, symbolically in
    /// `G`. Returns the first failure.
    pub fn check_axioms() -> std::result::Result<(), String> {
        use Label::*;
        let labels = [One, X];
        let basis = |ls: &[Label]| Elem::basis(ls.to_vec());
        // X² + GX = 0
        let x2 = basis(&[X, X]).merge(0);
        let gx = basis(&[X]).scale(&GElem::g());
        if !x2.add(&gx).is_zero() {
            return Err("X² + GX ≠ 0".into());
        }
        for &a in &labels {
            if basis(&[One, a]).merge(0) != basis(&[a]) {
                return Err(format!("1 is not a unit on {a:?}"));
            }
            if basis(&[a]).split(0).counit(0) != basis(&[a]) {
                return Err(format!("counit fails on {a:?}"));
            }
            let l = basis(&[a]).split(0).split(0);
            let r = basis(&[a]).split(0).split(1);
            if l != r {
                return Err(format!("coassociativity fails on {a:?}"));
            }
            if basis(&[a]).split(0).swap(0) != basis(&[a]).split(0) {
                return Err(format!("cocommutativity fails on {a:?}"));
            }
            for &b in &labels {
                if basis(&[a, b]).merge(0) != basis(&[b, a]).merge(0) {
                    return Err(format!("m not commutative on {a:?},{b:?}"));
                }
                // Δ∘m = (m ⊗ id)∘(id ⊗ Δ)
                let lhs = basis(&[a, b]).merge(0).split(0);
                let rhs = basis(&[a, b]).split(1).merge(0);
                if lhs != rhs {
                    return Err(format!("Frobenius relation fails on {a:?},{b:?}"));
                }
                for &c in &labels {
                    if basis(&[a, b, c]).merge(0).merge(0) != basis(&[a, b, c]).merge(1).merge(0) {
                        return Err(format!("m not associative on {a:?},{b:?},{c:?}"));
                    }
                }
                // π ∘ m = m_red ∘ (π ⊗ id)
                let full = basis(&[a, b]).merge(0).project(0);
                let red = if a == One { reduced_merge(b) } else { Elem::default() };
                if full != red {
                    return Err(format!("reduced merge incompatible on {a:?},{b:?}"));
                }
            }
            // (π ⊗ id) ∘ Δ = Δ_red ∘ π
            let full = basis(&[a]).split(0).project(0);
            let red = if a == One { reduced_split() } else { Elem::default() };
            if full != red {
                return Err(format!("reduced split incompatible on {a:?}"));
            }
        }
        Ok(())
    }
}

fn reduced_merge(b: Label) -> Elem {
    let mut e = Elem::default();
    if let Some(v) = FrobeniusData::reduced_m(b) {
        e.add_term(vec![], &v);
    }
    e
}

fn reduced_split() -> Elem {
    let mut e = Elem::default();
    for (l, v) in FrobeniusData::reduced_delta() {
        e.add_term(vec![l], &v);
    }
    e
}

/// Element of `A^{⊗k}` with coefficients in `Z[G]`, as `labels ↦ (G-power ↦ integer)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Elem(BTreeMap<Vec<Label>, BTreeMap<u32, i64>>);

impl Elem {
    fn basis(ls: Vec<Label>) -> Self {
        let mut e = Elem::default();
        e.add_term(ls, &GElem::one());
        e
    }

    fn add_term(&mut self, ls: Vec<Label>, v: &GElem) {
        let c = i64::try_from(v.scalar()).expect("small coefficient");
        let poly = self.0.entry(ls.clone()).or_default();
        *poly.entry(v.gpow()).or_default() += c;
        poly.retain(|_, c| *c != 0);
        if poly.is_empty() {
            self.0.remove(&ls);
        }
    }

    fn terms(&self) -> impl Iterator<Item = (&Vec<Label>, GElem)> + '_ {
        self.0.iter().flat_map(|(ls, p)| p.iter().map(move |(&g, &c)| (ls, GElem::new(c, g))))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Elem) -> Elem {
        let mut e = self.clone();
        for (ls, v) in other.terms() {
            e.add_term(ls.clone(), &v);
        }
        e
    }

    fn scale(&self, s: &GElem) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            e.add_term(ls.clone(), &(&v * s));
        }
        e
    }

    /// Multiplies factors `i` and `i+1`.
    fn merge(&self, i: usize) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            let (l, c) = FrobeniusData::m(ls[i], ls[i + 1]);
            let mut new = ls[..i].to_vec();
            new.push(l);
            new.extend_from_slice(&ls[i + 2..]);
            e.add_term(new, &(&v * &c));
        }
        e
    }

    fn split(&self, i: usize) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            for (a, b, c) in FrobeniusData::delta(ls[i]) {
                let mut new = ls[..i].to_vec();
                new.extend([a, b]);
                new.extend_from_slice(&ls[i + 1..]);
                e.add_term(new, &(&v * &c));
            }
        }
        e
    }

    fn counit(&self, i: usize) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            let c = FrobeniusData::counit(ls[i]);
            if c != 0 {
                let mut new = ls.clone();
                new.remove(i);
                e.add_term(new, &(&v * &GElem::new(c, 0)));
            }
        }
        e
    }

    fn swap(&self, i: usize) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            let mut new = ls.clone();
            new.swap(i, i + 1);
            e.add_term(new, &v);
        }
        e
    }

    /// Applies `A → A/(X)` to factor `i`; the quotient factor is dropped.
    fn project(&self, i: usize) -> Elem {
        let mut e = Elem::default();
        for (ls, v) in self.terms() {
            if ls[i] == Label::One {
                let mut new = ls.clone();
                new.remove(i);
                e.add_term(new, &v);
            }
        }
        e
    }
}
