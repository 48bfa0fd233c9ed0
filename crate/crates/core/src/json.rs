//! JSON form of a [`GradedComplex`].
//!
//! ```json
//! { "generators": [{"id": "x", "t": 0, "q": 0}],
//!   "diff": [{"from": "x", "to": "y", "coeff": "-2", "gpow": 1}] }
//! ```
//!
//! Coefficients are decimal strings so that scalars of any size survive.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::ring::GElem;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonGenerator {
    pub id: String,
    pub t: i32,
    pub q: i32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonEntry {
    pub from: String,
    pub to: String,
    pub coeff: String,
    pub gpow: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct JsonComplex {
    pub generators: Vec<JsonGenerator>,
    pub diff: Vec<JsonEntry>,
}

impl From<&GradedComplex> for JsonComplex {
    fn from(c: &GradedComplex) -> Self {
        let generators = c
            .generators()
            .iter()
            .map(|g| JsonGenerator { id: g.id.to_string(), t: g.tdeg, q: g.qdeg })
            .collect();
        let diff = c
            .entries()
            .map(|(i, j, v)| JsonEntry {
                from: c.generator(i).id.to_string(),
                to: c.generator(j).id.to_string(),
                coeff: v.scalar().to_string(),
                gpow: v.gpow(),
            })
            .collect();
        JsonComplex { generators, diff }
    }
}

impl TryFrom<&JsonComplex> for GradedComplex {
    type Error = Error;

    /// Entries are taken as stored; run [`GradedComplex::validate`] to
    /// check them.
    fn try_from(j: &JsonComplex) -> Result<GradedComplex> {
        let mut b = GradedComplex::builder();
        for g in &j.generators {
            b.generator(g.id.as_str(), g.t, g.q)?;
        }
        for e in &j.diff {
            let from = b.index_of(&e.from).ok_or_else(|| Error::UnknownGenerator(e.from.clone()))?;
            let to = b.index_of(&e.to).ok_or_else(|| Error::UnknownGenerator(e.to.clone()))?;
            let scalar: BigInt = e
                .coeff
                .trim()
                .parse()
                .map_err(|_| Error::Json(format!("coefficient `{}` is not an integer", e.coeff)))?;
            b.entry(from, to, GElem::new(scalar, e.gpow))?;
        }
        Ok(b.build())
    }
}

pub fn to_json(c: &GradedComplex) -> String {
    serde_json::to_string_pretty(&JsonComplex::from(c)).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<GradedComplex> {
    let j: JsonComplex = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    GradedComplex::try_from(&j)
}
